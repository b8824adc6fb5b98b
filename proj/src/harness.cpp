#include "valgeo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace valgeo {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Scalar random_rational(std::mt19937_64& rng, long den) {
  std::uniform_int_distribution<long> d(-den, den);
  return ratio(d(rng), den);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Json hyperplane_json(const Hyperplane& h) {
  return Json{{"normal", vector_to_json(h.normal)}, {"offset", scalar_to_json(h.offset)}};
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& r : m) rows.push_back(vector_to_json(r));
  return rows;
}

Json weight_list_json(const WeightSpec& w) { return weight_to_json(w); }

/// Runs the trials and returns the reports in trial order. An exception in
/// a trial becomes a report of its own, so one bad case never hides others.
std::vector<CounterexampleReport> run_trials(
    const std::string& name, const FuzzConfig& cfg,
    const std::function<std::optional<CounterexampleReport>(int)>& trial) {
  std::vector<std::optional<CounterexampleReport>> slots(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, [&](int t) {
    try {
      slots[static_cast<std::size_t>(t)] = trial(t);
    } catch (const std::exception& ex) {
      CounterexampleReport r;
      r.identity = name;
      r.seed = cfg.seed;
      r.trial = t;
      r.lhs = std::string("exception: ") + ex.what();
      r.delta = std::numeric_limits<double>::infinity();
      slots[static_cast<std::size_t>(t)] = r;
    }
  });
  std::vector<CounterexampleReport> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

CounterexampleReport make_report(const std::string& name, const FuzzConfig& cfg, int trial,
                                 Json inputs, const Value& lhs, const Value& rhs, double delta) {
  CounterexampleReport r;
  r.identity = name;
  r.seed = cfg.seed;
  r.trial = trial;
  r.inputs = std::move(inputs);
  r.lhs = lhs.to_string();
  r.rhs = rhs.to_string();
  r.delta = delta;
  return r;
}

/// Shrinks and records the shrunk polytope when it differs from the input.
void attach_shrunk(CounterexampleReport& r, const FuzzConfig& cfg, const Polytope& p,
                   const std::function<bool(const Polytope&)>& violates) {
  if (!cfg.shrink) return;
  auto guarded = [&](const Polytope& q) {
    try {
      return violates(q);
    } catch (const std::exception&) {
      return false;
    }
  };
  Polytope s = shrink_polytope(p, guarded);
  if (!(s == p)) r.shrunk = polytope_to_json(s);
}

Scalar min_height(const Polytope& p, const Vector& x) {
  Scalar m = dot(x, p.vertices().front());
  for (const auto& v : p.vertices()) m = std::min(m, Scalar(dot(x, v)));
  return m;
}

std::vector<Scalar> heights(const Polytope& p, const Vector& x) {
  std::vector<Scalar> h;
  for (const auto& v : p.vertices()) h.push_back(dot(x, v));
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  return h;
}

/// Polynomial, indicator or table weight whose breaks sit at the given
/// heights, so that discontinuities are actually hit.
WeightSpec random_exact_weight(std::mt19937_64& rng, const std::vector<Scalar>& hs) {
  switch (rng() % 3) {
    case 0: {
      std::vector<Scalar> c;
      const int deg = uniform_int(rng, 0, 3);
      for (int i = 0; i <= deg; ++i) c.push_back(random_rational(rng, 3));
      return WeightSpec::polynomial(c);
    }
    case 1: {
      Scalar a = hs[rng() % hs.size()], b = hs[rng() % hs.size()];
      if (a > b) std::swap(a, b);
      return WeightSpec::indicator(a, b);
    }
    default: {
      std::vector<std::pair<Scalar, Scalar>> entries;
      for (const auto& h : hs) {
        if (rng() % 2 == 0) entries.emplace_back(h, random_rational(rng, 5));
      }
      return WeightSpec::tabulated(entries, random_rational(rng, 5));
    }
  }
}

Polytope possibly_lower_dimensional(std::mt19937_64& rng, const FuzzConfig& cfg, int n) {
  if (rng() % 4 == 0) {
    std::vector<Vector> pts;
    const int count = uniform_int(rng, 1, n);
    for (int i = 0; i < count; ++i) {
      Vector v;
      for (int j = 0; j < n; ++j) v.push_back(random_rational(rng, cfg.denominator));
      pts.push_back(std::move(v));
    }
    return convex_hull(pts);
  }
  return random_polytope(rng, n, uniform_int(rng, cfg.vertices_min, cfg.vertices_max),
                         cfg.denominator, rng() % 2 == 0);
}

Vector random_translation(std::mt19937_64& rng, int n) {
  Vector v;
  for (int j = 0; j < n; ++j) v.push_back(ratio(uniform_int(rng, -6, 6), 2));
  return v;
}

}  // namespace

Json CounterexampleReport::to_json() const {
  return Json{{"identity", identity}, {"seed", seed},   {"trial", trial},   {"inputs", inputs},
              {"lhs", lhs},           {"rhs", rhs},     {"delta", delta},   {"shrunk", shrunk}};
}

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
  return std::mt19937_64(splitmix(seed ^ splitmix(static_cast<std::uint64_t>(trial) + 1)));
}

Polytope random_polytope(std::mt19937_64& rng, int n, int count, long den, bool contain_origin) {
  // Fewer than n + 1 points never span R^n.
  count = std::max(count, contain_origin ? n : n + 1);
  for (;;) {
    std::vector<Vector> pts;
    for (int i = 0; i < count; ++i) {
      Vector v;
      for (int j = 0; j < n; ++j) v.push_back(random_rational(rng, den));
      pts.push_back(std::move(v));
    }
    if (contain_origin) pts.push_back(zero_vector(n));
    Polytope p = convex_hull(pts);
    if (p.is_full_dimensional()) return p;
  }
}

Vector random_nonzero_vector(std::mt19937_64& rng, int n, long den) {
  for (;;) {
    Vector v;
    for (int j = 0; j < n; ++j) v.push_back(random_rational(rng, den));
    if (!is_zero(v)) return v;
  }
}

Hyperplane random_cutting_plane(std::mt19937_64& rng, const Polytope& p, long den) {
  const int n = p.ambient_dim();
  Vector normal = random_nonzero_vector(rng, n, std::max(2L, den / 2));
  const auto& vs = p.vertices();
  const unsigned mode = static_cast<unsigned>(rng() % 8);
  if (mode == 0 && !p.facets().empty()) {
    // Parallel to a facet, through the interior.
    normal = p.facets()[rng() % p.facets().size()].normal;
  } else if (mode == 1 && !p.facets().empty()) {
    // The plane of a facet: a degenerate cut.
    const Facet& f = p.facets()[rng() % p.facets().size()];
    return Hyperplane(f.normal, f.offset);
  }
  Vector point;
  if (mode == 2) {
    point = vs[rng() % vs.size()];  // through a vertex
  } else {
    point = zero_vector(n);
    long total = 0;
    for (const auto& v : vs) {
      const long w = uniform_int(rng, 1, 5);
      point = point + Scalar(w) * v;
      total += w;
    }
    point = Scalar(ratio(1, total)) * point;
  }
  return Hyperplane(normal, dot(normal, point));
}

LinearMap random_shear_product(std::mt19937_64& rng, int n, int count) {
  Matrix m = identity_matrix(n);
  if (n == 1) return LinearMap(m);
  for (int k = 0; k < count; ++k) {
    const int i = uniform_int(rng, 0, n - 1);
    int j = uniform_int(rng, 0, n - 2);
    if (j >= i) ++j;
    Matrix e = identity_matrix(n);
    e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ratio(uniform_int(rng, -3, 3), 2);
    m = multiply(e, m);
  }
  return LinearMap(m);
}

LinearMap random_glplus(std::mt19937_64& rng, int n, int count) {
  static const long num[] = {1, 1, 2, 3, 4};
  static const long den[] = {2, 1, 1, 1, 1};
  Matrix d = identity_matrix(n);
  for (int i = 0; i < n; ++i) {
    const std::size_t k = rng() % 5;
    d[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = ratio(num[k], den[k]);
  }
  return LinearMap(multiply(d, random_shear_product(rng, n, count).matrix()));
}

bool sides_agree(const Value& a, const Value& b, const FuzzConfig& cfg, double& delta) {
  if (a.is_exact() && b.is_exact()) {
    const Scalar d = abs(a.exact_value() - b.exact_value());
    delta = to_double(d);
    if (cfg.exact_must_be_zero) return d == 0;
  } else {
    delta = static_cast<double>(std::fabs(a.approx() - b.approx()));
  }
  const double scale =
      std::max({1.0, static_cast<double>(std::fabs(a.approx())), static_cast<double>(std::fabs(b.approx()))});
  return delta <= cfg.tolerance * scale + static_cast<double>(a.error() + b.error());
}

Polytope shrink_polytope(const Polytope& p, const std::function<bool(const Polytope&)>& violates) {
  Polytope cur = p;
  int budget = 400;
  // Vertex removal first.
  for (bool progress = true; progress && budget > 0;) {
    progress = false;
    const auto vs = cur.vertices();
    if (vs.size() <= 1) break;
    for (std::size_t i = 0; i < vs.size() && budget > 0; ++i) {
      std::vector<Vector> rest;
      for (std::size_t j = 0; j < vs.size(); ++j) {
        if (j != i) rest.push_back(vs[j]);
      }
      const Polytope cand = convex_hull(rest);
      --budget;
      if (violates(cand)) {
        cur = cand;
        progress = true;
        break;
      }
    }
  }
  // Then coordinate simplification toward 0 and 1 and coarser fractions.
  for (bool progress = true; progress && budget > 0;) {
    progress = false;
    const auto vs = cur.vertices();
    for (std::size_t i = 0; i < vs.size() && !progress && budget > 0; ++i) {
      for (std::size_t c = 0; c < vs[i].size() && !progress && budget > 0; ++c) {
        const Scalar v = vs[i][c];
        // Toward zero by whole steps, or to the nearest half toward zero.
        mpz_class whole, twice;
        mpz_tdiv_q(whole.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
        mpz_class twice_num = 2 * v.get_num();
        mpz_tdiv_q(twice.get_mpz_t(), twice_num.get_mpz_t(), v.get_den().get_mpz_t());
        std::vector<Scalar> targets = {0, 1, -1, Scalar(whole), Scalar(twice) / 2};
        if (is_integer(v) && v != 0) targets.push_back(v > 0 ? Scalar(v - 1) : Scalar(v + 1));
        for (const Scalar& t : targets) {
          const bool simpler = t.get_den() < v.get_den() ||
                               (t.get_den() == v.get_den() && abs(t.get_num()) < abs(v.get_num()));
          if (!simpler) continue;
          auto moved = vs;
          moved[i][c] = t;
          const Polytope cand = convex_hull(moved);
          --budget;
          if (violates(cand)) {
            cur = cand;
            progress = true;
            break;
          }
        }
      }
    }
  }
  return cur;
}

std::vector<CounterexampleReport> fuzz_valuation_identity(const ValuationExpr& z, const FuzzConfig& cfg,
                                                          const std::string& name) {
  z.validate();
  return run_trials(name, cfg, [&](int t) -> std::optional<CounterexampleReport> {
    auto rng = trial_rng(cfg.seed, t);
    const int n = uniform_int(rng, cfg.n_min, cfg.n_max);
    const int k = uniform_int(rng, cfg.vertices_min, cfg.vertices_max);
    const bool origin = rng() % 2 == 0;
    const Polytope p = random_polytope(rng, n, k, cfg.denominator, origin);
    const Vector x = random_nonzero_vector(rng, n, 3);
    const Hyperplane h = random_cutting_plane(rng, p, cfg.denominator);
    auto sides = [&](const Polytope& q) {
      const CutPieces c = cut(q, h);
      return std::make_pair(classified_evaluate(q, x, z) + classified_evaluate(c.on, x, z),
                            classified_evaluate(c.above, x, z) + classified_evaluate(c.below, x, z));
    };
    const auto [lhs, rhs] = sides(p);
    double delta = 0;
    if (sides_agree(lhs, rhs, cfg, delta)) return std::nullopt;
    Json inputs{{"polytope", polytope_to_json(p)},
                {"x", vector_to_json(x)},
                {"hyperplane", hyperplane_json(h)},
                {"expr", expr_to_json(z)}};
    auto r = make_report(name, cfg, t, std::move(inputs), lhs, rhs, delta);
    attach_shrunk(r, cfg, p, [&](const Polytope& q) {
      const auto [l, rr] = sides(q);
      double d = 0;
      return !sides_agree(l, rr, cfg, d);
    });
    return r;
  });
}

std::vector<CounterexampleReport> fuzz_covariance(const ValuationExpr& z, Group group,
                                                  const FuzzConfig& cfg, const std::string& name) {
  z.validate();
  return run_trials(name, cfg, [&](int t) -> std::optional<CounterexampleReport> {
    auto rng = trial_rng(cfg.seed, t);
    const int n = uniform_int(rng, cfg.n_min, cfg.n_max);
    const int k = uniform_int(rng, cfg.vertices_min, cfg.vertices_max);
    const Polytope p = random_polytope(rng, n, k, cfg.denominator, rng() % 2 == 0);
    const Vector x = random_nonzero_vector(rng, n, 3);
    const int shears = uniform_int(rng, 1, 10);
    const LinearMap phi =
        group == Group::SL ? random_shear_product(rng, n, shears) : random_glplus(rng, n, shears);
    const Vector xt = phi.transpose_apply(x);
    auto sides = [&](const Polytope& q) {
      Value rhs;
      for (const auto& term : z.terms) {
        Value v = evaluate_term(q, xt, term);
        if (term.is_simple()) v *= phi.det();
        rhs += v;
      }
      return std::make_pair(classified_evaluate(apply_linear(q, phi), x, z), rhs);
    };
    const auto [lhs, rhs] = sides(p);
    double delta = 0;
    if (sides_agree(lhs, rhs, cfg, delta)) return std::nullopt;
    Json inputs{{"polytope", polytope_to_json(p)},
                {"x", vector_to_json(x)},
                {"map", matrix_json(phi.matrix())},
                {"expr", expr_to_json(z)}};
    auto r = make_report(name, cfg, t, std::move(inputs), lhs, rhs, delta);
    attach_shrunk(r, cfg, p, [&](const Polytope& q) {
      const auto [l, rr] = sides(q);
      double d = 0;
      return !sides_agree(l, rr, cfg, d);
    });
    return r;
  });
}

MonteCarloEstimate mc_oracle_moment(const Polytope& p, const Vector& x, const WeightSpec& zeta,
                                    long samples, std::uint64_t seed) {
  zeta.validate();
  if (!p.is_full_dimensional() || samples < 2) return {};
  const int n = p.ambient_dim();
  std::vector<double> lo(static_cast<std::size_t>(n), INFINITY), hi(static_cast<std::size_t>(n), -INFINITY);
  for (const auto& v : p.vertices()) {
    for (int j = 0; j < n; ++j) {
      const double c = to_double(v[static_cast<std::size_t>(j)]);
      lo[static_cast<std::size_t>(j)] = std::min(lo[static_cast<std::size_t>(j)], c);
      hi[static_cast<std::size_t>(j)] = std::max(hi[static_cast<std::size_t>(j)], c);
    }
  }
  std::vector<std::vector<double>> normals;
  std::vector<double> offsets;
  for (const auto& f : p.facets()) {
    normals.push_back(to_doubles(f.normal));
    offsets.push_back(to_double(f.offset));
  }
  const std::vector<double> xd = to_doubles(x);
  double box = 1;
  for (int j = 0; j < n; ++j) box *= hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)];

  std::mt19937_64 rng(splitmix(seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> y(static_cast<std::size_t>(n));
  long double sum = 0, sum_sq = 0;
  for (long s = 0; s < samples; ++s) {
    for (int j = 0; j < n; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      y[jj] = lo[jj] + (hi[jj] - lo[jj]) * unit(rng);
    }
    bool inside = true;
    for (std::size_t f = 0; f < normals.size() && inside; ++f) {
      double acc = 0;
      for (int j = 0; j < n; ++j) acc += normals[f][static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j)];
      inside = acc <= offsets[f];
    }
    if (!inside) continue;
    double t = 0;
    for (int j = 0; j < n; ++j) t += xd[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j)];
    const long double v = evaluate_double(zeta, t);
    sum += v;
    sum_sq += v * v;
  }
  const long double mean = sum / samples;
  const long double var = std::max<long double>(0, (sum_sq / samples - mean * mean)) * samples / (samples - 1);
  return {static_cast<double>(box * mean), static_cast<double>(box * std::sqrt(var / samples))};
}

std::vector<Vector> local_euler_probes(const Polytope& p) {
  std::vector<Vector> probes = p.vertices();
  if (p.is_empty()) return probes;
  const int n = p.ambient_dim();
  const FaceLattice& lat = face_lattice(p);
  auto centroid_of = [&](const std::vector<int>& idx) {
    Vector c = zero_vector(n);
    for (int i : idx) c = c + p.vertices()[static_cast<std::size_t>(i)];
    return Scalar(ratio(1, static_cast<long>(idx.size()))) * c;
  };
  if (lat.by_dim.size() > 1) {
    for (int e : lat.by_dim[1]) probes.push_back(centroid_of(lat.faces[static_cast<std::size_t>(e)].vertex_indices));
  }
  if (p.dim() >= 2) {
    for (int f : lat.by_dim[static_cast<std::size_t>(p.dim() - 1)]) {
      probes.push_back(centroid_of(lat.faces[static_cast<std::size_t>(f)].vertex_indices));
    }
  }
  const Vector c = centroid_of(lat.faces.back().vertex_indices);
  probes.push_back(c);
  if (p.dim() == 0) {
    probes.push_back(c + unit_vector(n, 0));
  } else {
    // Reflecting the centroid through a vertex leaves P.
    probes.push_back(Scalar(2) * p.vertices().front() - c);
  }
  if (!lat.faces.back().lineality.empty()) probes.push_back(c + lat.faces.back().lineality.front());
  return probes;
}

bool exhaustive_local_euler(const Polytope& p, const std::vector<Vector>& probes) {
  if (p.is_empty()) return true;
  const long sgn = p.dim() % 2 == 0 ? 1 : -1;
  for (const auto& y : probes) {
    const Membership m = point_membership(y, p);
    const long expected = m == Membership::RelativeInterior ? sgn : 0;
    if (local_euler_sum(p, y) != expected) return false;
    const Polytope q = translate(p, -y);
    const FaceClasses cls = classify_faces(q);
    const FaceLattice& lat = face_lattice(q);
    long minus = 0, plus = 0;
    for (int i : cls.minus) minus += lat.faces[static_cast<std::size_t>(i)].dim % 2 == 0 ? 1 : -1;
    for (int i : cls.plus) plus += lat.faces[static_cast<std::size_t>(i)].dim % 2 == 0 ? 1 : -1;
    if (minus != expected || plus != (m == Membership::Outside ? 0 : 1)) return false;
  }
  return true;
}

std::vector<NamedExpr> standard_operators() {
  const WeightSpec poly = WeightSpec::polynomial({1, -2, ratio(3, 2), 1});
  const WeightSpec ind = WeightSpec::indicator(ratio(-1, 2), ratio(1, 3));
  const WeightSpec table = WeightSpec::tabulated({{0, 3}, {ratio(1, 2), -1}, {ratio(-1, 4), 2}}, ratio(1, 2));
  std::vector<NamedExpr> ops;
  auto single = [](Term t) {
    ValuationExpr e;
    e.add(std::move(t));
    return e;
  };
  ops.push_back({"moment_poly", single(Term::measure_term(MeasureSpec::with_density(poly)))});
  {
    ValuationExpr e = single(Term::measure_term(MeasureSpec::with_density(ind)));
    e.add(Term::measure_term(MeasureSpec::with_density(WeightSpec::signed_power(2, Side::Negative)))
              .scaled(-1));
    ops.push_back({"measure_density", e});
  }
  ops.push_back({"euler_minus", single(Term::euler(FaceClass::Minus, poly))});
  ops.push_back({"euler_plus", single(Term::euler(FaceClass::Plus, ind))});
  ops.push_back({"euler_all", single(Term::euler(FaceClass::All, table))});
  {
    ValuationExpr e = single(Term::supp(poly));
    e.add(Term::supp(ind, true));
    ops.push_back({"supp", e});
  }
  ops.push_back({"laplace", single(Term::measure_term(MeasureSpec::with_density(WeightSpec::exp_neg())))});
  ops.push_back({"general_form", general_form(poly, ind, MeasureSpec::lebesgue(), WeightSpec::power(1),
                                              table, MeasureSpec::with_density(ind))});
  return ops;
}

DissectionReport dissection_suite(int n, int d, const Scalar& s, const std::vector<Scalar>& lambdas,
                                  const std::vector<NamedExpr>& operators,
                                  const std::vector<Vector>& directions) {
  if (d < 2 || d > n) throw Error("dissection_suite: need 2 <= d <= n");
  DissectionReport rep;
  const Polytope t = scale(standard_simplex(n, d), s);
  std::vector<Vector> hat_pts{zero_vector(n), unit_vector(n, 0)};
  for (int i = 2; i < d; ++i) hat_pts.push_back(unit_vector(n, i));
  const Polytope t_hat = scale(convex_hull(hat_pts), s);

  std::vector<Vector> xs = directions;
  if (xs.empty()) {
    const std::vector<std::vector<Scalar>> defaults = {
        {1, 2, -1, 1, 2, 3}, {ratio(-1, 2), 1, 3, -1, 1, 1}, {1, 1, 1, 1, 1, 1}, {2, -1, ratio(1, 3), 2, 0, 1}};
    for (const auto& v : defaults) xs.emplace_back(v.begin(), v.begin() + n);
  }
  const FuzzConfig exact_cfg{};
  auto note = [&](const std::string& what, const Scalar& lambda) {
    rep.failures.push_back(what + " (d=" + std::to_string(d) + ", s=" + to_string(s) +
                           ", lambda=" + to_string(lambda) + ")");
  };
  for (const Scalar& lambda : lambdas) {
    if (lambda <= 0 || lambda >= 1) throw Error("dissection_suite: lambda must lie in (0, 1)");
    Matrix phi_m = identity_matrix(n), psi_m = identity_matrix(n);
    phi_m[0][0] = lambda;
    phi_m[1][0] = 1 - lambda;
    psi_m[0][1] = lambda;
    psi_m[1][1] = 1 - lambda;
    const LinearMap phi(phi_m), psi(psi_m);
    Vector normal = zero_vector(n);
    normal[0] = 1 - lambda;
    normal[1] = -lambda;
    const CutPieces pieces = cut(t, Hyperplane(normal, 0));
    ++rep.checks;
    if (!(pieces.below == apply_linear(t, phi))) note("lower piece differs from phi T", lambda);
    if (!(pieces.above == apply_linear(t, psi))) note("upper piece differs from psi T", lambda);
    if (!(pieces.on == apply_linear(t_hat, phi))) note("section differs from phi T-hat", lambda);

    for (const auto& op : operators) {
      for (const auto& x : xs) {
        const Vector px = phi.transpose_apply(x), qx = psi.transpose_apply(x);
        // The valuation identity on the three pieces.
        const Value direct_l = classified_evaluate(t, x, op.expr) + classified_evaluate(pieces.on, x, op.expr);
        const Value direct_r =
            classified_evaluate(pieces.below, x, op.expr) + classified_evaluate(pieces.above, x, op.expr);
        // The same identity after moving every piece back to T or T-hat by
        // covariance and the dilations by lambda^{1/n}, (1 - lambda)^{1/n}.
        const Value lhs = classified_evaluate(t, x, op.expr) + evaluate_dilated(t_hat, px, op.expr, lambda);
        const Value rhs = evaluate_dilated(t, px, op.expr, lambda) + evaluate_dilated(t, qx, op.expr, 1 - lambda);
        rep.checks += 2;
        FuzzConfig cfg = exact_cfg;
        cfg.tolerance = 1e-9;
        double delta = 0;
        if (!sides_agree(direct_l, direct_r, cfg, delta)) note(op.name + ": cut identity fails", lambda);
        if (!sides_agree(lhs, rhs, cfg, delta)) {
          note(op.name + ": dissection identity fails at x = " + vector_to_json(x).dump() + " (" +
                   lhs.to_string() + " vs " + rhs.to_string() + ")",
               lambda);
        }
        if (!sides_agree(lhs, direct_l, cfg, delta)) note(op.name + ": covariance of the pieces fails", lambda);
      }
    }
  }
  return rep;
}

bool cauchy_polynomial_check(const Polytope& p, const Vector& x, const WeightSpec& zeta) {
  if (!zeta.is_polynomial()) throw Error("cauchy_polynomial_check: weight must be a polynomial");
  const int degree = p.ambient_dim() + static_cast<int>(zeta.polynomial_coeffs().size()) - 1;
  const int order = degree + 1;
  Scalar diff = 0;
  for (int k = 0; k <= order; ++k) {
    const Scalar v = moment_transform(scale(p, k + 1), x, zeta).exact_value();
    const Scalar c = binomial(static_cast<unsigned>(order), static_cast<unsigned>(k));
    diff += ((order - k) % 2 == 0 ? c : Scalar(-c)) * v;
  }
  return diff == 0;
}

int thread_count() {
  if (const char* env = std::getenv("VALGEO_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int count, const std::function<void(int)>& body) {
  const int workers = std::min(thread_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

Json SuiteReport::summary_json() const {
  return Json{{"suite", suite},
              {"trials", trials},
              {"checks", checks},
              {"violations", violations.size()},
              {"passed", passed()},
              {"details", details}};
}

std::vector<std::string> suite_names() {
  return {"valuation", "covariance", "euler",        "local_euler", "eu4",
          "fubini",    "dissection", "homogeneity", "mc",          "cauchy"};
}

namespace {

void append(SuiteReport& r, std::vector<CounterexampleReport> reports) {
  for (auto& x : reports) r.violations.push_back(std::move(x));
}

SuiteReport suite_valuation(const FuzzConfig& cfg) {
  SuiteReport r;
  for (const auto& op : standard_operators()) {
    append(r, fuzz_valuation_identity(op.expr, cfg, "valuation/" + op.name));
    r.checks += cfg.trials;
  }
  return r;
}

SuiteReport suite_covariance(const FuzzConfig& cfg) {
  SuiteReport r;
  for (const auto& op : standard_operators()) {
    append(r, fuzz_covariance(op.expr, Group::SL, cfg, "covariance/sl/" + op.name));
    append(r, fuzz_covariance(op.expr, Group::GLPlus, cfg, "covariance/glplus/" + op.name));
    r.checks += 2L * cfg.trials;
  }
  return r;
}

SuiteReport suite_euler(const FuzzConfig& cfg) {
  SuiteReport r;
  append(r, run_trials("euler", cfg, [&](int t) -> std::optional<CounterexampleReport> {
           auto rng = trial_rng(cfg.seed, t);
           const int n = uniform_int(rng, cfg.n_min, cfg.n_max);
           Polytope p = possibly_lower_dimensional(rng, cfg, n);
           if (rng() % 2 == 0) p = translate(p, random_translation(rng, n));
           const Vector x = random_nonzero_vector(rng, n, 3);
           const WeightSpec zeta = random_exact_weight(rng, heights(p, x));
           auto sides = [&](const Polytope& q) {
             return std::make_pair(euler_op(q, x, zeta, FaceClass::All), evaluate(zeta, min_height(q, x)));
           };
           const auto [lhs, rhs] = sides(p);
           double delta = 0;
           if (sides_agree(lhs, rhs, cfg, delta)) return std::nullopt;
           auto rep = make_report("euler", cfg, t,
                                  Json{{"polytope", polytope_to_json(p)},
                                       {"x", vector_to_json(x)},
                                       {"weight", weight_list_json(zeta)}},
                                  lhs, rhs, delta);
           attach_shrunk(rep, cfg, p, [&](const Polytope& q) {
             const auto [l, rr] = sides(q);
             double d = 0;
             return !sides_agree(l, rr, cfg, d);
           });
           return rep;
         }));
  r.checks = cfg.trials;
  return r;
}

SuiteReport suite_local_euler(const FuzzConfig& cfg) {
  SuiteReport r;
  std::vector<long> probe_counts(static_cast<std::size_t>(cfg.trials), 0);
  append(r, run_trials("local_euler", cfg, [&](int t) -> std::optional<CounterexampleReport> {
           auto rng = trial_rng(cfg.seed, t);
           const int n = uniform_int(rng, cfg.n_min, cfg.n_max);
           Polytope p = possibly_lower_dimensional(rng, cfg, n);
           if (rng() % 3 == 0) p = translate(p, random_translation(rng, n));
           const auto probes = local_euler_probes(p);
           probe_counts[static_cast<std::size_t>(t)] = static_cast<long>(probes.size());
           if (exhaustive_local_euler(p, probes)) return std::nullopt;
           auto rep = make_report("local_euler", cfg, t, Json{{"polytope", polytope_to_json(p)}},
                                  Value::exact(0), Value::exact(1), 1);
           attach_shrunk(rep, cfg, p,
                         [&](const Polytope& q) { return !exhaustive_local_euler(q, local_euler_probes(q)); });
           return rep;
         }));
  for (long c : probe_counts) r.checks += c;
  return r;
}

SuiteReport suite_eu4(const FuzzConfig& cfg) {
  SuiteReport r;
  append(r, run_trials("eu4", cfg, [&](int t) -> std::optional<CounterexampleReport> {
           auto rng = trial_rng(cfg.seed, t);
           const int n = uniform_int(rng, cfg.n_min, cfg.n_max);
           Polytope p = random_polytope(rng, n, uniform_int(rng, cfg.vertices_min, cfg.vertices_max),
                                        cfg.denominator, false);
           if (rng() % 2 == 0) p = translate(p, random_translation(rng, n));
           const Vector x = random_nonzero_vector(rng, n, 3);
           auto hs = heights(p, x);
           if (!std::binary_search(hs.begin(), hs.end(), Scalar(0))) hs.push_back(0);
           const WeightSpec zeta = random_exact_weight(rng, hs);
           auto sides = [&](const Polytope& q) {
             const Value lhs = euler_op(q, x, zeta, FaceClass::Minus) - euler_op(cone_hull(q), x, zeta, FaceClass::Minus);
             const Scalar m = min_height(q, x);
             const Value rhs = evaluate(zeta, m) - evaluate(zeta, std::min(Scalar(0), m));
             return std::make_pair(lhs, rhs);
           };
           const auto [lhs, rhs] = sides(p);
           double delta = 0;
           if (sides_agree(lhs, rhs, cfg, delta)) return std::nullopt;
           auto rep = make_report("eu4", cfg, t,
                                  Json{{"polytope", polytope_to_json(p)},
                                       {"x", vector_to_json(x)},
                                       {"weight", weight_list_json(zeta)}},
                                  lhs, rhs, delta);
           attach_shrunk(rep, cfg, p, [&](const Polytope& q) {
             const auto [l, rr] = sides(q);
             double d = 0;
             return !sides_agree(l, rr, cfg, d);
           });
           return rep;
         }));
  r.checks = cfg.trials;
  return r;
}

SuiteReport suite_fubini(const FuzzConfig& cfg) {
  SuiteReport r;
  struct FloatCase {
    WeightSpec w;
    double tol;
  };
  const std::vector<FloatCase> float_cases = {
      {WeightSpec::exp_neg(), 1e-8},
      {WeightSpec::abs_power(ratio(-1, 2)), 1e-6},
      {WeightSpec::abs_power(ratio(1, 2)), 1e-6},
      {WeightSpec::abs_power(ratio(3, 2)), 1e-6},
      {WeightSpec::log_abs(), 1e-6},
  };
  append(r, run_trials("fubini", cfg, [&](int t) -> std::optional<CounterexampleReport> {
           auto rng = trial_rng(cfg.seed, t);
           const int n = uniform_int(rng, cfg.n_min, cfg.n_max);
           const Polytope p = random_polytope(rng, n, uniform_int(rng, cfg.vertices_min, cfg.vertices_max),
                                              cfg.denominator, rng() % 2 == 0);
           const Vector x = random_nonzero_vector(rng, n, 3);
           const SectionProfile prof = section_profile(p, x);
           std::vector<Scalar> c;
           for (int i = 0, deg = uniform_int(rng, 0, 4); i <= deg; ++i) c.push_back(random_rational(rng, 3));
           const WeightSpec poly = WeightSpec::polynomial(c);
           const Json inputs{{"polytope", polytope_to_json(p)}, {"x", vector_to_json(x)}};
           const Value exact = moment_transform(p, x, poly);
           const Value via_profile = Value::exact(integrate_profile(prof, poly));
           double delta = 0;
           if (!sides_agree(exact, via_profile, cfg, delta)) {
             Json in = inputs;
             in["weight"] = weight_to_json(poly);
             return make_report("fubini/exact", cfg, t, in, exact, via_profile, delta);
           }
           for (const auto& fc : float_cases) {
             const Value a = moment_transform(p, x, fc.w);
             const Value b = quadrature_against_profile(prof, fc.w);
             // Relative to the magnitude of the integral itself.
             const double scale = std::max(1e-300, static_cast<double>(std::fabs(a.approx())));
             const double rel = static_cast<double>(std::fabs(a.approx() - b.approx())) / scale;
             if (rel > fc.tol) {
               Json in = inputs;
               in["weight"] = weight_to_json(fc.w);
               return make_report("fubini/float", cfg, t, in, a, b, rel);
             }
           }
           return std::nullopt;
         }));
  r.checks = static_cast<long>(cfg.trials) * static_cast<long>(1 + float_cases.size());
  return r;
}

SuiteReport suite_dissection(const FuzzConfig& cfg) {
  SuiteReport r;
  const int n = std::max(3, cfg.n_min);
  const auto ops = standard_operators();
  Json cases = Json::array();
  for (int d : {2, 3}) {
    for (const Scalar& s : {ratio(1, 2), Scalar(1), Scalar(3)}) {
      const DissectionReport rep = dissection_suite(n, d, s, {ratio(1, 4), ratio(1, 2), ratio(2, 3)}, ops, {});
      r.checks += rep.checks;
      ++r.trials;
      for (const auto& f : rep.failures) {
        CounterexampleReport c;
        c.identity = "dissection";
        c.seed = cfg.seed;
        c.trial = r.trials - 1;
        c.inputs = Json{{"n", n}, {"d", d}, {"s", to_string(s)}};
        c.lhs = f;
        r.violations.push_back(std::move(c));
      }
    }
  }
  r.details["operators"] = ops.size();
  return r;
}

SuiteReport suite_homogeneity(const FuzzConfig& cfg) {
  SuiteReport r;
  const std::vector<Scalar> alphas = {ratio(1, 3), ratio(1, 2), Scalar(2), Scalar(5)};
  append(r, run_trials("homogeneity", cfg, [&](int t) -> std::optional<CounterexampleReport> {
           auto rng = trial_rng(cfg.seed, t);
           const int n = uniform_int(rng, cfg.n_min, cfg.n_max);
           const Polytope p = random_polytope(rng, n, uniform_int(rng, cfg.vertices_min, cfg.vertices_max),
                                              cfg.denominator, true);
           const Vector x = random_nonzero_vector(rng, n, 3);
           const Json inputs{{"polytope", polytope_to_json(p)}, {"x", vector_to_json(x)}};
           FuzzConfig fcfg = cfg;
           fcfg.tolerance = 1e-9;
           // Integer degree q = n + 1: every term exact.
           const Scalar q_exact = n + 1;
           const ValuationExpr exact_form = homogeneous_form(q_exact, n, 2, -1, 3, 5);
           // Non-integer degree: the density |t|^{q-n} is singular at 0.
           const Scalar q_float = n - ratio(1, 2);
           const ValuationExpr float_form = homogeneous_form(q_float, n, 1, 2, 3, 4);
           const Value e0 = classified_evaluate(p, x, exact_form);
           const Value f0 = classified_evaluate(p, x, float_form);
           const Value l0 = moment_transform(p, x, WeightSpec::log_abs());
           const long double vol = to_long_double(volume(p));
           for (const Scalar& a : alphas) {
             const Polytope ap = scale(p, a);
             double delta = 0;
             const Value e1 = classified_evaluate(ap, x, exact_form);
             const Value e_expected = pow(a, static_cast<unsigned>(q_exact.get_num().get_ui())) * e0;
             if (!sides_agree(e1, e_expected, cfg, delta)) {
               return make_report("homogeneity/exact", cfg, t, inputs, e1, e_expected, delta);
             }
             const Value f1 = classified_evaluate(ap, x, float_form);
             const long double fe = std::pow(to_long_double(a), to_long_double(q_float)) * f0.approx();
             if (!sides_agree(f1, Value::approximate(fe), fcfg, delta)) {
               return make_report("homogeneity/float", cfg, t, inputs, f1, Value::approximate(fe), delta);
             }
             const Value l1 = moment_transform(p, a * x, WeightSpec::log_abs());
             const long double le = l0.approx() + vol * std::log(to_long_double(a));
             if (!sides_agree(l1, Value::approximate(le), fcfg, delta)) {
               return make_report("homogeneity/log", cfg, t, inputs, l1, Value::approximate(le), delta);
             }
           }
           return std::nullopt;
         }));
  r.checks = static_cast<long>(cfg.trials) * static_cast<long>(3 * alphas.size());
  return r;
}

SuiteReport suite_mc(const FuzzConfig& cfg) {
  SuiteReport r;
  std::vector<double> zscores(static_cast<std::size_t>(cfg.trials), 0);
  std::vector<std::string> values(static_cast<std::size_t>(cfg.trials));
  parallel_for(cfg.trials, [&](int t) {
    auto rng = trial_rng(cfg.seed, t);
    const int n = uniform_int(rng, cfg.n_min, cfg.n_max);
    const Polytope p = random_polytope(rng, n, uniform_int(rng, cfg.vertices_min, cfg.vertices_max),
                                       cfg.denominator, rng() % 2 == 0);
    const Vector x = random_nonzero_vector(rng, n, 3);
    WeightSpec zeta;
    switch (t % 3) {
      case 0:
        zeta = WeightSpec::power(2);
        break;
      case 1:
        zeta = WeightSpec::polynomial({1, random_rational(rng, 3), random_rational(rng, 3), 1});
        break;
      default:
        zeta = WeightSpec::indicator(ratio(-1, 3), ratio(1, 2));
        break;
    }
    const Value exact = moment_transform(p, x, zeta);
    const MonteCarloEstimate mc = mc_oracle_moment(p, x, zeta, cfg.mc_samples, splitmix(cfg.seed + 7919) ^ static_cast<std::uint64_t>(t));
    const double diff = std::fabs(static_cast<double>(exact.approx()) - mc.estimate);
    zscores[static_cast<std::size_t>(t)] = mc.stderr_ > 0 ? diff / mc.stderr_ : (diff == 0 ? 0 : INFINITY);
    values[static_cast<std::size_t>(t)] = exact.to_string();
  });
  int within = 0;
  Json misses = Json::array();
  for (int t = 0; t < cfg.trials; ++t) {
    if (zscores[static_cast<std::size_t>(t)] <= 4) {
      ++within;
    } else {
      misses.push_back({{"trial", t}, {"z", zscores[static_cast<std::size_t>(t)]}});
    }
  }
  r.checks = cfg.trials;
  r.details = Json{{"fixtures", cfg.trials}, {"within_4_sigma", within}, {"samples", cfg.mc_samples}, {"misses", misses}};
  if (within < std::ceil(0.99 * cfg.trials)) {
    CounterexampleReport c;
    c.identity = "mc";
    c.seed = cfg.seed;
    c.lhs = std::to_string(within) + " fixtures within 4 sigma";
    c.rhs = "at least 99%";
    c.delta = cfg.trials - within;
    r.violations.push_back(std::move(c));
  }
  return r;
}

SuiteReport suite_cauchy(const FuzzConfig& cfg) {
  SuiteReport r;
  append(r, run_trials("cauchy", cfg, [&](int t) -> std::optional<CounterexampleReport> {
           auto rng = trial_rng(cfg.seed, t);
           const int n = uniform_int(rng, cfg.n_min, cfg.n_max);
           const Polytope p = random_polytope(rng, n, uniform_int(rng, cfg.vertices_min, cfg.vertices_max),
                                              cfg.denominator, true);
           const Vector x = random_nonzero_vector(rng, n, 3);
           std::vector<Scalar> c;
           for (int i = 0, deg = uniform_int(rng, 0, 3); i <= deg; ++i) c.push_back(random_rational(rng, 3));
           const WeightSpec zeta = WeightSpec::polynomial(c);
           if (cauchy_polynomial_check(p, x, zeta)) return std::nullopt;
           return make_report("cauchy", cfg, t,
                              Json{{"polytope", polytope_to_json(p)},
                                   {"x", vector_to_json(x)},
                                   {"weight", weight_to_json(zeta)}},
                              Value::exact(1), Value::exact(0), 1);
         }));
  r.checks = cfg.trials;
  return r;
}

}  // namespace

SuiteReport run_suite(const std::string& name, const FuzzConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport r;
  if (name == "valuation") {
    r = suite_valuation(cfg);
  } else if (name == "covariance") {
    r = suite_covariance(cfg);
  } else if (name == "euler") {
    r = suite_euler(cfg);
  } else if (name == "local_euler") {
    r = suite_local_euler(cfg);
  } else if (name == "eu4") {
    r = suite_eu4(cfg);
  } else if (name == "fubini") {
    r = suite_fubini(cfg);
  } else if (name == "dissection") {
    r = suite_dissection(cfg);
  } else if (name == "homogeneity") {
    r = suite_homogeneity(cfg);
  } else if (name == "mc") {
    r = suite_mc(cfg);
  } else if (name == "cauchy") {
    r = suite_cauchy(cfg);
  } else {
    throw Error("unknown suite \"" + name + "\"");
  }
  r.suite = name;
  if (name != "dissection") r.trials = cfg.trials;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace valgeo
