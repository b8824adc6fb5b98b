#include "valgeo/valuations.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace valgeo {

namespace {

void check_dimension(const Polytope& p, const Vector& x, const char* what) {
  if (static_cast<int>(x.size()) != p.ambient_dim()) {
    throw Error(std::string(what) + ": dimension mismatch");
  }
}

bool in_class(const Face& f, FaceClass which) {
  switch (which) {
    case FaceClass::Minus:
      return f.in_minus_class();
    case FaceClass::Plus:
      return f.in_plus_class();
    case FaceClass::All:
      return true;
  }
  return false;
}

Value root(const Value& v, const Scalar& exponent) {
  if (exponent == 1) return v;
  const long double base = v.approx();
  const long double e = 1.0L / to_long_double(exponent);
  if (base == 0) {
    return Value::approximate(e > 0 ? 0.0L : std::numeric_limits<long double>::infinity());
  }
  const long double r = std::pow(base, e);
  Value out = Value::approximate(r, std::fabs(r * e) * v.error() / std::fabs(base));
  out.set_flagged(v.flagged());
  return out;
}

const char* kind_name(TermKind k) {
  switch (k) {
    case TermKind::SuppCompose:
      return "supp";
    case TermKind::EulerMinus:
      return "euler_minus";
    case TermKind::EulerPlus:
      return "euler_plus";
    case TermKind::EulerAll:
      return "euler_all";
    case TermKind::Measure:
      return "measure";
  }
  return "?";
}

}  // namespace

Value supp_compose(const Polytope& p, const Vector& x, const WeightSpec& zeta, bool reflect_body) {
  zeta.validate();
  check_dimension(p, x, "supp_compose");
  if (p.is_empty()) return Value::exact(0);
  const Scalar h = reflect_body ? support(p, -x) : support(p, x);
  return evaluate(zeta, h);
}

Value euler_op(const Polytope& p, const Vector& x, const WeightSpec& zeta, FaceClass which,
               bool reflect_body) {
  zeta.validate();
  check_dimension(p, x, "euler_op");
  if (p.is_empty()) return Value::exact(0);
  const Polytope body = reflect_body ? reflect(p) : p;
  const FaceLattice& lattice = face_lattice(body);
  std::map<Scalar, long> counts;
  for (const Face& f : lattice.faces) {
    if (!in_class(f, which)) continue;
    counts[face_support(body, f, x)] += (f.dim % 2 == 0) ? 1 : -1;
  }
  Value total;
  for (const auto& [h, c] : counts) {
    if (c != 0) total += Scalar(c) * evaluate(zeta, h);
  }
  return total;
}

long local_euler_sum(const Polytope& p, const Vector& x) {
  check_dimension(p, x, "local_euler_sum");
  if (p.is_empty() || point_membership(x, p) == Membership::Outside) return 0;
  const FaceLattice& lattice = face_lattice(p);
  long total = 0;
  for (const Face& f : lattice.faces) {
    const Vector& v = p.vertices()[static_cast<std::size_t>(f.vertex_indices.front())];
    bool inside = true;
    for (const Vector& u : f.normal_cone_rays) {
      if (dot(u, x) != dot(u, v)) {
        inside = false;
        break;
      }
    }
    if (inside) total += (f.dim % 2 == 0) ? 1 : -1;
  }
  return total;
}

Value moment_body_support(const Polytope& p, const Vector& x, const Scalar& exponent) {
  if (exponent < 1) throw Error("moment_body_support: exponent must be at least 1");
  return root(moment_transform(p, x, WeightSpec::abs_power(exponent)), exponent);
}

Value polar_moment_gauge(const Polytope& p, const Vector& x, const Scalar& exponent) {
  return root(moment_transform(p, x, WeightSpec::abs_power(exponent)), exponent);
}

Value l0_polar_moment_log_gauge(const Polytope& p, const Vector& x) {
  if (!p.is_full_dimensional()) throw Error("l0_polar_moment: polytope must be full-dimensional");
  Value v = moment_transform(p, x, WeightSpec::log_abs());
  v *= Scalar(1 / volume(p));
  return v;
}

Value l0_polar_moment_gauge(const Polytope& p, const Vector& x) {
  const Value log_gauge = l0_polar_moment_log_gauge(p, x);
  const long double g = std::exp(log_gauge.approx());
  return Value::approximate(g, g * log_gauge.error());
}

Value laplace_transform(const Polytope& p, const Vector& x) {
  return moment_transform(p, x, WeightSpec::exp_neg());
}

Value difference_body_support(const Polytope& p, const Vector& x, const Scalar& exponent) {
  if (exponent < 1) throw Error("difference_body_support: exponent must be at least 1");
  if (p.is_empty() || point_membership(zero_vector(p.ambient_dim()), p) == Membership::Outside) {
    throw Error("difference_body_support: the origin must lie in P");
  }
  const Scalar a = support(p, x);
  const Scalar b = support(p, -x);
  if (is_integer(exponent)) {
    const unsigned e = static_cast<unsigned>(exponent.get_num().get_ui());
    return root(Value::exact(pow(a, e) + pow(b, e)), exponent);
  }
  const long double e = to_long_double(exponent);
  return root(Value::approximate(std::pow(to_long_double(a), e) + std::pow(to_long_double(b), e)),
              exponent);
}

Value intersection_body_gauge_inv(const Polytope& p, const Vector& x) {
  if (is_zero(x)) throw Error("intersection_body_gauge_inv: direction must be nonzero");
  return measure_transform(p, x, MeasureSpec::atom(0, 1));
}

DirectionFunction lp_minkowski_combine(DirectionFunction h1, DirectionFunction h2, double p) {
  if (p < 1) throw Error("lp_minkowski_combine: p must be at least 1");
  return [h1 = std::move(h1), h2 = std::move(h2), p](const Vector& x) {
    return std::pow(std::pow(h1(x), p) + std::pow(h2(x), p), 1.0 / p);
  };
}

DirectionFunction lq_harmonic_combine(DirectionFunction g1, DirectionFunction g2, double q) {
  if (q == 0) throw Error("lq_harmonic_combine: q must be nonzero");
  return [g1 = std::move(g1), g2 = std::move(g2), q](const Vector& x) {
    return std::pow(std::pow(g1(x), q) + std::pow(g2(x), q), 1.0 / q);
  };
}

Term Term::supp(WeightSpec zeta, bool reflect_body) {
  Term t;
  t.kind = TermKind::SuppCompose;
  t.weight = std::move(zeta);
  t.reflect_body = reflect_body;
  return t;
}

Term Term::euler(FaceClass which, WeightSpec zeta, bool reflect_body) {
  Term t;
  t.kind = which == FaceClass::Minus  ? TermKind::EulerMinus
           : which == FaceClass::Plus ? TermKind::EulerPlus
                                      : TermKind::EulerAll;
  t.weight = std::move(zeta);
  t.reflect_body = reflect_body;
  return t;
}

Term Term::measure_term(MeasureSpec mu) {
  Term t;
  t.kind = TermKind::Measure;
  t.measure = std::move(mu);
  return t;
}

Term Term::on_cone_hull() const {
  Term t = *this;
  t.cone_hull = true;
  return t;
}

Term Term::scaled(const Scalar& c) const {
  Term t = *this;
  t.coeff *= c;
  return t;
}

void Term::validate() const {
  if (kind == TermKind::Measure) {
    measure.validate();
    if (reflect_body) throw Error("measure terms take no body reflection");
  } else {
    weight.validate();
  }
}

ValuationExpr& ValuationExpr::add(Term t) {
  terms.push_back(std::move(t));
  return *this;
}

void ValuationExpr::validate() const {
  for (const auto& t : terms) t.validate();
}

bool ValuationExpr::is_exact() const {
  for (const auto& t : terms) {
    if (t.kind == TermKind::Measure) {
      if (t.measure.density && !t.measure.density->is_exact()) return false;
    } else if (!t.weight.is_exact()) {
      return false;
    }
  }
  return true;
}

std::string ValuationExpr::describe() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Term& t = terms[i];
    if (i) out << " + ";
    if (t.coeff != 1) out << to_string(t.coeff) << "*";
    out << kind_name(t.kind);
    if (t.reflect_body) out << "(-P)";
    if (t.cone_hull) out << "[P,o]";
  }
  return out.str();
}

ValuationExpr continuous_form(const WeightSpec& zeta, const MeasureSpec& mu) {
  ValuationExpr e;
  e.add(Term::supp(zeta));
  // zeta(-h_{-P}(x)) = zeta^R(h_{-P}(x)).
  e.add(Term::supp(zeta.reflected(), true));
  e.add(Term::measure_term(mu));
  return e;
}

ValuationExpr regular_form(const WeightSpec& zeta1, const WeightSpec& zeta2, const MeasureSpec& mu) {
  ValuationExpr e;
  e.add(Term::supp(zeta1));
  e.add(Term::supp(zeta1.reflected(), true));
  e.add(Term::euler(FaceClass::Minus, zeta2));
  e.add(Term::euler(FaceClass::Minus, zeta2.reflected(), true));
  e.add(Term::measure_term(mu));
  return e;
}

ValuationExpr general_form(const WeightSpec& zeta1, const WeightSpec& zeta2, const MeasureSpec& mu,
                           const WeightSpec& zeta1_tilde, const WeightSpec& zeta2_tilde,
                           const MeasureSpec& mu_tilde) {
  ValuationExpr e;
  auto block = [&e](const WeightSpec& z1, const WeightSpec& z2, const MeasureSpec& m, bool wrap) {
    std::vector<Term> ts = {
        Term::euler(FaceClass::Plus, z1),
        Term::euler(FaceClass::Plus, z1.reflected(), true),
        Term::euler(FaceClass::Minus, z2),
        Term::euler(FaceClass::Minus, z2.reflected(), true),
        Term::measure_term(m),
    };
    for (auto& t : ts) e.add(wrap ? t.on_cone_hull() : t);
  };
  block(zeta1, zeta2, mu, false);
  block(zeta1_tilde, zeta2_tilde, mu_tilde, true);
  return e;
}

ValuationExpr continuous_general_form(const WeightSpec& zeta, const MeasureSpec& mu,
                                      const WeightSpec& zeta_tilde, const MeasureSpec& mu_tilde) {
  ValuationExpr e = continuous_form(zeta, mu);
  for (const auto& t : continuous_form(zeta_tilde, mu_tilde).terms) e.add(t.on_cone_hull());
  return e;
}

ValuationExpr homogeneous_form(const Scalar& q, int n, const Scalar& c1, const Scalar& c2,
                               const Scalar& c3, const Scalar& c4) {
  ValuationExpr e;
  e.add(Term::supp(WeightSpec::signed_power(q, Side::Positive)).scaled(c1));
  e.add(Term::supp(WeightSpec::signed_power(q, Side::Positive), true).scaled(c2));
  const Scalar r = q - n;
  e.add(Term::measure_term(MeasureSpec::with_density(WeightSpec::signed_power(r, Side::Positive)))
            .scaled(c3));
  e.add(Term::measure_term(MeasureSpec::with_density(WeightSpec::signed_power(r, Side::Negative)))
            .scaled(c4));
  return e;
}

Value evaluate_term(const Polytope& p, const Vector& x, const Term& t) {
  const Polytope body = t.cone_hull ? cone_hull(p) : p;
  Value v;
  switch (t.kind) {
    case TermKind::SuppCompose:
      v = supp_compose(body, x, t.weight, t.reflect_body);
      break;
    case TermKind::EulerMinus:
      v = euler_op(body, x, t.weight, FaceClass::Minus, t.reflect_body);
      break;
    case TermKind::EulerPlus:
      v = euler_op(body, x, t.weight, FaceClass::Plus, t.reflect_body);
      break;
    case TermKind::EulerAll:
      v = euler_op(body, x, t.weight, FaceClass::All, t.reflect_body);
      break;
    case TermKind::Measure:
      v = body.is_empty() ? Value() : measure_transform(body, x, t.measure);
      break;
  }
  v *= t.coeff;
  return v;
}

Value classified_evaluate(const Polytope& p, const Vector& x, const ValuationExpr& expr) {
  expr.validate();
  Value total;
  for (const auto& t : expr.terms) total += evaluate_term(p, x, t);
  return total;
}

Value evaluate_dilated(const Polytope& p, const Vector& x, const ValuationExpr& expr,
                       const Scalar& volume_factor) {
  if (volume_factor <= 0) throw Error("evaluate_dilated: factor must be positive");
  expr.validate();
  Value total;
  for (const auto& t : expr.terms) {
    Value v = evaluate_term(p, x, t);
    if (t.is_simple()) v *= volume_factor;
    total += v;
  }
  return total;
}

std::vector<ConeVolumeAtom> cone_volume_measure(const Polytope& l) {
  const int n = l.ambient_dim();
  if (!l.is_full_dimensional() || point_membership(zero_vector(n), l) != Membership::RelativeInterior) {
    throw Error("cone_volume_measure: the origin must be an interior point");
  }
  std::vector<ConeVolumeAtom> atoms;
  for (const Facet& f : l.facets()) {
    std::vector<Vector> pts{zero_vector(n)};
    for (int i : f.vertices) pts.push_back(l.vertices()[static_cast<std::size_t>(i)]);
    atoms.push_back({f.normal, f.offset, volume(convex_hull(pts))});
  }
  return atoms;
}

Value cone_volume_integral(const Polytope& l,
                           const std::function<Value(const ConeVolumeAtom&)>& g) {
  Value total;
  for (const auto& a : cone_volume_measure(l)) total += a.mass * g(a);
  return total;
}

}  // namespace valgeo
