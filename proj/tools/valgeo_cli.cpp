// Batch front end: loads polytopes and weight/measure/expression specs,
// evaluates transforms on direction grids and runs the identity suites.

#include "valgeo/grid.hpp"
#include "valgeo/harness.hpp"
#include "valgeo/io.hpp"
#include "valgeo/slicing.hpp"
#include "valgeo/valuations.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace valgeo;

namespace {

struct Options {
  std::string input;
  std::string weight;
  std::string measure;
  std::string expr;
  std::string grid = "axes";
  std::string radii = "1";
  std::string direction;
  std::string body;
  std::string format = "csv";
  std::string suite;
  int trials = 100;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  int n_min = 3;
  int n_max = 3;
  long samples = 1000000;
  int profile_samples = 16;
  bool no_shrink = false;
};

Polytope load_polytope(const Options& o) {
  if (o.input.empty()) throw Error("--input is required");
  return polytope_from_json(load_json(o.input));
}

std::vector<Vector> grid_directions(const Options& o, int n) {
  DirectionGrid g = parse_grid(o.grid);
  g.radii = parse_radii(o.radii);
  return g.directions(n);
}

Json value_json(const Value& v) {
  Json j{{"value", v.to_string()}, {"exact", v.is_exact()}};
  if (!v.is_exact()) j["error"] = format_double(static_cast<double>(v.error()));
  if (v.flagged()) j["flagged"] = true;
  return j;
}

/// Evaluates f at every grid direction (in parallel) and prints rows in
/// grid order: direction components, value, error estimate.
int emit_grid(const Options& o, int n, const std::function<Value(const Vector&)>& f) {
  const auto xs = grid_directions(o, n);
  std::vector<std::optional<Value>> values(xs.size());
  parallel_for(static_cast<int>(xs.size()), [&](int i) { values[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]); });
  if (o.format == "json") {
    Json rows = Json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Json row = value_json(*values[i]);
      row["x"] = vector_to_json(xs[i]);
      rows.push_back(row);
    }
    std::cout << Json{{"rows", rows}}.dump(2) << '\n';
    return 0;
  }
  for (int j = 1; j <= n; ++j) std::cout << 'x' << j << ',';
  std::cout << "value,error\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (const auto& c : xs[i]) std::cout << to_string(c) << ',';
    const Value& v = *values[i];
    std::cout << v.to_string() << ',' << (v.is_exact() ? "" : format_double(static_cast<double>(v.error()))) << '\n';
  }
  return 0;
}

int cmd_hull(const Options& o) {
  const Polytope p = load_polytope(o);
  Json facets = Json::array();
  for (const auto& f : p.facets()) {
    facets.push_back({{"normal", vector_to_json(f.normal)}, {"offset", scalar_to_json(f.offset)}});
  }
  Json out = polytope_to_json(p);
  out["dim"] = p.dim();
  out["facets"] = facets;
  out["volume"] = scalar_to_json(p.is_full_dimensional() ? volume(p) : Scalar(0));
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_faces(const Options& o) {
  const Polytope p = load_polytope(o);
  Json faces = Json::array();
  if (!p.is_empty()) {
    const FaceLattice& lat = face_lattice(p);
    for (const auto& f : lat.faces) {
      faces.push_back({{"dim", f.dim},
                       {"vertices", f.vertex_indices},
                       {"minus", f.in_minus_class()},
                       {"plus", f.in_plus_class()}});
    }
    std::cout << Json{{"vertices", polytope_to_json(p)["vertices"]}, {"f_vector", lat.f_vector()}, {"faces", faces}}.dump(2)
              << '\n';
  } else {
    std::cout << Json{{"vertices", Json::array()}, {"f_vector", Json::array()}, {"faces", faces}}.dump(2) << '\n';
  }
  return 0;
}

int cmd_profile(const Options& o) {
  const Polytope p = load_polytope(o);
  if (o.direction.empty()) throw Error("--direction is required");
  const Vector x = vector_from_json(load_json(o.direction));
  const SectionProfile prof = section_profile(p, x);
  if (o.profile_samples < 1) throw Error("--samples must be positive");
  const Scalar lo = prof.breakpoints.front(), hi = prof.breakpoints.back();
  std::vector<std::pair<Scalar, Scalar>> samples;
  for (int k = 0; k <= o.profile_samples; ++k) {
    const Scalar t = lo + (hi - lo) * ratio(k, o.profile_samples);
    samples.emplace_back(t, k == o.profile_samples ? prof.left_limit(t) : prof.right_limit(t));
  }
  if (o.format == "json") {
    Json pieces = Json::array();
    for (std::size_t k = 0; k < prof.pieces.size(); ++k) {
      pieces.push_back({{"from", scalar_to_json(prof.breakpoints[k])},
                        {"to", scalar_to_json(prof.breakpoints[k + 1])},
                        {"coeffs", vector_to_json(prof.pieces[k].coeffs())}});
    }
    Json s = Json::array();
    for (const auto& [t, v] : samples) s.push_back({scalar_to_json(t), scalar_to_json(v)});
    std::cout << Json{{"direction", vector_to_json(x)},
                      {"breakpoints", vector_to_json(prof.breakpoints)},
                      {"pieces", pieces},
                      {"samples", s},
                      {"mass", scalar_to_json(prof.mass())}}
                     .dump(2)
              << '\n';
    return 0;
  }
  std::cout << "t,s\n";
  for (const auto& [t, v] : samples) std::cout << to_string(t) << ',' << to_string(v) << '\n';
  return 0;
}

int cmd_moment(const Options& o) {
  const Polytope p = load_polytope(o);
  if (!o.weight.empty() && !o.measure.empty()) throw Error("give either --weight or --measure");
  if (!o.measure.empty()) {
    const MeasureSpec mu = measure_from_json(load_json(o.measure));
    return emit_grid(o, p.ambient_dim(), [&](const Vector& x) { return measure_transform(p, x, mu); });
  }
  if (o.weight.empty()) throw Error("--weight or --measure is required");
  const WeightSpec w = weight_from_json(load_json(o.weight));
  return emit_grid(o, p.ambient_dim(), [&](const Vector& x) { return moment_transform(p, x, w); });
}

int cmd_body(const Options& o) {
  const Polytope p = load_polytope(o);
  const std::string& spec = o.body;
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::optional<Scalar> param =
      colon == std::string::npos ? std::nullopt : std::optional<Scalar>(parse_scalar(spec.substr(colon + 1)));
  auto need = [&]() -> Scalar {
    if (!param) throw Error("body " + kind + " needs a parameter, e.g. " + kind + ":2");
    return *param;
  };
  std::function<Value(const Vector&)> f;
  if (kind == "moment") {
    const Scalar q = need();
    f = [&p, q](const Vector& x) { return moment_body_support(p, x, q); };
  } else if (kind == "polar") {
    const Scalar q = need();
    f = [&p, q](const Vector& x) { return polar_moment_gauge(p, x, q); };
  } else if (kind == "l0_polar") {
    f = [&p](const Vector& x) { return l0_polar_moment_gauge(p, x); };
  } else if (kind == "l0_polar_log") {
    f = [&p](const Vector& x) { return l0_polar_moment_log_gauge(p, x); };
  } else if (kind == "laplace") {
    f = [&p](const Vector& x) { return laplace_transform(p, x); };
  } else if (kind == "difference") {
    const Scalar q = need();
    f = [&p, q](const Vector& x) { return difference_body_support(p, x, q); };
  } else if (kind == "intersection") {
    f = [&p](const Vector& x) { return intersection_body_gauge_inv(p, x); };
  } else {
    throw Error("unknown body \"" + spec +
                "\" (moment:p, polar:p, l0_polar, l0_polar_log, laplace, difference:p, intersection)");
  }
  return emit_grid(o, p.ambient_dim(), f);
}

int cmd_eval(const Options& o) {
  const Polytope p = load_polytope(o);
  if (o.expr.empty()) throw Error("--expr is required");
  const ValuationExpr e = expr_from_json(load_json(o.expr));
  return emit_grid(o, p.ambient_dim(), [&](const Vector& x) { return classified_evaluate(p, x, e); });
}

int cmd_check(const Options& o) {
  FuzzConfig cfg;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.tolerance = o.tol;
  cfg.n_min = o.n_min;
  cfg.n_max = o.n_max;
  cfg.mc_samples = o.samples;
  cfg.shrink = !o.no_shrink;
  if (cfg.trials < 1) throw Error("--trials must be positive");
  if (cfg.n_min < 1 || cfg.n_max > kMaxDimension || cfg.n_min > cfg.n_max) throw Error("invalid dimension range");
  const std::vector<std::string> names = o.suite == "all" ? suite_names() : std::vector<std::string>{o.suite};
  bool ok = true;
  for (const auto& name : names) {
    const SuiteReport r = run_suite(name, cfg);
    for (const auto& v : r.violations) std::cout << v.to_json().dump() << '\n';
    std::cout << r.summary_json().dump() << '\n';
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact valuations on convex polytopes: transforms, bodies and identity checks"};
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App* c) { c->add_option("--input", o.input, "Polytope JSON (file or inline)")->required(); };
  auto add_grid = [&](CLI::App* c) {
    c->add_option("--grid", o.grid, "Directions: axes, fibonacci:N, or a JSON list")->capture_default_str();
    c->add_option("--radii", o.radii, "Comma-separated radius schedule")->capture_default_str();
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* hull = app.add_subcommand("hull", "Vertices, facets and volume of the hull");
  add_input(hull);
  auto* faces = app.add_subcommand("faces", "Face lattice with F-/F+ membership");
  add_input(faces);
  auto* profile = app.add_subcommand("profile", "Section-volume profile t -> V(P ∩ {x·y = t})");
  add_input(profile);
  profile->add_option("--direction", o.direction, "Direction x as a JSON list")->required();
  profile->add_option("--samples", o.profile_samples, "Number of sampling intervals")->capture_default_str();
  profile->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  auto* moment = app.add_subcommand("moment", "Moment or measure transform on a direction grid");
  add_input(moment);
  add_grid(moment);
  moment->add_option("--weight", o.weight, "Weight JSON");
  moment->add_option("--measure", o.measure, "Measure JSON");
  auto* body = app.add_subcommand("body", "Support or gauge function of a derived body on a grid");
  add_input(body);
  add_grid(body);
  body->add_option("kind", o.body,
                   "moment:p, polar:p, l0_polar, l0_polar_log, laplace, difference:p or intersection")
      ->required();
  auto* eval = app.add_subcommand("eval", "Valuation expression on a direction grid");
  add_input(eval);
  add_grid(eval);
  eval->add_option("--expr", o.expr, "Expression JSON")->required();
  auto* check = app.add_subcommand("check", "Run an identity suite; JSON lines, nonzero exit on violations");
  std::string suite_help = "Suite name or 'all':";
  for (const auto& s : suite_names()) suite_help += " " + s;
  auto all_suites = suite_names();
  all_suites.push_back("all");
  check->add_option("suite", o.suite, suite_help)->required()->check(CLI::IsMember(all_suites));
  check->add_option("--trials", o.trials, "Trials per identity")->capture_default_str();
  check->add_option("--seed", o.seed, "Seed")->capture_default_str();
  check->add_option("--tol", o.tol, "Relative tolerance for floating-point paths")->capture_default_str();
  check->add_option("--n-min", o.n_min, "Smallest dimension")->capture_default_str();
  check->add_option("--n-max", o.n_max, "Largest dimension")->capture_default_str();
  check->add_option("--samples", o.samples, "Monte-Carlo samples per fixture")->capture_default_str();
  check->add_flag("--no-shrink", o.no_shrink, "Report counterexamples unshrunk");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*hull) return cmd_hull(o);
    if (*faces) return cmd_faces(o);
    if (*profile) return cmd_profile(o);
    if (*moment) return cmd_moment(o);
    if (*body) return cmd_body(o);
    if (*eval) return cmd_eval(o);
    if (*check) return cmd_check(o);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
  return 0;
}
