#include "doctest.h"
#include "test_support.hpp"

#include "valgeo/harness.hpp"

#include <cmath>

using namespace valgeo;
using testing::vec;

namespace {

FuzzConfig small_config(int trials) {
  FuzzConfig cfg;
  cfg.seed = 17;
  cfg.trials = trials;
  cfg.mc_samples = 20000;
  return cfg;
}

}  // namespace

TEST_CASE("trial generators are deterministic and independent of order") {
  auto a = trial_rng(5, 3), b = trial_rng(5, 3), c = trial_rng(5, 4);
  const Polytope pa = random_polytope(a, 3, 6, 4, true);
  const Polytope pb = random_polytope(b, 3, 6, 4, true);
  const Polytope pc = random_polytope(c, 3, 6, 4, true);
  CHECK(pa == pb);
  CHECK_FALSE(pa == pc);
  CHECK(point_membership(zero_vector(3), pa) != Membership::Outside);
}

TEST_CASE("random maps have the advertised determinants") {
  auto rng = trial_rng(1, 0);
  for (int i = 0; i < 20; ++i) {
    CHECK(random_shear_product(rng, 3, 6).det() == 1);
    CHECK(random_glplus(rng, 4, 6).det() > 0);
  }
}

TEST_CASE("cutting planes meet the polytope") {
  auto rng = trial_rng(2, 0);
  for (int i = 0; i < 40; ++i) {
    const Polytope p = random_polytope(rng, 3, 6, 4, false);
    const Hyperplane h = random_cutting_plane(rng, p, 4);
    CHECK_FALSE(cut(p, h).on.is_empty());
  }
}

TEST_CASE("side comparison is exact for exact values") {
  FuzzConfig cfg;
  double delta = 0;
  CHECK(sides_agree(Value::exact(ratio(1, 3)), Value::exact(ratio(1, 3)), cfg, delta));
  CHECK_FALSE(sides_agree(Value::exact(ratio(1, 3)), Value::exact(ratio(1, 3) + ratio(1, 1000000000)), cfg, delta));
  CHECK(delta > 0);
  CHECK(sides_agree(Value::approximate(1.0L), Value::approximate(1.0L + 1e-12L), cfg, delta));
  CHECK_FALSE(sides_agree(Value::approximate(1.0L), Value::approximate(1.001L), cfg, delta));
}

TEST_CASE("the shrinker reduces to a minimal violating polytope") {
  const Polytope p = convex_hull({vec({0, 0, 0}), vec({3, 0, 0}), vec({0, 3, 0}), vec({0, 0, 3}),
                                  vec({3, 3, 3}), vec({-2, 1, 1})});
  // "Violation": still full-dimensional.
  const Polytope s = shrink_polytope(p, [](const Polytope& q) { return q.is_full_dimensional(); });
  CHECK(s.is_full_dimensional());
  CHECK(s.vertices().size() == 4);
  for (const auto& v : s.vertices()) {
    for (const auto& c : v) CHECK((c == 0 || c == 1));
  }
}

TEST_CASE("the fuzzer reports, shrinks and replays failures") {
  // A negative tolerance turns every comparison into a failure.
  ValuationExpr vol;
  vol.add(Term::measure_term(MeasureSpec::lebesgue()));
  FuzzConfig cfg = small_config(3);
  cfg.exact_must_be_zero = false;
  cfg.tolerance = -1;
  const auto reports = fuzz_valuation_identity(vol, cfg, "always_fails");
  REQUIRE(reports.size() == 3);
  const auto& r = reports.front();
  CHECK(r.identity == "always_fails");
  CHECK(r.trial == 0);
  CHECK(r.inputs.contains("hyperplane"));
  const Json j = r.to_json();
  CHECK(j.at("seed") == 17);
  REQUIRE_FALSE(r.shrunk.is_null());
  CHECK(polytope_from_json(r.shrunk).vertices().size() == 1);
  const auto again = fuzz_valuation_identity(vol, cfg, "always_fails");
  REQUIRE(again.size() == reports.size());
  CHECK(again.front().to_json() == j);

  cfg.tolerance = 1e-8;
  cfg.exact_must_be_zero = true;
  CHECK(fuzz_valuation_identity(vol, cfg).empty());
}

TEST_CASE("standard operators satisfy the valuation and covariance identities") {
  const FuzzConfig cfg = small_config(6);
  for (const auto& op : standard_operators()) {
    CAPTURE(op.name);
    CHECK(fuzz_valuation_identity(op.expr, cfg).empty());
    CHECK(fuzz_covariance(op.expr, Group::SL, cfg).empty());
    CHECK(fuzz_covariance(op.expr, Group::GLPlus, cfg).empty());
  }
}

TEST_CASE("Monte-Carlo oracle agrees with the exact moment of the unit cube") {
  const Polytope cube = box(vec({0, 0, 0}), vec({1, 1, 1}));
  const Vector x = vec({1, 1, 1});
  // Integral of (x·y)^2 over [0,1]^3: 3 * 1/3 + 6 * 1/4 = 5/2.
  const auto mc = mc_oracle_moment(cube, x, WeightSpec::power(2), 200000, 3);
  CHECK(mc.stderr_ > 0);
  CHECK(std::fabs(mc.estimate - 2.5) < 5 * mc.stderr_);
  const auto flat = mc_oracle_moment(convex_hull({vec({0, 0, 0}), vec({1, 1, 1})}), x, WeightSpec::power(2), 1000, 3);
  CHECK(flat.estimate == 0);
}

TEST_CASE("local Euler probes cover every dimension") {
  const Polytope tri = convex_hull({vec({0, 0, 0}), vec({1, 0, 0}), vec({0, 1, 0})});
  const auto probes = local_euler_probes(tri);
  CHECK(probes.size() > tri.vertices().size());
  CHECK(exhaustive_local_euler(tri, probes));
  const Polytope pt = convex_hull({vec({1, 2})});
  CHECK(exhaustive_local_euler(pt, local_euler_probes(pt)));
  const Polytope cube = box(vec({-1, -1, -1}), vec({1, 1, 1}));
  CHECK(exhaustive_local_euler(cube, local_euler_probes(cube)));
}

TEST_CASE("dissection of simplices is exact") {
  const auto ops = standard_operators();
  for (int d : {2, 3}) {
    const auto rep = dissection_suite(3, d, ratio(1, 2), {ratio(1, 3)}, ops, {});
    CAPTURE(d);
    for (const auto& f : rep.failures) MESSAGE(f);
    CHECK(rep.ok());
    CHECK(rep.checks > 0);
  }
  CHECK_THROWS_AS(dissection_suite(3, 4, 1, {ratio(1, 2)}, ops, {}), Error);
  CHECK_THROWS_AS(dissection_suite(3, 2, 1, {Scalar(1)}, ops, {}), Error);
}

TEST_CASE("the finite-difference check rejects non-polynomial growth") {
  const Polytope p = box(vec({0, 0}), vec({1, 1}));
  CHECK(cauchy_polynomial_check(p, vec({1, 2}), WeightSpec::polynomial({1, 1, 1})));
  CHECK_THROWS_AS(cauchy_polynomial_check(p, vec({1, 2}), WeightSpec::exp_neg()), Error);
}

TEST_CASE("every suite passes on a small run and is reproducible") {
  const FuzzConfig cfg = small_config(4);
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    const SuiteReport r = run_suite(name, cfg);
    for (const auto& v : r.violations) MESSAGE(v.to_json().dump());
    CHECK(r.passed());
    CHECK(r.checks > 0);
    if (name != "mc") CHECK(run_suite(name, cfg).summary_json() == r.summary_json());
  }
  CHECK_THROWS_AS(run_suite("nope", cfg), Error);
}

TEST_CASE("parallel_for visits every index once and propagates errors") {
  std::vector<int> hits(50, 0);
  parallel_for(50, [&](int i) { hits[static_cast<std::size_t>(i)] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS(parallel_for(5, [](int i) {
    if (i == 3) throw Error("boom");
  }));
  CHECK(thread_count() >= 1);
}
