#include "doctest.h"
#include "test_support.hpp"

#include "valgeo/divided_difference.hpp"
#include "valgeo/slicing.hpp"

#include <cmath>

using namespace valgeo;
using testing::qvec;
using testing::random_direction;
using testing::vec;

namespace {

// s(t) from the exact section polytope: project P ∩ {x·y = t} along a
// coordinate j with x_j != 0; the projection has (n-1)-volume
// |x_j| / |x| times the section volume, so s(t) = projected volume / |x_j|.
Scalar section_oracle(const Polytope& p, const Vector& x, const Scalar& t) {
  const int n = p.ambient_dim();
  int j = 0;
  while (x[static_cast<std::size_t>(j)] == 0) ++j;
  Polytope sec = cut(p, Hyperplane(x, t)).on;
  if (sec.dim() < n - 1) return 0;
  if (n == 1) return 1 / abs(x[0]);
  std::vector<Vector> proj;
  for (const auto& v : sec.vertices()) {
    Vector w;
    for (int i = 0; i < n; ++i) {
      if (i != j) w.push_back(v[static_cast<std::size_t>(i)]);
    }
    proj.push_back(std::move(w));
  }
  return volume(convex_hull(proj)) / abs(x[static_cast<std::size_t>(j)]);
}

bool close(long double a, long double b, long double rel) {
  return std::fabs(a - b) <= rel * std::max<long double>(1, std::max(std::fabs(a), std::fabs(b)));
}

}  // namespace

TEST_CASE("profile of the triangle and the cube") {
  SectionProfile s = section_profile(standard_simplex(2, 2), vec({1, 0}));
  REQUIRE(s.pieces.size() == 1);
  CHECK(s.pieces[0] == Poly({Scalar(1), Scalar(-1)}));
  CHECK(s.right_limit(ratio(1, 4)) == ratio(3, 4));
  CHECK(s.right_limit(1) == 0);
  CHECK(s.right_limit(-1) == 0);

  for (int n = 1; n <= 4; ++n) {
    Polytope cube = box(zero_vector(n), Vector(static_cast<std::size_t>(n), Scalar(1)));
    SectionProfile c = section_profile(cube, unit_vector(n, 0));
    REQUIRE(c.pieces.size() == 1);
    CHECK(c.pieces[0] == Poly::constant(1));
    CHECK(c.mass() == 1);
  }
  CHECK_THROWS_AS(section_profile(standard_simplex(3, 2), vec({1, 0, 0})), Error);
  CHECK_THROWS_AS(section_profile(standard_simplex(2, 2), vec({0, 0})), Error);
}

TEST_CASE("profile matches exact sections and has mass V(P)") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 24; ++trial) {
    const int n = 1 + trial % 4;
    Polytope p = testing::random_polytope(rng, n, n + 3, 4);
    Vector x = random_direction(rng, n);
    SectionProfile s = section_profile(p, x);
    CAPTURE(trial);
    CHECK(s.mass() == volume(p));
    for (std::size_t k = 0; k + 1 < s.breakpoints.size(); ++k) {
      const Scalar& lo = s.breakpoints[k];
      const Scalar& hi = s.breakpoints[k + 1];
      for (const Scalar& f : {ratio(1, 3), ratio(1, 2), ratio(4, 5)}) {
        const Scalar t = lo + f * (hi - lo);
        CHECK(s.right_limit(t) == section_oracle(p, x, t));
        CHECK(s.right_limit(t) >= 0);
      }
      // Continuous at interior breakpoints once n >= 2.
      if (n >= 2 && k > 0) CHECK(s.continuous_at(lo));
    }
  }
}

TEST_CASE("closed-form moments") {
  Polytope t2 = standard_simplex(2, 2);
  CHECK(moment_transform(t2, vec({1, 0}), WeightSpec::power(2)).exact_value() == ratio(1, 12));
  CHECK(moment_transform(standard_simplex(3, 3), vec({1, 2, 3}), WeightSpec::constant(1))
            .exact_value() == ratio(1, 6));

  Polytope unit = convex_hull({vec({0}), vec({1})});
  Value e = moment_transform(unit, vec({1}), WeightSpec::exp_neg());
  CHECK_FALSE(e.is_exact());
  CHECK(close(e.approx(), 1 - std::exp(-1.0L), 1e-15));

  Polytope sym = convex_hull({vec({-1}), vec({1})});
  Value a = moment_transform(sym, vec({1}), WeightSpec::abs_power(ratio(-1, 2)));
  CHECK(close(a.approx(), 4, 1e-15));
  // integral of log|t| over [-1,1] is -2.
  CHECK(close(moment_transform(sym, vec({1}), WeightSpec::log_abs()).approx(), -2, 1e-15));

  // x = 0 is admissible: zeta(0) V(P).
  CHECK(moment_transform(t2, vec({0, 0}), WeightSpec::exp_neg()).exact_value() == ratio(1, 2));
  CHECK_THROWS_AS(WeightSpec::abs_power(-1), Error);
  CHECK_THROWS_AS(WeightSpec::indicator(1, 0), Error);
}

TEST_CASE("exact Fubini identity for rational weights") {
  std::mt19937_64 rng(41);
  const std::vector<WeightSpec> weights = {
      WeightSpec::power(3),
      WeightSpec::polynomial({ratio(1, 2), -1, 0, ratio(3, 2)}),
      WeightSpec::indicator(ratio(-1, 3), ratio(1, 2)),
      WeightSpec::signed_power(2, Side::Positive),
      WeightSpec::signed_power(1, Side::Negative),
      WeightSpec::abs_power(3),
      WeightSpec::polynomial({0, 1, 1}).reflected(),
      WeightSpec::indicator(0, 1).reflected(),
  };
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    Polytope p = testing::random_polytope(rng, n, n + 3, 4);
    Vector x = random_direction(rng, n);
    SectionProfile s = section_profile(p, x);
    for (const auto& w : weights) {
      Value m = moment_transform(p, x, w);
      REQUIRE(m.is_exact());
      CHECK(m.exact_value() == integrate_profile(s, w));
    }
  }
}

TEST_CASE("float Fubini identity") {
  std::mt19937_64 rng(43);
  const std::vector<std::pair<WeightSpec, double>> weights = {
      {WeightSpec::exp_neg(), 1e-8},
      {WeightSpec::abs_power(ratio(-1, 2)), 1e-6},
      {WeightSpec::abs_power(ratio(1, 2)), 1e-6},
      {WeightSpec::abs_power(ratio(3, 2)), 1e-6},
      {WeightSpec::log_abs(), 1e-6},
      {WeightSpec::signed_power(ratio(-1, 3), Side::Negative), 1e-6},
  };
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 2;
    Polytope p = testing::random_polytope(rng, n, n + 3, 4);
    Vector x = random_direction(rng, n);
    SectionProfile s = section_profile(p, x);
    for (const auto& [w, tol] : weights) {
      Value m = moment_transform(p, x, w);
      Value q = quadrature_against_profile(s, w);
      CAPTURE(trial);
      CHECK(close(m.approx(), q.approx(), tol));
    }
  }
}

TEST_CASE("translation expands binomially and scaling is homogeneous") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 2;
    Polytope p = testing::random_polytope(rng, n, n + 3, 3);
    Vector x = random_direction(rng, n);
    Vector v = testing::random_points(rng, n, 1, 2).front();
    const Scalar xv = dot(x, v);
    const unsigned k = 3;
    Scalar expanded = 0;
    for (unsigned j = 0; j <= k; ++j) {
      expanded += binomial(k, j) * pow(xv, k - j) *
                  moment_transform(p, x, WeightSpec::power(j)).exact_value();
    }
    CHECK(moment_transform(translate(p, v), x, WeightSpec::power(k)).exact_value() == expanded);

    const Scalar alpha = ratio(3, 2);
    CHECK(moment_transform(scale(p, alpha), x, WeightSpec::power(k)).exact_value() ==
          pow(alpha, static_cast<unsigned>(n) + k) *
              moment_transform(p, x, WeightSpec::power(k)).exact_value());
  }
}

TEST_CASE("log weight shifts by V(P) log alpha") {
  std::mt19937_64 rng(53);
  Polytope p = testing::random_polytope(rng, 3, 7, 4);
  Vector x = random_direction(rng, 3);
  const long double base = moment_transform(p, x, WeightSpec::log_abs()).approx();
  const long double v = to_long_double(volume(p));
  for (const Scalar& alpha : {ratio(1, 3), ratio(1, 2), Scalar(2), Scalar(5)}) {
    const long double shifted = moment_transform(p, alpha * x, WeightSpec::log_abs()).approx();
    CHECK(close(shifted - base, v * std::log(to_long_double(alpha)), 1e-12));
  }
}

TEST_CASE("confluent divided differences are limits of distinct nodes") {
  auto f = [](long double z, int m) {
    // F = e^{-z}: F^(m)(z) / m!
    long double v = std::exp(-z) * ((m % 2) ? -1 : 1);
    for (int i = 2; i <= m; ++i) v /= i;
    return v;
  };
  const long double eps = 1e-5L;
  const std::vector<long double> confluent = {0.25L, 0.25L, 0.25L, 1.0L};
  const std::vector<long double> spread = {0.25L - eps, 0.25L, 0.25L + eps, 1.0L};
  auto taylor_c = [&](std::size_t i, int m) { return f(confluent[i], m); };
  auto taylor_s = [&](std::size_t i, int m) { return f(spread[i], m); };
  const long double a = divided_difference<long double>(confluent, taylor_c);
  const long double b = divided_difference<long double>(spread, taylor_s);
  CHECK(std::fabs(a - b) < 1e-7L);

  // Exact rational version: [0,0,1] of t^3 equals its leading behaviour.
  std::vector<Scalar> nodes = {Scalar(0), Scalar(0), Scalar(1)};
  auto cube = [&](std::size_t i, int m) {
    const Scalar& z = nodes[i];
    if (m == 0) return pow(z, 3);
    return m == 1 ? Scalar(3 * z * z) : Scalar(3 * z);
  };
  // [0,0,1] t^3 = ([0,1] - [0,0]) / 1 = (1 - 0) = 1.
  CHECK(divided_difference<Scalar>(nodes, cube) == 1);
}

TEST_CASE("measure transform") {
  Polytope cube = box(qvec({"-1/2", "-1/2", "-1/2"}), qvec({"1/2", "1/2", "1/2"}));
  Value atom = measure_transform(cube, vec({1, 0, 0}), MeasureSpec::atom(0, 1));
  CHECK(atom.exact_value() == 1);
  CHECK_FALSE(atom.flagged());
  // At the top facet the right limit is 0 and the value is flagged.
  Value edge = measure_transform(cube, vec({1, 0, 0}), MeasureSpec::atom(ratio(1, 2), 1));
  CHECK(edge.exact_value() == 0);
  CHECK(edge.flagged());
  Value bottom = measure_transform(cube, vec({2, 0, 0}), MeasureSpec::atom(-1, 1));
  CHECK(bottom.exact_value() == ratio(1, 2));

  Polytope t3 = standard_simplex(3, 3);
  CHECK(measure_transform(t3, vec({1, 1, 0}), MeasureSpec::lebesgue()).exact_value() == ratio(1, 6));
  CHECK(measure_transform(t3, vec({1, 0, 0}), MeasureSpec::with_density(WeightSpec::power(1)))
            .exact_value() ==
        moment_transform(t3, vec({1, 0, 0}), WeightSpec::polynomial({0, 1})).exact_value());

  // Simple: lower-dimensional polytopes contribute nothing.
  Polytope flat = standard_simplex(3, 2);
  CHECK(measure_transform(flat, vec({1, 0, 0}), MeasureSpec::lebesgue()).exact_value() == 0);
  Value flagged = measure_transform(flat, vec({1, 0, 0}), MeasureSpec::atom(0, 1));
  CHECK(flagged.exact_value() == 0);
  CHECK(flagged.flagged());
}

TEST_CASE("tabulated weights integrate to their fallback") {
  WeightSpec w = WeightSpec::tabulated({{Scalar(0), Scalar(5)}, {ratio(1, 2), Scalar(-7)}}, 2);
  CHECK(evaluate(w, 0).exact_value() == 5);
  CHECK(evaluate(w, ratio(1, 3)).exact_value() == 2);
  CHECK(evaluate(w.reflected(), ratio(-1, 2)).exact_value() == -7);
  CHECK(moment_transform(standard_simplex(2, 2), vec({1, 1}), w).exact_value() == 1);
}
