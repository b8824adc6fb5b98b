#include "doctest.h"
#include "test_support.hpp"

#include "valgeo/grid.hpp"

#include <cmath>

using namespace valgeo;
using testing::vec;

TEST_CASE("axis rays come in signed pairs") {
  const auto xs = parse_grid("axes").directions(3);
  REQUIRE(xs.size() == 6);
  CHECK(xs[0] == vec({1, 0, 0}));
  CHECK(xs[1] == vec({-1, 0, 0}));
  CHECK(xs[5] == vec({0, 0, -1}));
}

TEST_CASE("fibonacci directions are nonzero and close to unit length") {
  for (int n = 1; n <= 6; ++n) {
    const auto xs = fibonacci_directions(n, 50);
    REQUIRE(xs.size() == 50);
    for (const auto& x : xs) {
      CHECK_FALSE(is_zero(x));
      double norm2 = 0;
      for (const auto& c : x) norm2 += to_double(c) * to_double(c);
      CHECK(std::sqrt(norm2) == doctest::Approx(1).epsilon(0.01));
    }
  }
  // Equal-area heights: the mean of the last coordinate vanishes in R^3.
  double mean = 0;
  for (const auto& x : fibonacci_directions(3, 200)) mean += to_double(x[2]);
  CHECK(std::fabs(mean / 200) < 1e-3);
  CHECK(fibonacci_directions(3, 10) == parse_grid("fibonacci:10").directions(3));
}

TEST_CASE("explicit grids and radius schedules") {
  DirectionGrid g = parse_grid(R"([[1, 0], ["1/2", -1]])");
  g.radii = parse_radii("1,2,1/3");
  const auto xs = g.directions(2);
  REQUIRE(xs.size() == 6);
  CHECK(xs[1] == vec({2, 0}));
  CHECK(xs[5] == Vector{ratio(1, 6), ratio(-1, 3)});
  CHECK_THROWS_AS(g.directions(3), Error);
  CHECK_THROWS_AS(parse_grid("[[0, 0]]").directions(2), Error);
}

TEST_CASE("malformed grid specifications are rejected") {
  CHECK_THROWS_AS(parse_grid("fibonacci:"), Error);
  CHECK_THROWS_AS(parse_grid("fibonacci:0"), Error);
  CHECK_THROWS_AS(parse_grid("fibonacci:3x"), Error);
  CHECK_THROWS_AS(parse_grid("[]"), Error);
  CHECK_THROWS_AS(parse_radii("1,-2"), Error);
  CHECK_THROWS_AS(parse_radii(""), Error);
}
