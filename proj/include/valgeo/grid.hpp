#ifndef VALGEO_GRID_HPP
#define VALGEO_GRID_HPP

#include "valgeo/linalg.hpp"

#include <string>
#include <vector>

namespace valgeo {

enum class GridKind { SphereFibonacci, AxisRays, Explicit };

/// Directions at which transforms are sampled. Every direction is scaled by
/// every radius, so a radius schedule probes homogeneity along rays.
struct DirectionGrid {
  GridKind kind = GridKind::AxisRays;
  int count = 0;                 // SphereFibonacci only
  std::vector<Vector> explicit_directions;
  std::vector<Scalar> radii{1};

  /// Rational directions in R^n, in a fixed order: directions outer,
  /// radii inner. All are nonzero.
  std::vector<Vector> directions(int n) const;
};

/// "fibonacci:N", "axes", or an explicit JSON list of directions
/// ("[[1,0,0],[\"1/2\",1,-1]]", or a file holding one).
DirectionGrid parse_grid(const std::string& spec);
/// Comma-separated rationals, e.g. "1,2,1/2"; all must be positive.
std::vector<Scalar> parse_radii(const std::string& spec);

/// Near-uniform points on the unit sphere in R^n (a Fibonacci lattice for
/// n = 3, a regular polygon for n = 2, generalized spiral otherwise),
/// rounded to rationals with denominator 1000.
std::vector<Vector> fibonacci_directions(int n, int count);

}  // namespace valgeo

#endif  // VALGEO_GRID_HPP
