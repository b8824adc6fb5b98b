#ifndef VALGEO_SLICING_HPP
#define VALGEO_SLICING_HPP

#include "valgeo/poly.hpp"
#include "valgeo/polytope.hpp"
#include "valgeo/value.hpp"
#include "valgeo/weight.hpp"

#include <vector>

namespace valgeo {

/// Section profile s(t) of a full-dimensional polytope in direction x,
/// normalized so that V_{n-1}(P ∩ {x·y = t}) = |x| s(t). With this scaling
/// the integral of s against a measure equals the moment integral over P
/// exactly, with no square roots involved.
struct SectionProfile {
  Vector direction;
  std::vector<Scalar> breakpoints;  // sorted distinct vertex heights x·v
  std::vector<Poly> pieces;         // pieces[k] lives on [breakpoints[k], breakpoints[k+1]]

  /// lim_{u -> t+} s(u). Atoms are evaluated with this convention.
  Scalar right_limit(const Scalar& t) const;
  Scalar left_limit(const Scalar& t) const;
  bool continuous_at(const Scalar& t) const { return right_limit(t) == left_limit(t); }
  /// Integral of s over the line; equals volume(P).
  Scalar mass() const;
};

/// Requires dim P = n and x != 0.
SectionProfile section_profile(const Polytope& p, const Vector& x);

/// Heights of one simplex in direction x, sorted.
struct SimplexHeights {
  std::vector<Scalar> values;
  Scalar volume;
};
SimplexHeights simplex_heights(const Simplex& s, const Vector& x);

/// Float-path node merging threshold, relative to max |height|.
inline constexpr double kNodeMergeTolerance = 1e-9;

/// Integral of zeta(x·y) over an n-simplex in R^n (zero for flat simplices).
Value simplex_moment(const Simplex& s, const Vector& x, const WeightSpec& zeta);

/// M_zeta P(x) = integral of zeta(x·y) over P. Zero on lower-dimensional P.
Value moment_transform(const Polytope& p, const Vector& x, const WeightSpec& zeta);

/// (1/|x|) integral of V_{n-1}(P ∩ H_{x,t}) dmu(t). Zero on lower-dimensional
/// P (flagged when mu has atoms); atoms use the right-limit convention and
/// are flagged when they hit a jump of the profile.
Value measure_transform(const Polytope& p, const Vector& x, const MeasureSpec& mu);

/// Exact integral of s(t) zeta(t) dt for exact weight kinds.
Scalar integrate_profile(const SectionProfile& profile, const WeightSpec& zeta);

/// Thrown when adaptive quadrature cannot reach the requested tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(double estimate, double error);
  double estimate;
  double error;
};

/// Adaptive quadrature of s(t) zeta(t) dt piece by piece, splitting at 0 and
/// at indicator endpoints; pieces ending at a singularity of zeta use a
/// double-exponential rule.
Value quadrature_against_profile(const SectionProfile& profile, const WeightSpec& zeta,
                                 double tolerance = 1e-10);

}  // namespace valgeo

#endif  // VALGEO_SLICING_HPP
