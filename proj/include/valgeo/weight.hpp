#ifndef VALGEO_WEIGHT_HPP
#define VALGEO_WEIGHT_HPP

#include "valgeo/scalar.hpp"
#include "valgeo/value.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace valgeo {

enum class WeightKind {
  Power,        // t^p, p a non-negative integer
  AbsPower,     // |t|^p, p > -1, p != 0
  SignedPower,  // t^q on t > 0 (or (-t)^q on t < 0), zero on the other side
  ExpNeg,       // e^{-t}
  LogAbs,       // log|t|, and 0 at t = 0
  Indicator,    // 1 on the closed interval [a, b]
  Polynomial,   // sum c_k t^k
  Constant,
  Tabulated,    // exact lookup table, `fallback` everywhere else
};

enum class Side { Positive, Negative };

/// Closed description of a weight function zeta on the real line. With
/// `reflect` set the spec denotes zeta^R(t) = zeta(-t).
struct WeightSpec {
  WeightKind kind = WeightKind::Constant;
  Scalar exponent;  // Power, AbsPower, SignedPower
  Side side = Side::Positive;
  Scalar lower, upper;         // Indicator
  std::vector<Scalar> coeffs;  // Polynomial, lowest degree first; Constant uses coeffs[0]
  std::vector<std::pair<Scalar, Scalar>> table;  // Tabulated, sorted by location
  Scalar fallback;
  bool reflect = false;

  static WeightSpec power(unsigned p);
  static WeightSpec abs_power(const Scalar& p);
  static WeightSpec signed_power(const Scalar& q, Side side);
  static WeightSpec exp_neg();
  static WeightSpec log_abs();
  static WeightSpec indicator(const Scalar& a, const Scalar& b);
  static WeightSpec polynomial(std::vector<Scalar> coeffs);
  static WeightSpec constant(const Scalar& c);
  static WeightSpec tabulated(std::vector<std::pair<Scalar, Scalar>> table, const Scalar& fallback);

  WeightSpec reflected() const;
  /// Throws Error when the parameters are out of range.
  void validate() const;
  /// True when integrals against polytopes are exact rationals.
  bool is_exact() const;
  /// True when zeta is a polynomial (Power, Polynomial, Constant, or an
  /// even integer AbsPower).
  bool is_polynomial() const;
  /// Coefficients of zeta (reflection applied) when is_polynomial().
  std::vector<Scalar> polynomial_coeffs() const;
};

/// zeta(t): exact for rational kinds at rational points, float otherwise.
Value evaluate(const WeightSpec& w, const Scalar& t);
double evaluate_double(const WeightSpec& w, double t);

/// Signed measure on the line: an optional density plus finitely many atoms
/// (location, mass).
struct MeasureSpec {
  std::optional<WeightSpec> density;
  std::vector<std::pair<Scalar, Scalar>> atoms;

  static MeasureSpec lebesgue();
  static MeasureSpec with_density(WeightSpec w);
  static MeasureSpec atom(const Scalar& t, const Scalar& mass);

  /// No atoms: every singleton has measure zero.
  bool is_continuous() const { return atoms.empty(); }
  void validate() const;
};

}  // namespace valgeo

#endif  // VALGEO_WEIGHT_HPP
