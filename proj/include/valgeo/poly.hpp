#ifndef VALGEO_POLY_HPP
#define VALGEO_POLY_HPP

#include "valgeo/scalar.hpp"

#include <vector>

namespace valgeo {

/// Univariate polynomial with exact coefficients, lowest degree first.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Scalar> coeffs);
  static Poly constant(const Scalar& c);
  /// (a - t)^e expanded in t.
  static Poly shifted_power(const Scalar& a, unsigned e);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  Scalar operator()(const Scalar& t) const;
  double evaluate(double t) const;

  Poly antiderivative() const;
  Scalar integrate(const Scalar& a, const Scalar& b) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Scalar& s, Poly a);
  friend Poly operator/(Poly a, const Scalar& s);
  bool operator==(const Poly& o) const { return c_ == o.c_; }

 private:
  void trim();
  std::vector<Scalar> c_;
};

}  // namespace valgeo

#endif  // VALGEO_POLY_HPP
