#ifndef VALGEO_VALUE_HPP
#define VALGEO_VALUE_HPP

#include "valgeo/scalar.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <optional>
#include <string>

namespace valgeo {

/// Working precision of the floating-point evaluation paths.
using Real = boost::multiprecision::cpp_bin_float_50;

Real to_real(const Scalar& value);

/// Result of an evaluation: an exact rational when every ingredient was
/// exact, otherwise a floating-point approximation with an error estimate.
/// `flagged` marks values that rely on a documented convention (one-sided
/// limits at atoms, a.e.-defined tables) rather than on the plain formula.
class Value {
 public:
  Value() : exact_(Scalar(0)) {}
  static Value exact(Scalar v);
  static Value approximate(long double v, long double error = 0);

  bool is_exact() const { return exact_.has_value(); }
  /// Throws when the value is approximate.
  const Scalar& exact_value() const;
  long double approx() const;
  long double error() const { return error_; }
  bool flagged() const { return flagged_; }
  void set_flagged(bool f = true) { flagged_ = f; }

  Value& operator+=(const Value& other);
  Value& operator-=(const Value& other);
  Value& operator*=(const Scalar& s);
  friend Value operator+(Value a, const Value& b) { return a += b; }
  friend Value operator-(Value a, const Value& b) { return a -= b; }
  friend Value operator*(const Scalar& s, Value a) { return a *= s; }
  Value operator-() const;

  /// Exact text ("p/q") when exact, shortest round-trip decimal otherwise.
  std::string to_string() const;

 private:
  std::optional<Scalar> exact_;
  long double approx_ = 0;
  long double error_ = 0;
  bool flagged_ = false;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace valgeo

#endif  // VALGEO_VALUE_HPP
