#ifndef VALGEO_SCALAR_HPP
#define VALGEO_SCALAR_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace valgeo {

/// Exact rational. GMP keeps every value in canonical form (reduced,
/// positive denominator) after each arithmetic operation.
using Scalar = mpq_class;

/// Point or direction in R^n with exact coordinates.
using Vector = std::vector<Scalar>;

/// Row-major dense matrix.
using Matrix = std::vector<Vector>;

/// Maximum ambient dimension handled by the library.
inline constexpr int kMaxDimension = 6;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// num/den in canonical form. Prefer this over the two-argument mpq_class
/// constructor, which leaves the fraction unreduced.
Scalar ratio(long num, long den);

/// Parses "p/q", "p", or a finite decimal such as "-0.25".
Scalar parse_scalar(std::string_view text);

/// Canonical text: "p" for integers, "p/q" otherwise.
std::string to_string(const Scalar& value);

/// Exact conversion of a binary double.
Scalar scalar_from_double(double value);

double to_double(const Scalar& value);
long double to_long_double(const Scalar& value);

int sign(const Scalar& value);
bool is_integer(const Scalar& value);

/// Raises to a non-negative integer power.
Scalar pow(const Scalar& base, unsigned exponent);

Scalar factorial(unsigned n);
Scalar binomial(unsigned n, unsigned k);

// Vector helpers.
Vector zero_vector(int n);
Vector unit_vector(int n, int i);
Scalar dot(const Vector& a, const Vector& b);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator-(const Vector& a);
Vector operator*(const Scalar& s, const Vector& a);
bool is_zero(const Vector& a);
std::vector<double> to_doubles(const Vector& a);
double euclidean_norm(const Vector& a);

/// Rescales a nonzero vector to the primitive integer vector with the same
/// direction (coprime integer entries).
Vector primitive_direction(const Vector& a);

}  // namespace valgeo

#endif  // VALGEO_SCALAR_HPP
