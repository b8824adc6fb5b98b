#include "valgeo/scalar.hpp"

#include <cmath>
#include <numeric>

namespace valgeo {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::string_view strip_sign(std::string_view s, bool& negative) {
  negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  return s;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  bool negative = false;
  std::string_view body = strip_sign(text, negative);
  Scalar result;
  if (auto e = body.find_first_of("eE");
      e != std::string_view::npos && body.find('/') == std::string_view::npos) {
    // Scientific notation: exact mantissa times a power of ten.
    std::string_view exp_text = body.substr(e + 1);
    bool exp_negative = false;
    exp_text = strip_sign(exp_text, exp_negative);
    if (exp_text.empty() || !all_digits(exp_text) || exp_text.size() > 6) {
      throw Error("malformed exponent in '" + std::string(text) + "'");
    }
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 10, std::stoul(std::string(exp_text)));
    result = parse_scalar(body.substr(0, e));
    result = exp_negative ? Scalar(result / power) : Scalar(result * power);
  } else if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw Error("malformed rational '" + std::string(text) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    result = Scalar(mpz_class(std::string(num), 10), d);
    result.canonicalize();
  } else if (auto dot_pos = body.find('.'); dot_pos != std::string_view::npos) {
    std::string_view ip = body.substr(0, dot_pos);
    std::string_view fp = body.substr(dot_pos + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) ||
        (ip.empty() && fp.empty())) {
      throw Error("malformed decimal '" + std::string(text) + "'");
    }
    std::string digits = std::string(ip) + std::string(fp);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
    result = Scalar(mpz_class(digits.empty() ? std::string("0") : digits, 10), den);
    result.canonicalize();
  } else {
    if (!all_digits(body)) throw Error("malformed rational '" + std::string(text) + "'");
    result = Scalar(mpz_class(std::string(body), 10));
  }
  if (negative) result = -result;
  return result;
}

std::string to_string(const Scalar& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Scalar scalar_from_double(double value) {
  if (!std::isfinite(value)) throw Error("non-finite value cannot be made exact");
  return Scalar(value);
}

double to_double(const Scalar& value) { return value.get_d(); }

long double to_long_double(const Scalar& value) {
  const mpz_class& num = value.get_num();
  const mpz_class& den = value.get_den();
  if (num.fits_slong_p() && den.fits_slong_p()) {
    return static_cast<long double>(num.get_si()) / static_cast<long double>(den.get_si());
  }
  return std::strtold(num.get_str().c_str(), nullptr) /
         std::strtold(den.get_str().c_str(), nullptr);
}

Scalar ratio(long num, long den) {
  if (den == 0) throw Error("ratio: zero denominator");
  Scalar r(num, den);
  r.canonicalize();
  return r;
}

int sign(const Scalar& value) { return sgn(value); }

bool is_integer(const Scalar& value) { return value.get_den() == 1; }

Scalar pow(const Scalar& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), exponent);
  return Scalar(num, den);
}

Scalar factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Scalar(f);
}

Scalar binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Scalar(b);
}

Vector zero_vector(int n) { return Vector(static_cast<std::size_t>(n), Scalar(0)); }

Vector unit_vector(int n, int i) {
  Vector e = zero_vector(n);
  e.at(static_cast<std::size_t>(i)) = 1;
  return e;
}

Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error("dot: dimension mismatch");
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error("vector add: dimension mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error("vector subtract: dimension mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector operator-(const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Vector operator*(const Scalar& s, const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

bool is_zero(const Vector& a) {
  for (const auto& c : a) {
    if (c != 0) return false;
  }
  return true;
}

std::vector<double> to_doubles(const Vector& a) {
  std::vector<double> r;
  r.reserve(a.size());
  for (const auto& c : a) r.push_back(c.get_d());
  return r;
}

double euclidean_norm(const Vector& a) {
  long double s = 0;
  for (const auto& c : a) {
    long double v = to_long_double(c);
    s += v * v;
  }
  return static_cast<double>(std::sqrt(s));
}

Vector primitive_direction(const Vector& a) {
  if (is_zero(a)) throw Error("primitive_direction: zero vector");
  mpz_class lcm = 1;
  for (const auto& c : a) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> ints;
  ints.reserve(a.size());
  mpz_class g = 0;
  for (const auto& c : a) {
    mpz_class v = c.get_num() * (lcm / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    ints.push_back(v);
  }
  Vector r;
  r.reserve(a.size());
  for (auto& v : ints) r.emplace_back(mpz_class(v / g));
  return r;
}

}  // namespace valgeo
