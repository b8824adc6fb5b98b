#include "valgeo/poly.hpp"

namespace valgeo {

Poly::Poly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

Poly Poly::constant(const Scalar& c) { return Poly({c}); }

Poly Poly::shifted_power(const Scalar& a, unsigned e) {
  // (a - t)^e = sum_j C(e, j) a^(e-j) (-t)^j
  std::vector<Scalar> c(e + 1);
  for (unsigned j = 0; j <= e; ++j) {
    c[j] = binomial(e, j) * pow(a, e - j) * ((j % 2 == 0) ? 1 : -1);
  }
  return Poly(std::move(c));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Scalar Poly::operator()(const Scalar& t) const {
  Scalar r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
  return r;
}

double Poly::evaluate(double t) const {
  long double r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + to_long_double(*it);
  return static_cast<double>(r);
}

Poly Poly::antiderivative() const {
  std::vector<Scalar> c(c_.size() + 1);
  c[0] = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) c[i + 1] = c_[i] / static_cast<long>(i + 1);
  return Poly(std::move(c));
}

Scalar Poly::integrate(const Scalar& a, const Scalar& b) const {
  Poly F = antiderivative();
  return F(b) - F(a);
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, Scalar(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(c));
}

Poly operator*(const Scalar& s, Poly a) {
  for (auto& c : a.c_) c *= s;
  a.trim();
  return a;
}

Poly operator/(Poly a, const Scalar& s) {
  if (s == 0) throw Error("polynomial division by zero");
  for (auto& c : a.c_) c /= s;
  return a;
}

}  // namespace valgeo
