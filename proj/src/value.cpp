#include "valgeo/value.hpp"

#include <charconv>
#include <cmath>

namespace valgeo {

Real to_real(const Scalar& value) {
  if (value.get_den() == 1) return Real(value.get_num().get_str());
  return Real(value.get_num().get_str()) / Real(value.get_den().get_str());
}

Value Value::exact(Scalar v) {
  Value r;
  r.exact_ = std::move(v);
  return r;
}

Value Value::approximate(long double v, long double error) {
  Value r;
  r.exact_.reset();
  r.approx_ = v;
  r.error_ = error;
  return r;
}

const Scalar& Value::exact_value() const {
  if (!exact_) throw Error("value is not exact");
  return *exact_;
}

long double Value::approx() const { return exact_ ? to_long_double(*exact_) : approx_; }

Value& Value::operator+=(const Value& other) {
  if (exact_ && other.exact_) {
    *exact_ += *other.exact_;
  } else {
    approx_ = approx() + other.approx();
    error_ += other.error_;
    exact_.reset();
  }
  flagged_ = flagged_ || other.flagged_;
  return *this;
}

Value& Value::operator-=(const Value& other) { return *this += -other; }

Value& Value::operator*=(const Scalar& s) {
  if (exact_) {
    *exact_ *= s;
  } else {
    const long double f = to_long_double(s);
    approx_ *= f;
    error_ *= std::fabs(f);
  }
  return *this;
}

Value Value::operator-() const {
  Value r = *this;
  r *= Scalar(-1);
  return r;
}

std::string Value::to_string() const {
  if (exact_) return valgeo::to_string(*exact_);
  return format_double(static_cast<double>(approx_));
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf, end);
}

}  // namespace valgeo
