#include "valgeo/weight.hpp"

#include <algorithm>
#include <cmath>

namespace valgeo {

WeightSpec WeightSpec::power(unsigned p) {
  WeightSpec w;
  w.kind = WeightKind::Power;
  w.exponent = p;
  return w;
}

WeightSpec WeightSpec::abs_power(const Scalar& p) {
  WeightSpec w;
  w.kind = WeightKind::AbsPower;
  w.exponent = p;
  w.validate();
  return w;
}

WeightSpec WeightSpec::signed_power(const Scalar& q, Side side) {
  WeightSpec w;
  w.kind = WeightKind::SignedPower;
  w.exponent = q;
  w.side = side;
  w.validate();
  return w;
}

WeightSpec WeightSpec::exp_neg() {
  WeightSpec w;
  w.kind = WeightKind::ExpNeg;
  return w;
}

WeightSpec WeightSpec::log_abs() {
  WeightSpec w;
  w.kind = WeightKind::LogAbs;
  return w;
}

WeightSpec WeightSpec::indicator(const Scalar& a, const Scalar& b) {
  WeightSpec w;
  w.kind = WeightKind::Indicator;
  w.lower = a;
  w.upper = b;
  w.validate();
  return w;
}

WeightSpec WeightSpec::polynomial(std::vector<Scalar> coeffs) {
  WeightSpec w;
  w.kind = WeightKind::Polynomial;
  w.coeffs = std::move(coeffs);
  while (!w.coeffs.empty() && w.coeffs.back() == 0) w.coeffs.pop_back();
  return w;
}

WeightSpec WeightSpec::constant(const Scalar& c) {
  WeightSpec w;
  w.kind = WeightKind::Constant;
  w.coeffs = {c};
  return w;
}

WeightSpec WeightSpec::tabulated(std::vector<std::pair<Scalar, Scalar>> table,
                                 const Scalar& fallback) {
  WeightSpec w;
  w.kind = WeightKind::Tabulated;
  std::sort(table.begin(), table.end());
  w.table = std::move(table);
  w.fallback = fallback;
  w.validate();
  return w;
}

WeightSpec WeightSpec::reflected() const {
  WeightSpec w = *this;
  w.reflect = !w.reflect;
  return w;
}

void WeightSpec::validate() const {
  switch (kind) {
    case WeightKind::Power:
      if (!is_integer(exponent) || exponent < 0) throw Error("power: exponent must be a non-negative integer");
      break;
    case WeightKind::AbsPower:
      if (exponent <= -1) throw Error("abs_power: exponent must exceed -1 (not locally integrable)");
      if (exponent == 0) throw Error("abs_power: exponent must be nonzero");
      break;
    case WeightKind::SignedPower:
      if (exponent <= -1) throw Error("signed_power: exponent must exceed -1 (not locally integrable)");
      break;
    case WeightKind::Indicator:
      if (lower > upper) throw Error("indicator: need a <= b");
      break;
    case WeightKind::Constant:
      if (coeffs.size() != 1) throw Error("constant: exactly one value required");
      break;
    case WeightKind::Tabulated:
      for (std::size_t i = 1; i < table.size(); ++i) {
        if (table[i].first == table[i - 1].first) throw Error("table: duplicate location");
      }
      break;
    default:
      break;
  }
}

bool WeightSpec::is_exact() const {
  switch (kind) {
    case WeightKind::Power:
    case WeightKind::Indicator:
    case WeightKind::Polynomial:
    case WeightKind::Constant:
    case WeightKind::Tabulated:
      return true;
    case WeightKind::AbsPower:
    case WeightKind::SignedPower:
      return is_integer(exponent) && exponent >= 0;
    default:
      return false;
  }
}

bool WeightSpec::is_polynomial() const {
  switch (kind) {
    case WeightKind::Power:
    case WeightKind::Polynomial:
    case WeightKind::Constant:
      return true;
    case WeightKind::AbsPower:
      return is_integer(exponent) && exponent > 0 && exponent.get_num() % 2 == 0;
    default:
      return false;
  }
}

std::vector<Scalar> WeightSpec::polynomial_coeffs() const {
  std::vector<Scalar> c;
  switch (kind) {
    case WeightKind::Power:
    case WeightKind::AbsPower: {
      const unsigned p = static_cast<unsigned>(exponent.get_num().get_ui());
      c.assign(p + 1, Scalar(0));
      c[p] = 1;
      break;
    }
    case WeightKind::Polynomial:
    case WeightKind::Constant:
      c = coeffs;
      break;
    default:
      throw Error("weight is not a polynomial");
  }
  if (reflect) {
    for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
  }
  return c;
}

namespace {

Scalar int_power(const Scalar& t, const Scalar& exponent) {
  return pow(t, static_cast<unsigned>(exponent.get_num().get_ui()));
}

}  // namespace

Value evaluate(const WeightSpec& w, const Scalar& t_in) {
  const Scalar t = w.reflect ? Scalar(-t_in) : t_in;
  switch (w.kind) {
    case WeightKind::Power:
    case WeightKind::Polynomial:
    case WeightKind::Constant: {
      WeightSpec plain = w;
      plain.reflect = false;
      Scalar r = 0;
      const auto c = plain.polynomial_coeffs();
      for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * t + *it;
      return Value::exact(r);
    }
    case WeightKind::AbsPower: {
      if (t == 0) {
        if (w.exponent < 0) throw Error("abs_power with negative exponent is infinite at 0");
        return Value::exact(0);
      }
      if (is_integer(w.exponent)) return Value::exact(int_power(abs(t), w.exponent));
      return Value::approximate(std::pow(std::fabs(to_long_double(t)), to_long_double(w.exponent)));
    }
    case WeightKind::SignedPower: {
      const int s = sign(t);
      const bool on_side = w.side == Side::Positive ? s > 0 : s < 0;
      if (s == 0) {
        // t^0 = 1 on the closed positive half-line, 0 otherwise.
        return Value::exact(w.exponent == 0 && w.side == Side::Positive ? 1 : 0);
      }
      if (!on_side) return Value::exact(0);
      if (is_integer(w.exponent) && w.exponent >= 0) return Value::exact(int_power(abs(t), w.exponent));
      return Value::approximate(std::pow(std::fabs(to_long_double(t)), to_long_double(w.exponent)));
    }
    case WeightKind::ExpNeg:
      if (t == 0) return Value::exact(1);
      return Value::approximate(std::exp(-to_long_double(t)));
    case WeightKind::LogAbs:
      if (t == 0 || abs(t) == 1) return Value::exact(0);
      return Value::approximate(std::log(std::fabs(to_long_double(t))));
    case WeightKind::Indicator:
      return Value::exact(w.lower <= t && t <= w.upper ? 1 : 0);
    case WeightKind::Tabulated: {
      auto it = std::lower_bound(w.table.begin(), w.table.end(), t,
                                 [](const auto& e, const Scalar& v) { return e.first < v; });
      if (it != w.table.end() && it->first == t) return Value::exact(it->second);
      return Value::exact(w.fallback);
    }
  }
  throw Error("evaluate: unknown weight kind");
}

double evaluate_double(const WeightSpec& w, double t_in) {
  const double t = w.reflect ? -t_in : t_in;
  const double p = to_double(w.exponent);
  switch (w.kind) {
    case WeightKind::Power:
    case WeightKind::Polynomial:
    case WeightKind::Constant: {
      WeightSpec plain = w;
      plain.reflect = false;
      long double r = 0;
      const auto c = plain.polynomial_coeffs();
      for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * t + to_long_double(*it);
      return static_cast<double>(r);
    }
    case WeightKind::AbsPower:
      return t == 0 ? 0.0 : std::pow(std::fabs(t), p);
    case WeightKind::SignedPower:
      if (t == 0) return (p == 0 && w.side == Side::Positive) ? 1.0 : 0.0;
      if ((w.side == Side::Positive) != (t > 0)) return 0.0;
      return std::pow(std::fabs(t), p);
    case WeightKind::ExpNeg:
      return std::exp(-t);
    case WeightKind::LogAbs:
      return t == 0 ? 0.0 : std::log(std::fabs(t));
    case WeightKind::Indicator:
      return (to_double(w.lower) <= t && t <= to_double(w.upper)) ? 1.0 : 0.0;
    case WeightKind::Tabulated:
      for (const auto& [loc, val] : w.table) {
        if (to_double(loc) == t) return to_double(val);
      }
      return to_double(w.fallback);
  }
  throw Error("evaluate: unknown weight kind");
}

MeasureSpec MeasureSpec::lebesgue() { return with_density(WeightSpec::constant(1)); }

MeasureSpec MeasureSpec::with_density(WeightSpec w) {
  MeasureSpec m;
  m.density = std::move(w);
  return m;
}

MeasureSpec MeasureSpec::atom(const Scalar& t, const Scalar& mass) {
  MeasureSpec m;
  m.atoms.emplace_back(t, mass);
  return m;
}

void MeasureSpec::validate() const {
  if (density) density->validate();
}

}  // namespace valgeo
