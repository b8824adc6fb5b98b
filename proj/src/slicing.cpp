#include "valgeo/slicing.hpp"

#include "valgeo/divided_difference.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>

namespace valgeo {

namespace {

// A weight is lowered to a sum of components, each with a closed-form d-th
// antiderivative F (F^(d) = component). Reflection is already applied.
struct Component {
  enum class Kind { Poly, Trunc, Indicator, Exp, Log } kind = Kind::Poly;
  Scalar coeff = 1;
  std::vector<Scalar> poly;
  Scalar exponent;  // Trunc: |t|^q on one side
  int side = 1;     // Trunc, Log: +1 for t > 0, -1 for t < 0
  Scalar a, b;      // Indicator
  int rate = -1;    // Exp: e^{rate t}

  bool exact() const {
    switch (kind) {
      case Kind::Poly:
      case Kind::Indicator:
        return true;
      case Kind::Trunc:
        return is_integer(exponent) && exponent >= 0;
      default:
        return false;
    }
  }
};

std::vector<Component> lower(const WeightSpec& w) {
  w.validate();
  const int flip = w.reflect ? -1 : 1;
  std::vector<Component> out;
  auto trunc = [&](int side) {
    Component c;
    c.kind = Component::Kind::Trunc;
    c.exponent = w.exponent;
    c.side = side;
    out.push_back(c);
  };
  if (w.is_polynomial()) {
    Component c;
    c.poly = w.polynomial_coeffs();
    out.push_back(c);
    return out;
  }
  switch (w.kind) {
    case WeightKind::AbsPower:
      trunc(1);
      trunc(-1);
      break;
    case WeightKind::SignedPower:
      trunc((w.side == Side::Positive ? 1 : -1) * flip);
      break;
    case WeightKind::ExpNeg: {
      Component c;
      c.kind = Component::Kind::Exp;
      c.rate = -flip;
      out.push_back(c);
      break;
    }
    case WeightKind::LogAbs:
      for (int side : {1, -1}) {
        Component c;
        c.kind = Component::Kind::Log;
        c.side = side;
        out.push_back(c);
      }
      break;
    case WeightKind::Indicator: {
      Component c;
      c.kind = Component::Kind::Indicator;
      c.a = w.reflect ? Scalar(-w.upper) : w.lower;
      c.b = w.reflect ? Scalar(-w.lower) : w.upper;
      out.push_back(c);
      break;
    }
    case WeightKind::Tabulated: {
      // Equal to the fallback value almost everywhere.
      Component c;
      c.poly = {w.fallback};
      out.push_back(c);
      break;
    }
    default:
      throw Error("lower: unexpected weight kind");
  }
  return out;
}

// F^(m)(z) / m! for an exact component; k = d - m >= 1.
Scalar exact_taylor(const Component& c, int d, const Scalar& z, int m) {
  const unsigned k = static_cast<unsigned>(d - m);
  Scalar v = 0;
  switch (c.kind) {
    case Component::Kind::Poly:
      for (std::size_t j = 0; j < c.poly.size(); ++j) {
        if (c.poly[j] == 0) continue;
        const unsigned jj = static_cast<unsigned>(j);
        v += c.poly[j] * factorial(jj) / factorial(jj + k) * pow(z, jj + k);
      }
      break;
    case Component::Kind::Trunc:
      if (sign(z) == c.side) {
        const unsigned q = static_cast<unsigned>(c.exponent.get_num().get_ui());
        v = pow(abs(z), q + k) * factorial(q) / factorial(q + k);
        if (c.side < 0 && k % 2 == 1) v = -v;
      }
      break;
    case Component::Kind::Indicator: {
      if (z > c.a) v += pow(z - c.a, k);
      if (z > c.b) v -= pow(z - c.b, k);
      v /= factorial(k);
      break;
    }
    default:
      throw Error("exact_taylor: component has no exact antiderivative");
  }
  return v / factorial(static_cast<unsigned>(m));
}

Real harmonic(unsigned k) {
  Real h = 0;
  for (unsigned i = 1; i <= k; ++i) h += Real(1) / i;
  return h;
}

Real real_factorial(unsigned k) {
  Real f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

Real real_taylor(const Component& c, int d, const Real& z, int m) {
  const unsigned k = static_cast<unsigned>(d - m);
  Real v = 0;
  switch (c.kind) {
    case Component::Kind::Poly:
      for (std::size_t j = 0; j < c.poly.size(); ++j) {
        const unsigned jj = static_cast<unsigned>(j);
        v += to_real(c.poly[j]) * real_factorial(jj) / real_factorial(jj + k) * pow(z, jj + k);
      }
      break;
    case Component::Kind::Indicator: {
      const Real a = to_real(c.a), b = to_real(c.b);
      if (z > a) v += pow(z - a, k);
      if (z > b) v -= pow(z - b, k);
      v /= real_factorial(k);
      break;
    }
    case Component::Kind::Trunc: {
      const bool on_side = c.side > 0 ? z > 0 : z < 0;
      if (!on_side) return 0;
      const Real q = to_real(c.exponent);
      Real denom = 1;
      for (unsigned i = 1; i <= k; ++i) denom *= q + i;
      v = pow(abs(z), q + k) / denom;
      if (c.side < 0 && k % 2 == 1) v = -v;
      break;
    }
    case Component::Kind::Exp:
      v = exp(Real(c.rate) * z);
      if (c.rate < 0 && k % 2 == 1) v = -v;
      break;
    case Component::Kind::Log: {
      const bool on_side = c.side > 0 ? z > 0 : z < 0;
      if (!on_side) return 0;
      const Real s = abs(z);
      v = pow(s, k) / real_factorial(k) * (log(s) - harmonic(k));
      if (c.side < 0 && k % 2 == 1) v = -v;
      break;
    }
  }
  return v / real_factorial(static_cast<unsigned>(m));
}

}  // namespace

Scalar SectionProfile::right_limit(const Scalar& t) const {
  if (breakpoints.size() < 2 || t < breakpoints.front() || t >= breakpoints.back()) return 0;
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  const auto k = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
  return pieces[k](t);
}

Scalar SectionProfile::left_limit(const Scalar& t) const {
  if (breakpoints.size() < 2 || t <= breakpoints.front() || t > breakpoints.back()) return 0;
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), t);
  const auto k = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
  return pieces[k](t);
}

Scalar SectionProfile::mass() const {
  Scalar total = 0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    total += pieces[k].integrate(breakpoints[k], breakpoints[k + 1]);
  }
  return total;
}

SimplexHeights simplex_heights(const Simplex& s, const Vector& x) {
  SimplexHeights h;
  for (const auto& v : s.vertices) h.values.push_back(dot(x, v));
  std::sort(h.values.begin(), h.values.end());
  h.volume = simplex_volume(s);
  return h;
}

SectionProfile section_profile(const Polytope& p, const Vector& x) {
  if (is_zero(x)) throw Error("section_profile: direction must be nonzero");
  if (!p.is_full_dimensional()) {
    throw Error("section_profile: lower-dimensional polytope has no section function");
  }
  const int d = p.ambient_dim();
  SectionProfile prof;
  prof.direction = x;
  for (const auto& v : p.vertices()) prof.breakpoints.push_back(dot(x, v));
  std::sort(prof.breakpoints.begin(), prof.breakpoints.end());
  prof.breakpoints.erase(std::unique(prof.breakpoints.begin(), prof.breakpoints.end()),
                         prof.breakpoints.end());
  prof.pieces.assign(prof.breakpoints.size() - 1, Poly());

  // Per simplex: s(t) = d V [h_0..h_d] (u - t)_+^{d-1}, the divided difference
  // taken in u. On an open piece no node equals t, so each node contributes
  // the polynomial (h - t)^{d-1} (and its u-derivatives) or nothing.
  for (const auto& simplex : triangulate(p)) {
    SimplexHeights h = simplex_heights(simplex, x);
    const Scalar weight = d * h.volume;
    for (std::size_t k = 0; k + 1 < prof.breakpoints.size(); ++k) {
      const Scalar& lo = prof.breakpoints[k];
      const Scalar& hi = prof.breakpoints[k + 1];
      if (hi <= h.values.front() || lo >= h.values.back()) continue;
      auto taylor = [&](std::size_t i, int m) {
        if (h.values[i] <= lo) return Poly();
        return binomial(static_cast<unsigned>(d - 1), static_cast<unsigned>(m)) *
               Poly::shifted_power(h.values[i], static_cast<unsigned>(d - 1 - m));
      };
      prof.pieces[k] += weight * divided_difference<Poly>(h.values, taylor);
    }
  }
  return prof;
}

Value simplex_moment(const Simplex& s, const Vector& x, const WeightSpec& zeta) {
  const int d = static_cast<int>(x.size());
  if (s.dim() != d) return Value::exact(0);
  SimplexHeights h = simplex_heights(s, x);
  if (h.volume == 0) return Value::exact(0);
  if (h.values.front() == h.values.back()) {
    return h.volume * evaluate(zeta, h.values.front());
  }
  const auto components = lower(zeta);
  const Scalar scale = factorial(static_cast<unsigned>(d)) * h.volume;
  const bool exact = std::all_of(components.begin(), components.end(),
                                 [](const Component& c) { return c.exact(); });
  if (exact) {
    Scalar total = 0;
    for (const auto& c : components) {
      auto taylor = [&](std::size_t i, int m) { return exact_taylor(c, d, h.values[i], m); };
      total += c.coeff * divided_difference<Scalar>(h.values, taylor);
    }
    return Value::exact(scale * total);
  }

  // Float path: nodes closer than the merge tolerance become one confluent
  // group located at the group mean.
  std::vector<Real> nodes;
  for (const auto& v : h.values) nodes.push_back(to_real(v));
  Real max_abs = 0;
  for (const auto& v : nodes) max_abs = std::max(max_abs, Real(abs(v)));
  const Real tau = Real(kNodeMergeTolerance) * (max_abs > 0 ? max_abs : Real(1));
  bool merged = false;
  for (std::size_t i = 0; i < nodes.size();) {
    std::size_t j = i + 1;
    while (j < nodes.size() && nodes[j] - nodes[j - 1] < tau) ++j;
    if (j - i > 1) {
      bool all_equal = true;
      Real mean = 0;
      for (std::size_t r = i; r < j; ++r) {
        mean += nodes[r];
        all_equal = all_equal && nodes[r] == nodes[i];
      }
      mean /= static_cast<unsigned>(j - i);
      for (std::size_t r = i; r < j; ++r) nodes[r] = mean;
      merged = merged || !all_equal;
    }
    i = j;
  }
  Real total = 0;
  Real magnitude = 0;
  for (const auto& c : components) {
    auto taylor = [&](std::size_t i, int m) {
      Real v = real_taylor(c, d, nodes[i], m);
      magnitude = std::max(magnitude, Real(abs(v)));
      return v;
    };
    total += to_real(c.coeff) * divided_difference<Real>(nodes, taylor);
  }
  const Real result = to_real(scale) * total;
  // Rounding in the table grows like magnitude / gap^d.
  Real gap = nodes.back() - nodes.front();
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i] != nodes[i - 1]) gap = std::min(gap, Real(nodes[i] - nodes[i - 1]));
  }
  Real err = Real("1e-45") * to_real(scale) * magnitude * pow(Real(2) / gap, d);
  if (merged) err += tau * abs(result) * 10;
  return Value::approximate(static_cast<long double>(result), static_cast<long double>(err));
}

Value moment_transform(const Polytope& p, const Vector& x, const WeightSpec& zeta) {
  zeta.validate();
  if (static_cast<int>(x.size()) != p.ambient_dim()) throw Error("moment_transform: dimension mismatch");
  if (!p.is_full_dimensional()) return Value::exact(0);
  if (is_zero(x)) return volume(p) * evaluate(zeta, Scalar(0));
  Value total;
  for (const auto& s : triangulate(p)) total += simplex_moment(s, x, zeta);
  return total;
}

Value measure_transform(const Polytope& p, const Vector& x, const MeasureSpec& mu) {
  mu.validate();
  if (static_cast<int>(x.size()) != p.ambient_dim()) throw Error("measure_transform: dimension mismatch");
  if (!p.is_full_dimensional()) {
    Value zero;
    if (!mu.is_continuous()) zero.set_flagged();
    return zero;
  }
  Value total;
  if (mu.density) total += moment_transform(p, x, *mu.density);
  if (!mu.atoms.empty()) {
    if (is_zero(x)) throw Error("measure_transform: atoms need a nonzero direction");
    const SectionProfile prof = section_profile(p, x);
    for (const auto& [t, mass] : mu.atoms) {
      Value v = Value::exact(mass * prof.right_limit(t));
      if (!prof.continuous_at(t)) v.set_flagged();
      total += v;
    }
  }
  return total;
}

Scalar integrate_profile(const SectionProfile& profile, const WeightSpec& zeta) {
  if (!zeta.is_exact()) throw Error("integrate_profile: weight has no exact integral");
  Scalar total = 0;
  for (const auto& c : lower(zeta)) {
    for (std::size_t k = 0; k < profile.pieces.size(); ++k) {
      Scalar lo = profile.breakpoints[k];
      Scalar hi = profile.breakpoints[k + 1];
      Poly integrand;
      switch (c.kind) {
        case Component::Kind::Poly:
          integrand = profile.pieces[k] * Poly(c.poly);
          break;
        case Component::Kind::Trunc: {
          if (c.side > 0) lo = std::max(lo, Scalar(0));
          if (c.side < 0) hi = std::min(hi, Scalar(0));
          const unsigned q = static_cast<unsigned>(c.exponent.get_num().get_ui());
          // (side * t)^q
          std::vector<Scalar> mono(q + 1, Scalar(0));
          mono[q] = (c.side < 0 && q % 2 == 1) ? -1 : 1;
          integrand = profile.pieces[k] * Poly(mono);
          break;
        }
        case Component::Kind::Indicator:
          lo = std::max(lo, c.a);
          hi = std::min(hi, c.b);
          integrand = profile.pieces[k];
          break;
        default:
          throw Error("integrate_profile: inexact component");
      }
      if (lo < hi) total += c.coeff * integrand.integrate(lo, hi);
    }
  }
  return total;
}

QuadratureError::QuadratureError(double est, double err)
    : Error("quadrature: tolerance not reached (estimate " + format_double(est) + ", error " +
            format_double(err) + ")"),
      estimate(est),
      error(err) {}

Value quadrature_against_profile(const SectionProfile& profile, const WeightSpec& zeta,
                                 double tolerance) {
  zeta.validate();
  if (profile.pieces.empty()) return Value::approximate(0);
  std::vector<Scalar> cuts = profile.breakpoints;
  cuts.push_back(0);
  if (zeta.kind == WeightKind::Indicator) {
    cuts.push_back(zeta.reflect ? Scalar(-zeta.upper) : zeta.lower);
    cuts.push_back(zeta.reflect ? Scalar(-zeta.lower) : zeta.upper);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const bool singular_at_zero =
      zeta.kind == WeightKind::LogAbs ||
      ((zeta.kind == WeightKind::AbsPower || zeta.kind == WeightKind::SignedPower) &&
       !is_integer(zeta.exponent));

  double total = 0, total_err = 0;
  boost::math::quadrature::tanh_sinh<double> de;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Scalar& lo = cuts[i];
    const Scalar& hi = cuts[i + 1];
    if (lo < profile.breakpoints.front() || hi > profile.breakpoints.back()) continue;
    auto it = std::upper_bound(profile.breakpoints.begin(), profile.breakpoints.end(), lo);
    const Poly& piece = profile.pieces[static_cast<std::size_t>(it - profile.breakpoints.begin()) - 1];
    auto f = [&](double t) { return piece.evaluate(t) * evaluate_double(zeta, t); };
    const double a = to_double(lo), b = to_double(hi);
    double err = 0, value = 0;
    if (singular_at_zero && (lo == 0 || hi == 0)) {
      // Double-exponential rule: never samples the endpoint, and the
      // abscissae cluster at it. Since the singular endpoint is exactly 0,
      // nearby abscissae keep full relative accuracy.
      value = de.integrate(f, a, b, tolerance, &err);
    } else {
      value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tolerance,
                                                                            &err);
    }
    total += value;
    total_err += err * std::max(1.0, std::fabs(value));
  }
  if (total_err > 1e3 * tolerance * std::max(1.0, std::fabs(total))) {
    throw QuadratureError(total, total_err);
  }
  return Value::approximate(total, total_err);
}

}  // namespace valgeo
