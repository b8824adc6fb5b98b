#include "valgeo/grid.hpp"

#include "valgeo/io.hpp"

#include <cmath>
#include <sstream>

namespace valgeo {

namespace {

constexpr long kGridDenominator = 1000;

Scalar round_to_grid(double v) { return ratio(std::lround(v * kGridDenominator), kGridDenominator); }

}  // namespace

std::vector<Vector> fibonacci_directions(int n, int count) {
  if (n < 1 || n > kMaxDimension) throw Error("fibonacci grid: dimension must be between 1 and 6");
  if (count < 1) throw Error("fibonacci grid: count must be positive");
  const double pi = std::acos(-1.0);
  const double golden = (1 + std::sqrt(5.0)) / 2;
  std::vector<Vector> out;
  for (int k = 0; k < count; ++k) {
    std::vector<double> u(static_cast<std::size_t>(n), 0.0);
    if (n == 1) {
      u[0] = k % 2 == 0 ? 1 : -1;
    } else if (n == 2) {
      const double a = 2 * pi * k / count;
      u = {std::cos(a), std::sin(a)};
    } else {
      // Height uniform in [-1, 1], remaining coordinates on a circle whose
      // angles advance by irrational multiples of the golden ratio.
      const double z = 1 - (2.0 * k + 1) / count;
      double r = std::sqrt(std::max(0.0, 1 - z * z));
      u[static_cast<std::size_t>(n - 1)] = z;
      for (int j = 0; j < n - 2; ++j) {
        const double a = 2 * pi * std::fmod((k + 0.5) * std::pow(golden, j + 1), 1.0);
        const double c = std::cos(a);
        u[static_cast<std::size_t>(j)] = r * c;
        r *= std::sin(a);
      }
      u[static_cast<std::size_t>(n - 2)] = r;
    }
    Vector v;
    for (double c : u) v.push_back(round_to_grid(c));
    if (is_zero(v)) v = unit_vector(n, n - 1);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> DirectionGrid::directions(int n) const {
  std::vector<Vector> base;
  switch (kind) {
    case GridKind::SphereFibonacci:
      base = fibonacci_directions(n, count);
      break;
    case GridKind::AxisRays:
      for (int i = 0; i < n; ++i) {
        base.push_back(unit_vector(n, i));
        base.push_back(Scalar(-1) * unit_vector(n, i));
      }
      break;
    case GridKind::Explicit:
      for (const auto& v : explicit_directions) {
        if (static_cast<int>(v.size()) != n) throw Error("grid: direction of wrong dimension");
        if (is_zero(v)) throw Error("grid: directions must be nonzero");
        base.push_back(v);
      }
      break;
  }
  std::vector<Vector> out;
  for (const auto& v : base) {
    for (const auto& r : radii) out.push_back(r * v);
  }
  return out;
}

DirectionGrid parse_grid(const std::string& spec) {
  DirectionGrid g;
  if (spec == "axes") {
    g.kind = GridKind::AxisRays;
  } else if (spec.rfind("fibonacci:", 0) == 0) {
    g.kind = GridKind::SphereFibonacci;
    try {
      std::size_t used = 0;
      g.count = std::stoi(spec.substr(10), &used);
      if (used != spec.size() - 10) throw Error("");
    } catch (const std::exception&) {
      throw Error("grid: expected fibonacci:<count>, got \"" + spec + "\"");
    }
    if (g.count < 1) throw Error("grid: fibonacci count must be positive");
  } else {
    g.kind = GridKind::Explicit;
    const Json j = load_json(spec);
    if (!j.is_array() || j.empty()) throw Error("grid: expected a nonempty list of directions");
    for (const auto& d : j) g.explicit_directions.push_back(vector_from_json(d));
  }
  return g;
}

std::vector<Scalar> parse_radii(const std::string& spec) {
  std::vector<Scalar> out;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    const Scalar r = parse_scalar(item);
    if (r <= 0) throw Error("radii must be positive");
    out.push_back(r);
  }
  if (out.empty()) throw Error("radii: empty list");
  return out;
}

}  // namespace valgeo
