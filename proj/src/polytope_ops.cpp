#include "valgeo/polytope.hpp"
#include "polytope_data.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace valgeo {

FaceClasses classify_faces(const Polytope& p) {
  FaceClasses out;
  const auto& faces = p.lattice().faces;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (faces[i].in_minus_class()) out.minus.push_back(static_cast<int>(i));
    if (faces[i].in_plus_class()) out.plus.push_back(static_cast<int>(i));
  }
  return out;
}

Scalar support(const Polytope& p, const Vector& x) {
  if (p.is_empty()) throw Error("support: empty polytope");
  const auto& vs = p.vertices();
  Scalar best = dot(x, vs.front());
  for (std::size_t i = 1; i < vs.size(); ++i) {
    Scalar h = dot(x, vs[i]);
    if (h > best) best = h;
  }
  return best;
}

Scalar face_support(const Polytope& p, const Face& f, const Vector& x) {
  const auto& vs = p.vertices();
  Scalar best = dot(x, vs[static_cast<std::size_t>(f.vertex_indices.front())]);
  for (std::size_t i = 1; i < f.vertex_indices.size(); ++i) {
    Scalar h = dot(x, vs[static_cast<std::size_t>(f.vertex_indices[i])]);
    if (h > best) best = h;
  }
  return best;
}

Membership point_membership(const Vector& x, const Polytope& p) {
  if (p.is_empty()) return Membership::Outside;
  for (const auto& e : p.equations()) {
    if (dot(e.normal, x) != e.offset) return Membership::Outside;
  }
  bool boundary = false;
  for (const auto& f : p.facets()) {
    Scalar v = dot(f.normal, x);
    if (v > f.offset) return Membership::Outside;
    if (v == f.offset) boundary = true;
  }
  return boundary ? Membership::Boundary : Membership::RelativeInterior;
}

std::optional<Scalar> gauge(const Polytope& p, const Vector& x) {
  if (point_membership(zero_vector(p.ambient_dim()), p) == Membership::Outside) {
    throw Error("gauge: origin is not contained in P");
  }
  for (const auto& e : p.equations()) {
    if (dot(e.normal, x) != 0) return std::nullopt;
  }
  Scalar lambda = 0;
  for (const auto& f : p.facets()) {
    Scalar ax = dot(f.normal, x);
    if (f.offset == 0) {
      if (ax > 0) return std::nullopt;
    } else {
      Scalar r = ax / f.offset;
      if (r > lambda) lambda = r;
    }
  }
  return lambda;
}

int euler_characteristic(const Polytope& p) { return p.is_empty() ? 0 : 1; }

CutPieces cut(const Polytope& p, const Hyperplane& h) {
  const int n = p.ambient_dim();
  if (static_cast<int>(h.normal.size()) != n) throw Error("cut: dimension mismatch");
  if (p.is_empty()) return {Polytope::empty(n), Polytope::empty(n), Polytope::empty(n)};
  const auto& vs = p.vertices();
  std::vector<Scalar> side(vs.size());
  std::vector<Vector> below, above, on;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    side[i] = h.evaluate(vs[i]);
    if (side[i] <= 0) below.push_back(vs[i]);
    if (side[i] >= 0) above.push_back(vs[i]);
    if (side[i] == 0) on.push_back(vs[i]);
  }
  const auto& lattice = p.lattice();
  if (p.dim() >= 1) {
    for (int e : lattice.by_dim[1]) {
      const auto& ends = lattice.faces[static_cast<std::size_t>(e)].vertex_indices;
      const auto a = static_cast<std::size_t>(ends[0]);
      const auto b = static_cast<std::size_t>(ends[1]);
      if (sgn(side[a]) * sgn(side[b]) >= 0) continue;
      Scalar t = side[a] / (side[a] - side[b]);
      Vector y = vs[a] + t * (vs[b] - vs[a]);
      below.push_back(y);
      above.push_back(y);
      on.push_back(std::move(y));
    }
  }
  return {convex_hull_or_empty(below, n), convex_hull_or_empty(above, n),
          convex_hull_or_empty(on, n)};
}

namespace {

Polytope map_vertices(const Polytope& p, const auto& f) {
  if (p.is_empty()) return p;
  std::vector<Vector> out;
  out.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) out.push_back(f(v));
  return convex_hull(out);
}

}  // namespace

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw Error("minkowski_sum: dimension mismatch");
  if (p.is_empty() || q.is_empty()) return Polytope::empty(p.ambient_dim());
  std::vector<Vector> pts;
  for (const auto& a : p.vertices()) {
    for (const auto& b : q.vertices()) pts.push_back(a + b);
  }
  return convex_hull(pts);
}

Polytope reflect(const Polytope& p) {
  return map_vertices(p, [](const Vector& v) { return -v; });
}

Polytope cone_hull(const Polytope& p) {
  if (p.is_empty()) return p;
  std::vector<Vector> pts = p.vertices();
  pts.push_back(zero_vector(p.ambient_dim()));
  return convex_hull(pts);
}

Polytope scale(const Polytope& p, const Scalar& alpha) {
  if (alpha <= 0) throw Error("scale: factor must be positive");
  return map_vertices(p, [&](const Vector& v) { return alpha * v; });
}

Polytope translate(const Polytope& p, const Vector& t) {
  return map_vertices(p, [&](const Vector& v) { return v + t; });
}

Polytope apply_linear(const Polytope& p, const LinearMap& m) {
  if (m.dimension() != p.ambient_dim()) throw Error("apply_linear: dimension mismatch");
  return map_vertices(p, [&](const Vector& v) { return m(v); });
}

Scalar simplex_volume(const Simplex& s) {
  if (s.vertices.empty()) return 0;
  const int n = static_cast<int>(s.vertices.front().size());
  if (s.dim() != n) return 0;
  Matrix m;
  for (std::size_t i = 1; i < s.vertices.size(); ++i) m.push_back(s.vertices[i] - s.vertices[0]);
  return abs(determinant(std::move(m))) / factorial(static_cast<unsigned>(n));
}

namespace {

std::vector<Simplex> pulling_triangulation(const Polytope& p) {
  if (p.is_empty()) return {};
  const auto& lattice = p.lattice();
  const auto& vs = p.vertices();
  // Each face is pulled from its smallest vertex index, which is its
  // lexicographically smallest vertex because vertices are sorted.
  std::map<int, std::vector<std::vector<int>>> memo;
  auto rec = [&](auto&& self, int face) -> const std::vector<std::vector<int>>& {
    if (auto it = memo.find(face); it != memo.end()) return it->second;
    const Face& f = lattice.faces[static_cast<std::size_t>(face)];
    std::vector<std::vector<int>> out;
    if (f.dim == 0) {
      out.push_back({f.vertex_indices.front()});
    } else {
      const int apex = f.vertex_indices.front();
      for (int child : f.children) {
        const auto& cv = lattice.faces[static_cast<std::size_t>(child)].vertex_indices;
        if (std::binary_search(cv.begin(), cv.end(), apex)) continue;
        for (const auto& s : self(self, child)) {
          std::vector<int> cell{apex};
          cell.insert(cell.end(), s.begin(), s.end());
          out.push_back(std::move(cell));
        }
      }
    }
    return memo.emplace(face, std::move(out)).first->second;
  };
  std::vector<Simplex> result;
  for (const auto& cell : rec(rec, lattice.top())) {
    Simplex s;
    for (int i : cell) s.vertices.push_back(vs[static_cast<std::size_t>(i)]);
    result.push_back(std::move(s));
  }
  return result;
}

}  // namespace

const std::vector<Simplex>& triangulate(const Polytope& p) {
  const Polytope::Data& d = *p.data_;
  std::call_once(d.triangulation_once, [&] { d.triangulation = pulling_triangulation(p); });
  return d.triangulation;
}

Scalar volume(const Polytope& p) {
  if (!p.is_full_dimensional()) return 0;
  Scalar total = 0;
  for (const auto& s : triangulate(p)) total += simplex_volume(s);
  return total;
}

double RelativeVolume::value() const {
  return to_double(coefficient) * std::sqrt(to_double(gram));
}

RelativeVolume relative_volume(const Polytope& p) {
  if (p.is_empty()) return {0, 1};
  const int k = p.dim();
  if (k == 0) return {1, 1};
  const Matrix& basis = p.hull_basis();
  const auto& piv = p.hull_pivots();
  Matrix gram(static_cast<std::size_t>(k), zero_vector(k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          dot(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
    }
  }
  Scalar coeff = 0;
  for (const auto& s : triangulate(p)) {
    // Coordinates in the row-echelon basis are read off at the pivot columns.
    Matrix local;
    for (std::size_t i = 1; i < s.vertices.size(); ++i) {
      Vector diff = s.vertices[i] - s.vertices[0];
      Vector c;
      for (int col : piv) c.push_back(diff[static_cast<std::size_t>(col)]);
      local.push_back(std::move(c));
    }
    coeff += abs(determinant(std::move(local)));
  }
  return {coeff / factorial(static_cast<unsigned>(k)), determinant(std::move(gram))};
}

Polytope standard_simplex(int n, int d) {
  if (d < 0 || d > n) throw Error("standard_simplex: need 0 <= d <= n");
  std::vector<Vector> pts{zero_vector(n)};
  for (int i = 0; i < d; ++i) pts.push_back(unit_vector(n, i));
  return convex_hull(pts);
}

Polytope box(const Vector& lower, const Vector& upper) {
  const std::size_t n = lower.size();
  if (upper.size() != n) throw Error("box: dimension mismatch");
  std::vector<Vector> pts;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1u ? upper[i] : lower[i];
    pts.push_back(std::move(v));
  }
  return convex_hull(pts);
}

}  // namespace valgeo
