// Shared fixtures and brute-force oracles for the unit tests.
#ifndef VALGEO_TEST_SUPPORT_HPP
#define VALGEO_TEST_SUPPORT_HPP

#include "valgeo/polytope.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace testing {

using namespace valgeo;

inline Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline Vector qvec(std::initializer_list<const char*> xs) {
  Vector v;
  for (const char* x : xs) v.push_back(parse_scalar(x));
  return v;
}

/// Rational in [-1, 1] with denominator dividing `den`.
inline Scalar random_rational(std::mt19937_64& rng, long den) {
  std::uniform_int_distribution<long> d(-den, den);
  return ratio(d(rng), den);
}

inline std::vector<Vector> random_points(std::mt19937_64& rng, int n, int count, long den) {
  std::vector<Vector> pts;
  for (int i = 0; i < count; ++i) {
    Vector v;
    for (int j = 0; j < n; ++j) v.push_back(random_rational(rng, den));
    pts.push_back(std::move(v));
  }
  return pts;
}

/// Full-dimensional random polytope (retries until the hull has dim n).
inline Polytope random_polytope(std::mt19937_64& rng, int n, int count, long den) {
  for (;;) {
    Polytope p = convex_hull(random_points(rng, n, count, den));
    if (p.is_full_dimensional()) return p;
  }
}

inline Vector random_direction(std::mt19937_64& rng, int n, long den = 3) {
  for (;;) {
    Vector x = random_points(rng, n, 1, den).front();
    if (!is_zero(x)) return x;
  }
}

/// Product of `count` elementary shears I + c E_ij with small rational c:
/// determinant exactly 1.
inline LinearMap random_shear_product(std::mt19937_64& rng, int n, int count) {
  Matrix m = identity_matrix(n);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<long> num(-3, 3);
  for (int k = 0; k < count; ++k) {
    int i = pick(rng), j = pick(rng);
    if (i == j) j = (i + 1) % n;
    Matrix e = identity_matrix(n);
    e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ratio(num(rng), 2);
    m = multiply(e, m);
  }
  return LinearMap(m);
}

/// Facet vertex sets by brute force: every n-subset of vertices that spans a
/// hyperplane with all vertices on one side. Only for full-dimensional P
/// with few vertices.
inline std::set<std::vector<int>> brute_force_facets(const Polytope& p) {
  const auto& vs = p.vertices();
  const int n = p.ambient_dim();
  const int m = static_cast<int>(vs.size());
  std::set<std::vector<int>> facets;
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::vector<bool> pick(static_cast<std::size_t>(m), false);
  std::fill(pick.begin(), pick.begin() + n, true);
  do {
    std::vector<int> sub;
    for (int i = 0; i < m; ++i) {
      if (pick[static_cast<std::size_t>(i)]) sub.push_back(i);
    }
    Matrix rows;
    for (std::size_t i = 1; i < sub.size(); ++i) {
      rows.push_back(vs[static_cast<std::size_t>(sub[i])] - vs[static_cast<std::size_t>(sub[0])]);
    }
    auto ns = nullspace(rows, n);
    if (ns.size() != 1) continue;
    Scalar b = dot(ns[0], vs[static_cast<std::size_t>(sub[0])]);
    bool le = true, ge = true;
    std::vector<int> on;
    for (int i = 0; i < m; ++i) {
      Scalar v = dot(ns[0], vs[static_cast<std::size_t>(i)]);
      if (v > b) le = false;
      if (v < b) ge = false;
      if (v == b) on.push_back(i);
    }
    if (le || ge) facets.insert(on);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return facets;
}

/// All face vertex sets as the intersection closure of the facets, plus P.
inline std::set<std::vector<int>> brute_force_faces(const Polytope& p) {
  std::set<std::vector<int>> faces = brute_force_facets(p);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> cur(faces.begin(), faces.end());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        std::vector<int> c;
        std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(), cur[j].end(),
                              std::back_inserter(c));
        if (!c.empty() && faces.insert(c).second) grew = true;
      }
    }
  }
  std::vector<int> all(p.vertices().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  faces.insert(all);
  return faces;
}

inline int affine_rank(const Polytope& p, const std::vector<int>& verts) {
  Matrix rows;
  const auto& vs = p.vertices();
  for (std::size_t i = 1; i < verts.size(); ++i) {
    rows.push_back(vs[static_cast<std::size_t>(verts[i])] - vs[static_cast<std::size_t>(verts[0])]);
  }
  return rank(rows, p.ambient_dim());
}

}  // namespace testing

#endif  // VALGEO_TEST_SUPPORT_HPP
