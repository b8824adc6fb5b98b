#include "valgeo/polytope.hpp"
#include "polytope_data.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace valgeo {

namespace {

struct SimplicialFacet {
  std::vector<int> points;  // indices into the working point list, sorted
  Vector normal;
  Scalar offset;
};

// Outer normal of the hyperplane through `pts` inside the affine hull,
// oriented away from `interior`, rescaled to a primitive integer vector.
std::pair<Vector, Scalar> facet_plane(const std::vector<Vector>& points,
                                      const std::vector<int>& pts,
                                      const std::vector<Hyperplane>& equations,
                                      const Vector& interior, int n) {
  Matrix rows;
  const Vector& base = points[static_cast<std::size_t>(pts[0])];
  for (std::size_t i = 1; i < pts.size(); ++i) {
    rows.push_back(points[static_cast<std::size_t>(pts[i])] - base);
  }
  for (const auto& e : equations) rows.push_back(e.normal);
  std::vector<Vector> ns = nullspace(rows, n);
  if (ns.size() != 1) throw Error("convex_hull: degenerate facet");
  Vector a = primitive_direction(ns[0]);
  Scalar b = dot(a, base);
  if (dot(a, interior) > b) {
    a = -a;
    b = -b;
  }
  return {std::move(a), std::move(b)};
}

std::vector<SimplicialFacet> beneath_beyond(const std::vector<Vector>& points, int k, int n,
                                            const std::vector<Hyperplane>& equations) {
  // Initial simplex: greedily grow an affinely independent set.
  std::vector<int> initial{0};
  Matrix diffs;
  for (int i = 1; i < static_cast<int>(points.size()) && static_cast<int>(initial.size()) <= k; ++i) {
    Matrix trial = diffs;
    trial.push_back(points[static_cast<std::size_t>(i)] - points[0]);
    if (rank(trial, n) == static_cast<int>(trial.size())) {
      diffs = std::move(trial);
      initial.push_back(i);
    }
  }
  Vector interior = zero_vector(n);
  for (int i : initial) interior = interior + points[static_cast<std::size_t>(i)];
  interior = ratio(1, static_cast<long>(initial.size())) * interior;

  std::vector<SimplicialFacet> facets;
  auto make_facet = [&](std::vector<int> pts) {
    std::sort(pts.begin(), pts.end());
    auto [a, b] = facet_plane(points, pts, equations, interior, n);
    facets.push_back({std::move(pts), std::move(a), std::move(b)});
  };
  for (std::size_t skip = 0; skip < initial.size(); ++skip) {
    std::vector<int> pts;
    for (std::size_t i = 0; i < initial.size(); ++i) {
      if (i != skip) pts.push_back(initial[i]);
    }
    make_facet(std::move(pts));
  }

  std::set<int> used(initial.begin(), initial.end());
  for (int p = 0; p < static_cast<int>(points.size()); ++p) {
    if (used.count(p)) continue;
    const Vector& pt = points[static_cast<std::size_t>(p)];
    std::vector<bool> visible(facets.size(), false);
    bool any = false;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (dot(facets[f].normal, pt) > facets[f].offset) {
        visible[f] = true;
        any = true;
      }
    }
    if (!any) continue;

    std::map<std::vector<int>, std::vector<std::size_t>> ridge_owners;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      const auto& v = facets[f].points;
      for (std::size_t drop = 0; drop < v.size(); ++drop) {
        std::vector<int> ridge;
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i != drop) ridge.push_back(v[i]);
        }
        ridge_owners[ridge].push_back(f);
      }
    }
    std::vector<std::vector<int>> horizon;
    for (auto& [ridge, owners] : ridge_owners) {
      if (owners.size() != 2) throw Error("convex_hull: boundary complex is not closed");
      if (visible[owners[0]] != visible[owners[1]]) horizon.push_back(ridge);
    }
    std::vector<SimplicialFacet> kept;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (!visible[f]) kept.push_back(std::move(facets[f]));
    }
    facets = std::move(kept);
    for (auto& ridge : horizon) {
      ridge.push_back(p);
      make_facet(std::move(ridge));
    }
    used.insert(p);
  }
  return facets;
}

bool is_subset(const std::vector<int>& small, const std::vector<int>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

FaceLattice build_lattice(const Polytope::Data& d) {
  FaceLattice lattice;
  if (d.dim < 0) return lattice;

  struct Proto {
    std::vector<int> verts;
    int dim;
    std::set<std::vector<int>> children;
  };
  std::map<std::vector<int>, Proto> protos;
  std::vector<int> all(d.vertices.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  protos[all] = {all, d.dim, {}};

  std::vector<std::vector<int>> level;
  if (d.dim >= 1) {
    for (const auto& f : d.facets) {
      protos[all].children.insert(f.vertices);
      protos.emplace(f.vertices, Proto{f.vertices, d.dim - 1, {}});
      level.push_back(f.vertices);
    }
  }
  for (int j = d.dim - 1; j >= 1; --j) {
    std::vector<std::vector<int>> next;
    for (const auto& face : level) {
      std::set<std::vector<int>> cands;
      for (const auto& g : d.facets) {
        std::vector<int> c = intersect(face, g.vertices);
        if (!c.empty() && c.size() < face.size()) cands.insert(std::move(c));
      }
      for (const auto& c : cands) {
        bool maximal = true;
        for (const auto& other : cands) {
          if (other.size() > c.size() && is_subset(c, other)) {
            maximal = false;
            break;
          }
        }
        if (!maximal) continue;
        protos.at(face).children.insert(c);
        protos.emplace(c, Proto{c, j - 1, {}});
        next.push_back(c);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }

  std::vector<const Proto*> ordered;
  for (const auto& [verts, proto] : protos) ordered.push_back(&proto);
  std::stable_sort(ordered.begin(), ordered.end(), [](const Proto* a, const Proto* b) {
    if (a->dim != b->dim) return a->dim < b->dim;
    return a->verts < b->verts;
  });
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < ordered.size(); ++i) index[ordered[i]->verts] = static_cast<int>(i);

  lattice.by_dim.assign(static_cast<std::size_t>(d.dim + 1), {});
  lattice.faces.resize(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const Proto& p = *ordered[i];
    Face& f = lattice.faces[i];
    f.vertex_indices = p.verts;
    f.dim = p.dim;
    for (const auto& c : p.children) f.children.push_back(index.at(c));
    lattice.by_dim[static_cast<std::size_t>(p.dim)].push_back(static_cast<int>(i));
    if (p.dim < d.dim) {
      for (const auto& facet : d.facets) {
        if (is_subset(p.verts, facet.vertices)) f.normal_cone_rays.push_back(facet.normal);
      }
    }
    for (const auto& e : d.equations) f.lineality.push_back(e.normal);

    const Vector& v = d.vertices[static_cast<std::size_t>(p.verts.front())];
    bool pos = false, neg = false, mixed = false;
    for (const auto& w : f.lineality) {
      if (dot(w, v) != 0) mixed = true;
    }
    for (const auto& u : f.normal_cone_rays) {
      int s = sgn(dot(u, v));
      pos = pos || s > 0;
      neg = neg || s < 0;
    }
    if (mixed || (pos && neg)) {
      f.height_sign = HeightSign::Mixed;
    } else if (pos) {
      f.height_sign = HeightSign::NonNegative;
    } else if (neg) {
      f.height_sign = HeightSign::NonPositive;
    } else {
      f.height_sign = HeightSign::Zero;
    }
  }
  for (std::size_t i = 0; i < lattice.faces.size(); ++i) {
    for (int c : lattice.faces[i].children) {
      lattice.faces[static_cast<std::size_t>(c)].parents.push_back(static_cast<int>(i));
    }
  }
  return lattice;
}

}  // namespace

Hyperplane::Hyperplane(Vector n, Scalar o) : normal(std::move(n)), offset(std::move(o)) {
  if (is_zero(normal)) throw Error("hyperplane normal must be nonzero");
}

std::vector<long> FaceLattice::f_vector() const {
  std::vector<long> f;
  for (const auto& level : by_dim) f.push_back(static_cast<long>(level.size()));
  return f;
}

Polytope Polytope::empty(int n) {
  auto d = std::make_shared<Polytope::Data>();
  d->n = n;
  d->dim = -1;
  return Polytope(std::move(d));
}

int Polytope::ambient_dim() const { return data_->n; }
int Polytope::dim() const { return data_->dim; }
const std::vector<Vector>& Polytope::vertices() const { return data_->vertices; }
const std::vector<Facet>& Polytope::facets() const { return data_->facets; }
const std::vector<Hyperplane>& Polytope::equations() const { return data_->equations; }
const Matrix& Polytope::hull_basis() const { return data_->basis; }
const std::vector<int>& Polytope::hull_pivots() const { return data_->pivots; }
const FaceLattice& Polytope::lattice() const { return data_->lattice; }

bool Polytope::operator==(const Polytope& other) const {
  return ambient_dim() == other.ambient_dim() && vertices() == other.vertices();
}

Polytope convex_hull(const std::vector<Vector>& input, const HullOptions& options) {
  if (input.empty()) throw Error("convex_hull: empty point list");
  const int n = static_cast<int>(input.front().size());
  if (n < 1 || n > kMaxDimension) throw Error("convex_hull: ambient dimension must be in 1..6");
  for (const auto& p : input) {
    if (static_cast<int>(p.size()) != n) throw Error("convex_hull: dimension mismatch among points");
  }
  std::vector<Vector> points = input;
  for (auto& p : points) {
    for (auto& x : p) x.canonicalize();
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  auto d = std::make_shared<Polytope::Data>();
  d->n = n;
  Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  RowEchelon hull = row_reduce(diffs, n);
  d->dim = static_cast<int>(hull.pivots.size());
  d->basis = hull.rows;
  d->pivots = hull.pivots;
  for (auto& w : nullspace(d->basis, n)) {
    Vector pw = primitive_direction(w);
    Scalar off = dot(pw, points[0]);
    d->equations.emplace_back(std::move(pw), std::move(off));
  }

  std::vector<Vector> verts;
  std::vector<std::pair<Vector, Scalar>> planes;
  if (d->dim == 0) {
    verts.push_back(points[0]);
  } else if (d->dim == 1) {
    const int piv = d->pivots[0];
    auto by_param = [&](const Vector& a, const Vector& b) {
      return a[static_cast<std::size_t>(piv)] < b[static_cast<std::size_t>(piv)];
    };
    auto [lo, hi] = std::minmax_element(points.begin(), points.end(), by_param);
    verts = {*lo, *hi};
    std::sort(verts.begin(), verts.end());
    Vector u = primitive_direction(*hi - *lo);
    planes.emplace_back(u, dot(u, *hi));
    planes.emplace_back(-u, -dot(u, *lo));
  } else {
    auto simplicial = beneath_beyond(points, d->dim, n, d->equations);
    std::map<std::pair<Vector, Scalar>, std::set<int>> grouped;
    for (auto& f : simplicial) {
      auto& s = grouped[{f.normal, f.offset}];
      s.insert(f.points.begin(), f.points.end());
    }
    std::set<int> candidates;
    for (auto& [plane, pts] : grouped) candidates.insert(pts.begin(), pts.end());
    for (int c : candidates) {
      const Vector& pt = points[static_cast<std::size_t>(c)];
      Matrix active;
      for (auto& [plane, pts] : grouped) {
        if (dot(plane.first, pt) == plane.second) active.push_back(plane.first);
      }
      if (rank(active, n) == d->dim) verts.push_back(pt);
    }
    std::sort(verts.begin(), verts.end());
    for (auto& [plane, pts] : grouped) planes.push_back(plane);
  }

  if (static_cast<int>(verts.size()) > options.max_vertices) {
    throw Error("convex_hull: vertex count exceeds configured cap");
  }
  d->vertices = std::move(verts);
  for (auto& [a, b] : planes) {
    Facet f{a, b, {}};
    for (std::size_t i = 0; i < d->vertices.size(); ++i) {
      if (dot(a, d->vertices[i]) == b) f.vertices.push_back(static_cast<int>(i));
    }
    d->facets.push_back(std::move(f));
  }
  std::sort(d->facets.begin(), d->facets.end(),
            [](const Facet& a, const Facet& b) { return a.vertices < b.vertices; });
  d->lattice = build_lattice(*d);
  return Polytope(std::move(d));
}

const FaceLattice& face_lattice(const Polytope& p) { return p.lattice(); }

}  // namespace valgeo
