#ifndef VALGEO_POLYTOPE_HPP
#define VALGEO_POLYTOPE_HPP

#include "valgeo/linalg.hpp"
#include "valgeo/scalar.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace valgeo {

/// {y : normal . y = offset}; normal is nonzero.
struct Hyperplane {
  Vector normal;
  Scalar offset;

  Hyperplane(Vector normal, Scalar offset);
  Scalar evaluate(const Vector& y) const { return dot(normal, y) - offset; }
};

/// Facet inequality normal . y <= offset. For a lower-dimensional polytope
/// the normal lies in the linear span of its affine hull, so the inequality
/// cuts the hull, not the ambient space.
struct Facet {
  Vector normal;
  Scalar offset;
  std::vector<int> vertices;
};

/// How the support values u . v_F behave over the normal cone N(P,F).
enum class HeightSign { NonPositive, NonNegative, Mixed, Zero };

struct Face {
  std::vector<int> vertex_indices;  // sorted indices into Polytope::vertices()
  int dim = 0;
  /// Outer normals of the facets containing the face. Together with the
  /// lineality directions (both signs) they generate N(P,F).
  std::vector<Vector> normal_cone_rays;
  /// Orthogonal complement of the affine hull of P; empty when dim P = n.
  std::vector<Vector> lineality;
  std::vector<int> children;  // faces of dimension dim-1 inside this one
  std::vector<int> parents;   // faces of dimension dim+1 containing this one
  HeightSign height_sign = HeightSign::Zero;

  bool in_minus_class() const {
    return height_sign == HeightSign::NonPositive || height_sign == HeightSign::Zero;
  }
  bool in_plus_class() const {
    return height_sign == HeightSign::NonNegative || height_sign == HeightSign::Zero;
  }
};

struct FaceLattice {
  std::vector<Face> faces;               // ordered by dimension, P itself last
  std::vector<std::vector<int>> by_dim;  // by_dim[j] = indices of j-faces

  int top() const { return static_cast<int>(faces.size()) - 1; }
  /// Face counts (f_0, ..., f_dim), including P itself as the last entry.
  std::vector<long> f_vector() const;
};

struct Simplex {
  std::vector<Vector> vertices;
  int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

struct HullOptions {
  int max_vertices = 64;
};

/// Convex polytope given by its vertices. Construction computes the
/// irredundant vertex list, the facet description inside the affine hull,
/// and the full face lattice; the object is immutable afterwards and can be
/// shared freely between threads.
class Polytope {
 public:
  /// The empty set in R^n.
  static Polytope empty(int n);

  int ambient_dim() const;
  /// -1 for the empty set.
  int dim() const;
  bool is_empty() const { return dim() < 0; }
  bool is_full_dimensional() const { return dim() == ambient_dim(); }

  /// Vertices in lexicographic order.
  const std::vector<Vector>& vertices() const;
  const std::vector<Facet>& facets() const;
  /// Equations of the affine hull (n - dim of them).
  const std::vector<Hyperplane>& equations() const;
  /// Reduced-row-echelon basis of the direction space of the affine hull.
  const Matrix& hull_basis() const;
  const std::vector<int>& hull_pivots() const;
  const FaceLattice& lattice() const;

  bool operator==(const Polytope& other) const;

  struct Data;

 private:
  explicit Polytope(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  friend Polytope convex_hull(const std::vector<Vector>&, const HullOptions&);
  friend const std::vector<Simplex>& triangulate(const Polytope&);

  std::shared_ptr<const Data> data_;
};

/// Convex hull of a nonempty point list of common dimension n <= 6.
Polytope convex_hull(const std::vector<Vector>& points, const HullOptions& options = {});

inline Polytope convex_hull_or_empty(const std::vector<Vector>& points, int n) {
  return points.empty() ? Polytope::empty(n) : convex_hull(points);
}

const FaceLattice& face_lattice(const Polytope& p);

/// Faces of F^-(P) and F^+(P). A face whose support values all vanish on its
/// normal cone belongs to both lists.
struct FaceClasses {
  std::vector<int> minus;
  std::vector<int> plus;
};
FaceClasses classify_faces(const Polytope& p);

Scalar support(const Polytope& p, const Vector& x);
/// Support value of a single face: max over the face's vertices.
Scalar face_support(const Polytope& p, const Face& f, const Vector& x);

/// min{lambda > 0 : x in lambda P}; std::nullopt stands for +infinity.
std::optional<Scalar> gauge(const Polytope& p, const Vector& x);

enum class Membership { Outside, Boundary, RelativeInterior };
Membership point_membership(const Vector& x, const Polytope& p);

int euler_characteristic(const Polytope& p);

struct CutPieces {
  Polytope below;  // P intersected with {normal . y <= offset}
  Polytope above;  // P intersected with {normal . y >= offset}
  Polytope on;     // P intersected with the hyperplane
};
CutPieces cut(const Polytope& p, const Hyperplane& h);

Polytope minkowski_sum(const Polytope& p, const Polytope& q);
Polytope reflect(const Polytope& p);
/// [P, o]: convex hull of P and the origin. The empty set stays empty.
Polytope cone_hull(const Polytope& p);
Polytope scale(const Polytope& p, const Scalar& alpha);
Polytope translate(const Polytope& p, const Vector& v);
Polytope apply_linear(const Polytope& p, const LinearMap& m);

/// n-dimensional Lebesgue measure: zero unless P is full-dimensional.
Scalar volume(const Polytope& p);

/// dim P-dimensional measure of P inside its affine hull, represented as
/// coefficient * sqrt(gram). For full-dimensional P, gram is 1.
struct RelativeVolume {
  Scalar coefficient;
  Scalar gram;
  double value() const;
};
RelativeVolume relative_volume(const Polytope& p);

/// |det(v_1 - v_0, ..., v_n - v_0)| / n! for an n-simplex in R^n.
Scalar simplex_volume(const Simplex& s);

/// Pulling triangulation from the lexicographically smallest vertex of every
/// face. Each simplex has dim P + 1 affinely independent vertices. Computed
/// once per polytope and cached.
const std::vector<Simplex>& triangulate(const Polytope& p);

/// Standard simplex [o, e_1, ..., e_d] in R^n.
Polytope standard_simplex(int n, int d);
/// Axis-parallel box with the given opposite corners.
Polytope box(const Vector& lower, const Vector& upper);

}  // namespace valgeo

#endif  // VALGEO_POLYTOPE_HPP
