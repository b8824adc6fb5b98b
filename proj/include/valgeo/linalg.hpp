#ifndef VALGEO_LINALG_HPP
#define VALGEO_LINALG_HPP

#include "valgeo/scalar.hpp"

#include <vector>

namespace valgeo {

/// Reduced row echelon form of a matrix. `pivots[i]` is the pivot column of
/// row i of `rows`; zero rows are dropped.
struct RowEchelon {
  Matrix rows;
  std::vector<int> pivots;
};

RowEchelon row_reduce(Matrix m, int columns);

int rank(const Matrix& m, int columns);

/// Basis of {v : m v = 0}.
std::vector<Vector> nullspace(const Matrix& m, int columns);

Scalar determinant(Matrix m);

Matrix identity_matrix(int n);
Matrix transpose(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
Vector apply(const Matrix& m, const Vector& v);

/// Solves the square system m x = b; throws when m is singular.
Vector solve(Matrix m, Vector b);

/// Invertible linear map with its determinant cached. Applying it to a
/// polytope maps every vertex v to M v; support functions then transform by
/// the transpose.
class LinearMap {
 public:
  explicit LinearMap(Matrix m);

  int dimension() const { return static_cast<int>(matrix_.size()); }
  const Matrix& matrix() const { return matrix_; }
  const Scalar& det() const { return det_; }

  Vector operator()(const Vector& v) const { return apply(matrix_, v); }
  Vector transpose_apply(const Vector& v) const;
  LinearMap compose(const LinearMap& inner) const;

 private:
  Matrix matrix_;
  Scalar det_;
};

}  // namespace valgeo

#endif  // VALGEO_LINALG_HPP
