#include "valgeo/linalg.hpp"

#include <utility>

namespace valgeo {

RowEchelon row_reduce(Matrix m, int columns) {
  RowEchelon out;
  std::size_t row = 0;
  for (int col = 0; col < columns && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    Scalar inv = 1 / m[row][col];
    for (int c = col; c < columns; ++c) m[row][c] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Scalar f = m[r][col];
      for (int c = col; c < columns; ++c) m[r][c] -= f * m[row][c];
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

int rank(const Matrix& m, int columns) {
  return static_cast<int>(row_reduce(m, columns).pivots.size());
}

std::vector<Vector> nullspace(const Matrix& m, int columns) {
  RowEchelon e = row_reduce(m, columns);
  std::vector<bool> is_pivot(static_cast<std::size_t>(columns), false);
  for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Vector> basis;
  for (int free = 0; free < columns; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Vector v = zero_vector(columns);
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
      v[static_cast<std::size_t>(e.pivots[r])] = -e.rows[r][static_cast<std::size_t>(free)];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Scalar determinant(Matrix m) {
  const std::size_t n = m.size();
  Scalar det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Scalar f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

Matrix identity_matrix(int n) {
  Matrix m(static_cast<std::size_t>(n), zero_vector(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return m;
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m[0].size(), Vector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.empty()) return {};
  if (a[0].size() != b.size()) throw Error("matrix multiply: dimension mismatch");
  Matrix r(a.size(), Vector(b.empty() ? 0 : b[0].size(), Scalar(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] += a[i][k] * b[k][j];
    }
  }
  return r;
}

Vector apply(const Matrix& m, const Vector& v) {
  Vector r;
  r.reserve(m.size());
  for (const auto& row : m) r.push_back(dot(row, v));
  return r;
}

Vector solve(Matrix m, Vector b) {
  const std::size_t n = m.size();
  if (b.size() != n) throw Error("solve: dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) m[i].push_back(b[i]);
  RowEchelon e = row_reduce(std::move(m), static_cast<int>(n));
  if (e.pivots.size() != n) throw Error("solve: singular matrix");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = e.rows[i][n];
  return x;
}

LinearMap::LinearMap(Matrix m) : matrix_(std::move(m)) {
  for (const auto& row : matrix_) {
    if (row.size() != matrix_.size()) throw Error("LinearMap: matrix must be square");
  }
  det_ = determinant(matrix_);
  if (det_ == 0) throw Error("LinearMap: matrix is singular");
}

Vector LinearMap::transpose_apply(const Vector& v) const {
  const std::size_t n = matrix_.size();
  if (v.size() != n) throw Error("LinearMap: dimension mismatch");
  Vector r = zero_vector(static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r[j] += matrix_[i][j] * v[i];
  }
  return r;
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
  return LinearMap(multiply(matrix_, inner.matrix_));
}

}  // namespace valgeo
