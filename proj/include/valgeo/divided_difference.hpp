#ifndef VALGEO_DIVIDED_DIFFERENCE_HPP
#define VALGEO_DIVIDED_DIFFERENCE_HPP

#include <cstddef>
#include <vector>

namespace valgeo {

/// Divided difference [z_0, ..., z_k] F in Newton form.
///
/// `nodes` must be sorted so that equal nodes are adjacent. `taylor(i, m)`
/// returns F^(m)(z_i) / m!; it is only called with m smaller than the
/// multiplicity of z_i, which makes repeated nodes the confluent (Hermite)
/// limit of distinct ones. V is the value type (rational, polynomial in a
/// parameter, or float); it needs subtraction and division by a node
/// difference.
template <class V, class N, class Taylor>
V divided_difference(const std::vector<N>& nodes, Taylor&& taylor) {
  const std::size_t k = nodes.size();
  std::vector<V> col;
  col.reserve(k);
  for (std::size_t i = 0; i < k; ++i) col.push_back(taylor(i, 0));
  for (std::size_t j = 1; j < k; ++j) {
    for (std::size_t i = 0; i + j < k; ++i) {
      if (nodes[i] == nodes[i + j]) {
        col[i] = taylor(i, static_cast<int>(j));
      } else {
        col[i] = (col[i + 1] - col[i]) / (nodes[i + j] - nodes[i]);
      }
    }
  }
  return col.front();
}

}  // namespace valgeo

#endif  // VALGEO_DIVIDED_DIFFERENCE_HPP
