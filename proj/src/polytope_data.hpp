#ifndef VALGEO_SRC_POLYTOPE_DATA_HPP
#define VALGEO_SRC_POLYTOPE_DATA_HPP

#include "valgeo/polytope.hpp"

#include <mutex>

namespace valgeo {

struct Polytope::Data {
  int n = 0;
  int dim = -1;
  std::vector<Vector> vertices;
  std::vector<Facet> facets;
  std::vector<Hyperplane> equations;
  Matrix basis;
  std::vector<int> pivots;
  FaceLattice lattice;

  // Pulling triangulation, computed on first use.
  mutable std::once_flag triangulation_once;
  mutable std::vector<Simplex> triangulation;
};

}  // namespace valgeo

#endif  // VALGEO_SRC_POLYTOPE_DATA_HPP
