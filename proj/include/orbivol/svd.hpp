#pragma once

#include <vector>

#include "orbivol/matrix.hpp"

namespace orbivol {

struct SingularDecomposition {
  // Right singular vectors as columns, Euclidean-orthonormal.
  Matrix right_vectors;
  // Singular values, one per column of right_vectors (unsorted).
  std::vector<double> values;
};

// One-sided Jacobi SVD of a square matrix: returns V orthogonal and the
// singular values sigma_j = |A v_j|. Small singular values come out with
// absolute accuracy near machine epsilon times |A|, which is what the
// rank-revealing uses here need.
SingularDecomposition jacobi_svd(Matrix a);

// Columns of A whose singular value is at most `threshold`, i.e. an
// orthonormal basis of the numerical null space.
std::vector<std::vector<double>> null_space(const Matrix& a, double threshold);

}  // namespace orbivol
