#pragma once

#include <span>
#include <vector>

#include "fkz/blockscan.hpp"

namespace fkz {

// Cross-block KLT basis: eigendecomposition of the covariance of the vectors
// formed by taking one sample per block at each pixel position.
struct KltBasis {
  int n = 0;                         // channel count (number of sub-blocks)
  std::vector<double> mean;          // n
  std::vector<double> eigenvectors;  // n*n, column-major: column j = j-th eigenvector
  std::vector<double> eigenvalues;   // n, descending

  std::span<const double> column(int j) const {
    return {eigenvectors.data() + static_cast<std::size_t>(j) * n, static_cast<std::size_t>(n)};
  }
};

// Component j = average of block j over its pixel positions.
std::vector<double> compute_mean(const SubBlockStack& stack);

// C = (1/positions) * sum over positions of (x - m)(x - m)^T; n x n row-major,
// exactly symmetric.
std::vector<double> compute_covariance(const SubBlockStack& stack, std::span<const double> mean);

// Cyclic Jacobi diagonalization of a symmetric matrix. Eigenvalues sorted
// descending (stable under ties); each eigenvector's largest-magnitude entry is
// made non-negative; tiny negative eigenvalues are clamped to zero. The mean
// field of the result is left empty.
KltBasis eigen_symmetric(std::span<const double> matrix, int n);

// mean + covariance + eigendecomposition of a stack in one step.
KltBasis compute_basis(const SubBlockStack& stack);

// y(p) = V^T (x(p) - mean) per pixel position.
SubBlockStack klt_forward(const SubBlockStack& stack, const KltBasis& basis);

// x(p) = V y(p) + mean per pixel position.
SubBlockStack klt_inverse(const SubBlockStack& stack, const KltBasis& basis);

// Decoder-side inverse from the m retained channels only:
// x(p) = sum_{j<m} y_j(p) * V[:,j] + mean, producing the full n-channel stack.
// v_columns holds the retained eigenvector columns, n x m column-major.
SubBlockStack klt_inverse_retained(const SubBlockStack& retained, std::span<const double> mean,
                                   std::span<const double> v_columns, int n);

}  // namespace fkz
