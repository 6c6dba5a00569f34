#pragma once

#include <vector>

#include "fkz/plane.hpp"

namespace fkz {

// Orthonormal 1-D DCT-II basis, row-major: C[k][m] = sqrt(2/n) * eps_k * cos(pi*(2m+1)*k / (2n)),
// eps_0 = 1/sqrt(2), eps_k = 1 otherwise. Satisfies C*C^T = I.
std::vector<double> dct_basis_matrix(int n);

// Literal double-sum evaluation of the orthonormal 2-D DCT. O(N^4); square input only.
// This is the conformance oracle for dct2_forward.
CoefficientPlane dct2_reference(const CoefficientPlane& plane);

// Separable orthonormal 2-D DCT. Power-of-two axis lengths take an O(N log N)
// recursive path; other lengths fall back to direct per-axis evaluation.
CoefficientPlane dct2_forward(const CoefficientPlane& plane);
CoefficientPlane dct2_inverse(const CoefficientPlane& coeffs);

}  // namespace fkz
