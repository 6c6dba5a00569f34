#pragma once

#include <cstddef>
#include <vector>

namespace fkz {

// Row-major grid of real-valued transform coefficients.
struct CoefficientPlane {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;  // rows * cols

  CoefficientPlane() = default;
  CoefficientPlane(int r, int c) : rows(r), cols(c), values(static_cast<std::size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return values[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
};

}  // namespace fkz
