#include "fkz/dct2d.hpp"

#include <cmath>

#include "doctest.h"
#include "fkz/error.hpp"
#include "testutil.hpp"

using namespace fkz;

namespace {

double max_abs_diff(const CoefficientPlane& a, const CoefficientPlane& b) {
  REQUIRE(a.rows == b.rows);
  REQUIRE(a.cols == b.cols);
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

double energy(const CoefficientPlane& p) {
  double e = 0.0;
  for (double v : p.values) e += v * v;
  return e;
}

// DCT of the 8x8 ramp x[m][n] = m + n, precomputed by direct evaluation of the
// transform definition and cross-checked against the matrix form C*X*C^T.
// The ramp is a sum of a row term and a column term, so only row 0 and column 0
// carry energy.
constexpr double kRampDc = 56.0;
constexpr double kRamp1 = -18.2216411837960730;
constexpr double kRamp3 = -1.9048178261672407;
constexpr double kRamp5 = -0.5682392223671718;
constexpr double kRamp7 = -0.1434078249809268;

CoefficientPlane ramp8x8() {
  CoefficientPlane p(8, 8);
  for (int m = 0; m < 8; ++m)
    for (int n = 0; n < 8; ++n) p.at(m, n) = m + n;
  return p;
}

CoefficientPlane ramp8x8_expected() {
  CoefficientPlane e(8, 8);
  e.at(0, 0) = kRampDc;
  const double odd[4] = {kRamp1, kRamp3, kRamp5, kRamp7};
  for (int i = 0; i < 4; ++i) {
    e.at(0, 2 * i + 1) = odd[i];
    e.at(2 * i + 1, 0) = odd[i];
  }
  return e;
}

}  // namespace

TEST_CASE("reference DCT of a constant plane excites only the DC coefficient") {
  CoefficientPlane ones(4, 4);
  for (auto& v : ones.values) v = 1.0;
  const CoefficientPlane y = dct2_reference(ones);
  CHECK(y.at(0, 0) == doctest::Approx(4.0).epsilon(1e-12));
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l)
      if (k != 0 || l != 0) CHECK(std::abs(y.at(k, l)) < 1e-12);
}

TEST_CASE("reference DCT of a 1x1 plane is the identity") {
  CoefficientPlane p(1, 1);
  p.values[0] = -3.25;
  CHECK(dct2_reference(p).values[0] == doctest::Approx(-3.25).epsilon(1e-15));
}

TEST_CASE("reference DCT rejects non-square planes") {
  CoefficientPlane p(2, 3);
  CHECK_THROWS_AS(dct2_reference(p), Error);
}

TEST_CASE("8x8 ramp matches the precomputed coefficient table") {
  const CoefficientPlane expected = ramp8x8_expected();
  CHECK(max_abs_diff(dct2_reference(ramp8x8()), expected) < 1e-12);
  CHECK(max_abs_diff(dct2_forward(ramp8x8()), expected) < 1e-12);
}

TEST_CASE("1-D basis matrices are orthonormal") {
  for (int n : {1, 2, 4, 8, 16, 32, 64}) {
    const auto c = dct_basis_matrix(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double dot = 0.0;
        for (int k = 0; k < n; ++k)
          dot += c[static_cast<std::size_t>(i) * n + k] * c[static_cast<std::size_t>(j) * n + k];
        CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("fast forward matches the reference oracle") {
  for (int n : {4, 8, 16, 32}) {
    const auto p = fkztest::random_plane(n, n, -128.0, 128.0, 77 + n);
    CHECK(max_abs_diff(dct2_forward(p), dct2_reference(p)) < 1e-10);
  }
}

TEST_CASE("forward transform preserves energy") {
  const auto p = fkztest::random_plane(512, 512, 0.0, 255.0, 5);
  const double ex = energy(p);
  const double ey = energy(dct2_forward(p));
  CHECK(std::abs(ey - ex) / ex < 1e-6);
}

TEST_CASE("forward transform is linear") {
  const auto p = fkztest::random_plane(16, 16, -10.0, 10.0, 21);
  const auto q = fkztest::random_plane(16, 16, -10.0, 10.0, 22);
  const double a = 2.75, b = -0.6;
  CoefficientPlane mix(16, 16);
  for (std::size_t i = 0; i < mix.values.size(); ++i) mix.values[i] = a * p.values[i] + b * q.values[i];
  const auto tp = dct2_forward(p), tq = dct2_forward(q), tm = dct2_forward(mix);
  CoefficientPlane expect(16, 16);
  for (std::size_t i = 0; i < expect.values.size(); ++i) expect.values[i] = a * tp.values[i] + b * tq.values[i];
  CHECK(max_abs_diff(tm, expect) < 1e-9);
}

TEST_CASE("round trips restore the input") {
  SUBCASE("4x4 constant") {
    CoefficientPlane ones(4, 4);
    for (auto& v : ones.values) v = 1.0;
    CHECK(max_abs_diff(dct2_inverse(dct2_forward(ones)), ones) < 1e-12);
  }
  SUBCASE("zero plane stays zero") {
    CoefficientPlane z(6, 6);
    const auto y = dct2_forward(z);
    CHECK(energy(y) == 0.0);
    CHECK(energy(dct2_inverse(y)) == 0.0);
  }
  SUBCASE("8x8 ramp") {
    const auto p = ramp8x8();
    CHECK(max_abs_diff(dct2_inverse(dct2_forward(p)), p) < 1e-10);
  }
  SUBCASE("512x512 random") {
    const auto p = fkztest::random_plane(512, 512, 0.0, 255.0, 9);
    CHECK(max_abs_diff(dct2_inverse(dct2_forward(p)), p) < 1e-9);
  }
  SUBCASE("rectangular and odd sizes take the fallback path") {
    for (auto [r, c] : {std::pair(96, 64), std::pair(33, 17), std::pair(1, 5)}) {
      const auto p = fkztest::random_plane(r, c, -50.0, 50.0, 31 + r);
      CHECK(max_abs_diff(dct2_inverse(dct2_forward(p)), p) < 1e-9);
    }
  }
}

TEST_CASE("rectangular forward agrees with the explicit matrix form") {
  const int rows = 6, cols = 4;
  const auto p = fkztest::random_plane(rows, cols, -5.0, 5.0, 55);
  const auto cr = dct_basis_matrix(rows);
  const auto cc = dct_basis_matrix(cols);
  // expected = C_rows * X * C_cols^T
  CoefficientPlane expect(rows, cols);
  for (int k = 0; k < rows; ++k)
    for (int l = 0; l < cols; ++l) {
      double acc = 0.0;
      for (int m = 0; m < rows; ++m)
        for (int n = 0; n < cols; ++n)
          acc += cr[static_cast<std::size_t>(k) * rows + m] * p.at(m, n) * cc[static_cast<std::size_t>(l) * cols + n];
      expect.at(k, l) = acc;
    }
  CHECK(max_abs_diff(dct2_forward(p), expect) < 1e-10);
}
