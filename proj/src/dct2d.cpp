#include "fkz/dct2d.hpp"

#include <cmath>
#include <numbers>

#include "fkz/error.hpp"

namespace fkz {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Twiddle factors for the recursive split, all levels flattened:
// [n/2 values for size n][n/4 for size n/2]...[1 for size 2], tw = 2*cos(pi*(2i+1)/(2s)).
std::vector<double> lee_twiddles(int n) {
  std::vector<double> tw;
  tw.reserve(n - 1);
  for (int s = n; s >= 2; s /= 2)
    for (int i = 0; i < s / 2; ++i) tw.push_back(2.0 * std::cos(kPi * (2 * i + 1) / (2.0 * s)));
  return tw;
}

// Unscaled DCT-II in place (Lee's even/odd split). tmp has room for n.
void lee_forward(double* x, double* tmp, const double* tw, int n) {
  if (n == 1) return;
  const int h = n / 2;
  for (int i = 0; i < h; ++i) {
    tmp[i] = x[i] + x[n - 1 - i];
    tmp[h + i] = (x[i] - x[n - 1 - i]) / tw[i];
  }
  lee_forward(tmp, x, tw + h, h);
  lee_forward(tmp + h, x, tw + h, h);
  for (int i = 0; i < h; ++i) x[2 * i] = tmp[i];
  for (int i = 0; i + 1 < h; ++i) x[2 * i + 1] = tmp[h + i] + tmp[h + i + 1];
  x[n - 1] = tmp[n - 1];
}

void lee_inverse(double* x, double* tmp, const double* tw, int n) {
  if (n == 1) return;
  const int h = n / 2;
  for (int i = 0; i < h; ++i) tmp[i] = x[2 * i];
  tmp[n - 1] = x[n - 1];
  for (int i = h - 2; i >= 0; --i) tmp[h + i] = x[2 * i + 1] - tmp[h + i + 1];
  lee_inverse(tmp, x, tw + h, h);
  lee_inverse(tmp + h, x, tw + h, h);
  for (int i = 0; i < h; ++i) {
    const double t = tmp[h + i] * tw[i];
    x[i] = 0.5 * (tmp[i] + t);
    x[n - 1 - i] = 0.5 * (tmp[i] - t);
  }
}

// One axis worth of precomputed state: twiddles for the fast path, the basis
// matrix otherwise.
class Dct1d {
 public:
  explicit Dct1d(int n) : n_(n), fast_(is_pow2(n)) {
    if (fast_)
      tw_ = lee_twiddles(n);
    else
      basis_ = dct_basis_matrix(n);
  }

  void forward(double* x, double* tmp) const {
    if (fast_) {
      lee_forward(x, tmp, tw_.data(), n_);
      const double s0 = std::sqrt(1.0 / n_), s = std::sqrt(2.0 / n_);
      x[0] *= s0;
      for (int k = 1; k < n_; ++k) x[k] *= s;
    } else {
      for (int k = 0; k < n_; ++k) {
        double acc = 0.0;
        const double* row = basis_.data() + static_cast<std::size_t>(k) * n_;
        for (int m = 0; m < n_; ++m) acc += row[m] * x[m];
        tmp[k] = acc;
      }
      for (int k = 0; k < n_; ++k) x[k] = tmp[k];
    }
  }

  void inverse(double* x, double* tmp) const {
    if (fast_) {
      const double s0 = std::sqrt(static_cast<double>(n_)), s = std::sqrt(n_ / 2.0);
      x[0] *= s0;
      for (int k = 1; k < n_; ++k) x[k] *= s;
      lee_inverse(x, tmp, tw_.data(), n_);
    } else {
      for (int m = 0; m < n_; ++m) {
        double acc = 0.0;
        for (int k = 0; k < n_; ++k) acc += basis_[static_cast<std::size_t>(k) * n_ + m] * x[k];
        tmp[m] = acc;
      }
      for (int m = 0; m < n_; ++m) x[m] = tmp[m];
    }
  }

 private:
  int n_;
  bool fast_;
  std::vector<double> tw_;
  std::vector<double> basis_;
};

CoefficientPlane transposed(const CoefficientPlane& p) {
  CoefficientPlane t(p.cols, p.rows);
  for (int r = 0; r < p.rows; ++r)
    for (int c = 0; c < p.cols; ++c) t.at(c, r) = p.at(r, c);
  return t;
}

template <typename Pass>
CoefficientPlane separable(const CoefficientPlane& plane, Pass pass) {
  CoefficientPlane out = plane;
  {
    Dct1d row_plan(out.cols);
    std::vector<double> tmp(out.cols);
    for (int r = 0; r < out.rows; ++r) pass(row_plan, out.values.data() + static_cast<std::size_t>(r) * out.cols, tmp.data());
  }
  CoefficientPlane t = transposed(out);
  {
    Dct1d col_plan(t.cols);
    std::vector<double> tmp(t.cols);
    for (int r = 0; r < t.rows; ++r) pass(col_plan, t.values.data() + static_cast<std::size_t>(r) * t.cols, tmp.data());
  }
  return transposed(t);
}

void check_nonempty(const CoefficientPlane& p) {
  if (p.rows < 1 || p.cols < 1 || p.values.size() != static_cast<std::size_t>(p.rows) * p.cols)
    fail(Errc::invalid_argument, "dct2d: empty or inconsistent plane");
}

}  // namespace

std::vector<double> dct_basis_matrix(int n) {
  if (n < 1) fail(Errc::invalid_argument, "dct basis: n must be positive");
  std::vector<double> c(static_cast<std::size_t>(n) * n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double scale = std::sqrt(2.0 / n);
  for (int k = 0; k < n; ++k) {
    const double eps = k == 0 ? inv_sqrt2 : 1.0;
    for (int m = 0; m < n; ++m)
      c[static_cast<std::size_t>(k) * n + m] = scale * eps * std::cos(kPi * (2 * m + 1) * k / (2.0 * n));
  }
  return c;
}

CoefficientPlane dct2_reference(const CoefficientPlane& plane) {
  check_nonempty(plane);
  if (plane.rows != plane.cols) fail(Errc::invalid_argument, "dct2_reference: input must be square");
  const int n = plane.rows;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CoefficientPlane out(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      double acc = 0.0;
      for (int m = 0; m < n; ++m)
        for (int nn = 0; nn < n; ++nn)
          acc += plane.at(m, nn) * std::cos(kPi * (2 * m + 1) * k / (2.0 * n)) *
                 std::cos(kPi * (2 * nn + 1) * l / (2.0 * n));
      const double ek = k == 0 ? inv_sqrt2 : 1.0;
      const double el = l == 0 ? inv_sqrt2 : 1.0;
      out.at(k, l) = (2.0 / n) * ek * el * acc;
    }
  }
  return out;
}

CoefficientPlane dct2_forward(const CoefficientPlane& plane) {
  check_nonempty(plane);
  return separable(plane, [](const Dct1d& plan, double* data, double* tmp) { plan.forward(data, tmp); });
}

CoefficientPlane dct2_inverse(const CoefficientPlane& coeffs) {
  check_nonempty(coeffs);
  return separable(coeffs, [](const Dct1d& plan, double* data, double* tmp) { plan.inverse(data, tmp); });
}

}  // namespace fkz
