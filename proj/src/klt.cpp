#include "fkz/klt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fkz/error.hpp"

namespace fkz {

namespace {

void check_basis_match(const SubBlockStack& stack, int basis_n) {
  if (stack.channels != basis_n)
    fail(Errc::dimension_mismatch, "klt: stack has " + std::to_string(stack.channels) +
                                       " channels but basis expects " + std::to_string(basis_n));
}

// One cyclic sweep of Jacobi rotations over the strict upper triangle.
// a is n x n row-major (kept symmetric), v accumulates rotations column-wise.
void jacobi_sweep(std::vector<double>& a, std::vector<double>& v, int n) {
  auto A = [&](int r, int c) -> double& { return a[static_cast<std::size_t>(r) * n + c]; };
  for (int p = 0; p < n - 1; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const double apq = A(p, q);
      if (apq == 0.0) continue;
      const double app = A(p, p), aqq = A(q, q);
      const double theta = 0.5 * (aqq - app) / apq;
      double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
      if (theta < 0.0) t = -t;
      const double c = 1.0 / std::sqrt(t * t + 1.0);
      const double s = t * c;

      A(p, p) = app - t * apq;
      A(q, q) = aqq + t * apq;
      A(p, q) = 0.0;
      A(q, p) = 0.0;
      for (int k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const double akp = A(k, p), akq = A(k, q);
        A(k, p) = c * akp - s * akq;
        A(p, k) = A(k, p);
        A(k, q) = s * akp + c * akq;
        A(q, k) = A(k, q);
      }
      for (int k = 0; k < n; ++k) {
        const double vkp = v[static_cast<std::size_t>(k) * n + p];
        const double vkq = v[static_cast<std::size_t>(k) * n + q];
        v[static_cast<std::size_t>(k) * n + p] = c * vkp - s * vkq;
        v[static_cast<std::size_t>(k) * n + q] = s * vkp + c * vkq;
      }
    }
  }
}

double off_diagonal_norm(const std::vector<double>& a, int n) {
  double sum = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (r != c) sum += a[static_cast<std::size_t>(r) * n + c] * a[static_cast<std::size_t>(r) * n + c];
  return std::sqrt(sum);
}

}  // namespace

std::vector<double> compute_mean(const SubBlockStack& stack) {
  if (stack.channels < 1 || stack.positions() < 1) fail(Errc::invalid_argument, "compute_mean: empty stack");
  const int positions = stack.positions();
  std::vector<double> mean(stack.channels, 0.0);
  for (int j = 0; j < stack.channels; ++j) {
    const auto blk = stack.block(j);
    double acc = 0.0;
    for (double v : blk) acc += v;
    mean[j] = acc / positions;
  }
  return mean;
}

std::vector<double> compute_covariance(const SubBlockStack& stack, std::span<const double> mean) {
  const int n = stack.channels;
  if (static_cast<int>(mean.size()) != n) fail(Errc::dimension_mismatch, "compute_covariance: mean size != channels");
  const int positions = stack.positions();
  std::vector<double> cov(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto bi = stack.block(i);
    for (int j = i; j < n; ++j) {
      const auto bj = stack.block(j);
      double acc = 0.0;
      for (int p = 0; p < positions; ++p) acc += (bi[p] - mean[i]) * (bj[p] - mean[j]);
      const double cij = acc / positions;
      cov[static_cast<std::size_t>(i) * n + j] = cij;
      cov[static_cast<std::size_t>(j) * n + i] = cij;
    }
  }
  return cov;
}

KltBasis eigen_symmetric(std::span<const double> matrix, int n) {
  if (n < 1 || matrix.size() != static_cast<std::size_t>(n) * n)
    fail(Errc::invalid_argument, "eigen_symmetric: bad matrix size");
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c)
      if (std::abs(matrix[static_cast<std::size_t>(r) * n + c] - matrix[static_cast<std::size_t>(c) * n + r]) > 1e-12)
        fail(Errc::invalid_argument, "eigen_symmetric: matrix not symmetric within 1e-12");

  std::vector<double> a(matrix.begin(), matrix.end());
  // Mirror the upper triangle so rotations see an exactly symmetric matrix.
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c) a[static_cast<std::size_t>(c) * n + r] = a[static_cast<std::size_t>(r) * n + c];

  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;

  double diag_scale = 0.0;
  for (int i = 0; i < n; ++i) diag_scale += std::abs(a[static_cast<std::size_t>(i) * n + i]);
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_diagonal_norm(a, n) <= 1e-12 * diag_scale) break;
    jacobi_sweep(a, v, n);
    diag_scale = 0.0;
    for (int i = 0; i < n; ++i) diag_scale += std::abs(a[static_cast<std::size_t>(i) * n + i]);
  }

  std::vector<double> evals(n);
  for (int i = 0; i < n; ++i) evals[i] = a[static_cast<std::size_t>(i) * n + i];

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int l, int r) { return evals[l] > evals[r]; });

  KltBasis basis;
  basis.n = n;
  basis.eigenvalues.resize(n);
  basis.eigenvectors.resize(static_cast<std::size_t>(n) * n);
  const double lambda_max = evals.empty() ? 0.0 : *std::max_element(evals.begin(), evals.end());
  const double clamp_tol = 1e-9 * std::max(1.0, std::abs(lambda_max));
  for (int jout = 0; jout < n; ++jout) {
    const int jin = idx[jout];
    double lambda = evals[jin];
    if (lambda < 0.0 && lambda >= -clamp_tol) lambda = 0.0;
    basis.eigenvalues[jout] = lambda;

    double* col = basis.eigenvectors.data() + static_cast<std::size_t>(jout) * n;
    for (int k = 0; k < n; ++k) col[k] = v[static_cast<std::size_t>(k) * n + jin];
    // Deterministic orientation: the largest-magnitude entry is non-negative.
    int peak = 0;
    for (int k = 1; k < n; ++k)
      if (std::abs(col[k]) > std::abs(col[peak])) peak = k;
    if (col[peak] < 0.0)
      for (int k = 0; k < n; ++k) col[k] = -col[k];
  }
  return basis;
}

KltBasis compute_basis(const SubBlockStack& stack) {
  const auto mean = compute_mean(stack);
  const auto cov = compute_covariance(stack, mean);
  KltBasis basis = eigen_symmetric(cov, stack.channels);
  basis.mean = mean;
  return basis;
}

SubBlockStack klt_forward(const SubBlockStack& stack, const KltBasis& basis) {
  check_basis_match(stack, basis.n);
  const int n = basis.n;
  const int positions = stack.positions();
  SubBlockStack out(stack.block_rows, stack.block_cols, stack.grid_rows, stack.grid_cols, n);
  for (int j = 0; j < n; ++j) {
    const auto col = basis.column(j);
    auto dst = out.block(j);
    for (int p = 0; p < positions; ++p) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += col[i] * (stack.block(i)[p] - basis.mean[i]);
      dst[p] = acc;
    }
  }
  return out;
}

SubBlockStack klt_inverse(const SubBlockStack& stack, const KltBasis& basis) {
  check_basis_match(stack, basis.n);
  return klt_inverse_retained(stack, basis.mean, basis.eigenvectors, basis.n);
}

SubBlockStack klt_inverse_retained(const SubBlockStack& retained, std::span<const double> mean,
                                   std::span<const double> v_columns, int n) {
  const int m = retained.channels;
  if (m > n) fail(Errc::dimension_mismatch, "klt_inverse_retained: more channels than basis size");
  if (static_cast<int>(mean.size()) != n || v_columns.size() != static_cast<std::size_t>(n) * m)
    fail(Errc::dimension_mismatch, "klt_inverse_retained: mean/eigenvector sizes inconsistent");
  const int positions = retained.positions();
  SubBlockStack out(retained.block_rows, retained.block_cols, retained.grid_rows, retained.grid_cols, n);
  for (int i = 0; i < n; ++i) {
    auto dst = out.block(i);
    for (int p = 0; p < positions; ++p) {
      double acc = mean[i];
      for (int j = 0; j < m; ++j) acc += v_columns[static_cast<std::size_t>(j) * n + i] * retained.block(j)[p];
      dst[p] = acc;
    }
  }
  return out;
}

}  // namespace fkz
