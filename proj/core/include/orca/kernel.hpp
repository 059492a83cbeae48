#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "orca/orthopoly.hpp"

namespace orca {

/// Tensor-product truncated kernel K_n^(d)(x, z) = prod_j K_n(x_j, z_j).
struct KernelSpec {
  OrthonormalBasis basis;
  int d = 1;

  KernelSpec(OrthonormalBasis b, int dim);

  int degree() const noexcept { return basis.degree(); }
  /// (n + 1)^d, saturating at UINT64_MAX.
  std::uint64_t feature_dimension() const noexcept;
};

/// Number of tensor modes (n + 1)^d, saturating at UINT64_MAX on overflow.
std::uint64_t mode_count(int n, int d) noexcept;

/// Cached univariate values p_k(x_{i,j}) for every sample i, coordinate j and
/// degree k, laid out [i][j][k].
class FeatureTable {
 public:
  FeatureTable(const OrthonormalBasis& basis, const Eigen::MatrixXd& points);

  std::size_t samples() const noexcept { return m_; }
  std::size_t dims() const noexcept { return d_; }
  std::size_t width() const noexcept { return width_; }
  std::span<const double> row(std::size_t sample, std::size_t dim) const noexcept {
    return {values_.data() + (sample * d_ + dim) * width_, width_};
  }

 private:
  std::size_t m_, d_, width_;
  std::vector<double> values_;
};

/// One-dimensional truncated kernel by direct summation of p_k(x) p_k(z).
double kernel_1d(const OrthonormalBasis& basis, double x, double z);

/// d-variate tensor-product kernel. Throws DimensionMismatch.
double kernel_nd(const KernelSpec& spec, std::span<const double> x, std::span<const double> z);

struct GramMatrix {
  Eigen::MatrixXd entries;
  std::string spec_digest;

  Eigen::Index size() const noexcept { return entries.rows(); }
};

/// Gram matrix of the rows of `points` (m x d, already in [-1, 1]^d).
/// The upper triangle is computed and mirrored, so the result is exactly symmetric.
GramMatrix gram(const KernelSpec& spec, const Eigen::MatrixXd& points);

/// Identifier of a kernel spec plus the point set it was evaluated on.
std::string spec_digest(const KernelSpec& spec, const Eigen::MatrixXd& points);

/// Smallest and largest eigenvalue of a symmetric matrix.
struct EigenRange {
  double min = 0.0;
  double max = 0.0;
};
EigenRange eigen_range(const Eigen::MatrixXd& symmetric);

/// Numerical PSD: smallest eigenvalue >= -rel_tol * largest eigenvalue.
bool is_numerically_psd(const GramMatrix& gram, double rel_tol = 1e-8);

}  // namespace orca
