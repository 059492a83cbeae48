#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "orca/kernel.hpp"
#include "orca/svm.hpp"

namespace orca {

/// Exact coordinates c_k of the RKHS component h(x) = sum_i s_i K(x_i, x) in the
/// tensor basis p_k(x) = prod_j p_{k_j}(x_j), k in {0..n}^d.
///
/// Layout is the odometer order: the last coordinate varies fastest, so the
/// flat index of k is sum_j k_j (n + 1)^(d - 1 - j) with j zero-based.
struct CoefficientTensor {
  int n = 0;
  int d = 1;
  std::vector<double> coeffs;
  double rkhs_norm_sq = 0.0;

  std::size_t size() const noexcept { return coeffs.size(); }
  std::size_t flat_index(std::span<const int> k) const;
  std::vector<int> multi_index(std::size_t flat) const;
  double operator[](std::span<const int> k) const { return coeffs[flat_index(k)]; }

  /// Recomputes rkhs_norm_sq = sum_k c_k^2 in flat order.
  void refresh_norm();
};

/// Default element cap for the dense design matrix (2^31 doubles).
inline constexpr std::uint64_t kDesignMatrixCap = std::uint64_t{1} << 31;

/// Dense design matrix P with P(i, flat(k)) = p_k(x_i). Small-instance oracle;
/// throws BudgetExceeded when m (n + 1)^d exceeds element_cap.
Eigen::MatrixXd design_matrix(const KernelSpec& spec, const Eigen::MatrixXd& inputs,
                              std::uint64_t element_cap = kDesignMatrixCap);

/// c = P^T s accumulated sample by sample as rank-one tensor products, without
/// materialising P. Bit-identical for any ORCA_THREADS setting.
CoefficientTensor extract_coefficients(const TrainedModel& model);

/// Same accumulation from explicit inputs and signed duals.
CoefficientTensor extract_coefficients(const KernelSpec& spec, const Eigen::MatrixXd& inputs,
                                       std::span<const double> signed_duals);

/// s^T K s, the squared RKHS norm through the Gram matrix.
double rkhs_norm_sq_via_gram(const TrainedModel& model, const GramMatrix& gram);

/// h(x) = sum_k c_k p_k(x) by contracting one coordinate at a time, last first.
double evaluate_expansion(const CoefficientTensor& tensor, const OrthonormalBasis& basis,
                          std::span<const double> x);

/// Binary dump: "ORCACOEF", u32 version, u32 n, u32 d, then (n + 1)^d
/// little-endian doubles in odometer order.
inline constexpr std::uint32_t kCoefficientFormatVersion = 1;
std::string coefficients_to_bytes(const CoefficientTensor& tensor);
CoefficientTensor coefficients_from_bytes(std::string_view bytes);
void save_coefficients(const std::string& path, const CoefficientTensor& tensor);
CoefficientTensor load_coefficients(const std::string& path);

}  // namespace orca
