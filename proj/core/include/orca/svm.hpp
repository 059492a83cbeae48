#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "orca/dataset.hpp"
#include "orca/kernel.hpp"

namespace orca {

struct SvmConfig {
  double cost = 1.0;
  double kkt_tol = 1e-6;
  /// Pair-update budget; 0 selects min(10 m^2, kMaxPairUpdates).
  std::int64_t max_iterations = 0;
  /// Seeds the scan order used to break ties in working-set selection.
  std::uint64_t seed = 0;
  /// Throw if an update ever decreases the dual objective (test aid).
  bool verify_monotone = false;
};

inline constexpr std::int64_t kMaxPairUpdates = 10'000'000;

/// Soft-margin SVM decision function g(x) = sum_i s_i K(x_i, x) + b with
/// s_i = alpha_i y_i, stored together with the rescaling of its training data.
struct TrainedModel {
  KernelSpec spec;
  RescaleMap rescale;
  Eigen::MatrixXd inputs;  // rescaled training points, m x d
  std::vector<double> signed_duals;
  double bias = 0.0;
  double cost = 1.0;
  double dual_objective = 0.0;
  bool converged = true;
  double kkt_residual = 0.0;
  std::int64_t iterations = 0;

  std::size_t samples() const noexcept { return signed_duals.size(); }
  std::size_t support_vectors() const noexcept;
};

/// Solves the dual with SMO (maximal violating pair). Throws SingleClassData.
/// On budget exhaustion with a KKT residual above 10 * kkt_tol the model is
/// still returned, with converged = false.
TrainedModel train(const KernelSpec& spec, const Dataset& data, const SvmConfig& config);

/// Same as train() but reuses a precomputed Gram matrix of data.rescaled.
TrainedModel train(const KernelSpec& spec, const Dataset& data, const GramMatrix& gram,
                   const SvmConfig& config);

/// g at a point already in the rescaled domain [-1, 1]^d.
double decision_value_rescaled(const TrainedModel& model, std::span<const double> x);

/// g at a raw point: applies the stored rescaling first.
double decision_function(const TrainedModel& model, std::span<const double> x_raw);

/// sign(g(x)) with sign(0) = +1.
int predict(const TrainedModel& model, std::span<const double> x_raw);

inline int sign_label(double g) noexcept { return g >= 0.0 ? 1 : -1; }

/// Largest KKT violation of the dual solution over the training set:
/// alpha = 0 needs y g >= 1, alpha = C needs y g <= 1, otherwise y g = 1.
double kkt_residual(const TrainedModel& model, const GramMatrix& gram,
                    std::span<const int> labels);

/// Dual objective sum(alpha) - 1/2 s^T K s.
double dual_objective(std::span<const double> signed_duals, std::span<const int> labels,
                      const GramMatrix& gram);

double training_accuracy(const TrainedModel& model, const Dataset& data);

/// JSON document: {jacobi: {alpha, beta}, degree, d, cost, bias, rescale,
/// samples, signed_duals, dual_objective, converged}.
std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);
void save_model(const std::string& path, const TrainedModel& model);
TrainedModel load_model(const std::string& path);

}  // namespace orca
