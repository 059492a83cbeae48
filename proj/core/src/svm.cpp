#include "orca/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "orca/errors.hpp"

namespace orca {
namespace {

constexpr double kTau = 1e-12;

// SMO on min f(a) = 1/2 a^T Q a - e^T a, Q_ij = y_i y_j K_ij, subject to
// 0 <= a_i <= C and y^T a = 0. Follows the libsvm two-variable update.
class SmoSolver {
 public:
  SmoSolver(const Eigen::MatrixXd& kernel, std::span<const int> labels, const SvmConfig& config)
      : k_(kernel),
        y_(labels.begin(), labels.end()),
        m_(static_cast<Eigen::Index>(labels.size())),
        c_(config.cost),
        tol_(config.kkt_tol),
        verify_(config.verify_monotone),
        alpha_(labels.size(), 0.0),
        grad_(labels.size(), -1.0),
        order_(labels.size()) {
    std::iota(order_.begin(), order_.end(), Eigen::Index{0});
    std::mt19937_64 rng(config.seed);
    std::shuffle(order_.begin(), order_.end(), rng);
    const std::int64_t m = m_;
    budget_ = config.max_iterations > 0 ? config.max_iterations
                                        : std::min<std::int64_t>(10 * m * m, kMaxPairUpdates);
  }

  void solve() {
    double objective = verify_ ? objective_from_gradient() : 0.0;
    while (iterations_ < budget_) {
      Eigen::Index i = -1;
      Eigen::Index j = -1;
      if (select_pair(i, j) <= tol_) {
        // Confirm on a freshly recomputed gradient before stopping.
        refresh_gradient();
        if (select_pair(i, j) <= tol_) {
          stopped_by_tolerance_ = true;
          break;
        }
      }
      update_pair(i, j);
      ++iterations_;
      if (verify_) {
        const double next = objective_from_gradient();
        if (next > objective + 1e-12 * (1.0 + std::abs(objective))) {
          throw Error("SMO update increased the dual minimisation objective");
        }
        objective = next;
      }
    }
    for (double& a : alpha_) a = std::clamp(a, 0.0, c_);
    refresh_gradient();
  }

  const std::vector<double>& alpha() const noexcept { return alpha_; }
  const std::vector<double>& gradient() const noexcept { return grad_; }
  std::int64_t iterations() const noexcept { return iterations_; }
  bool stopped_by_tolerance() const noexcept { return stopped_by_tolerance_; }

 private:
  double q(Eigen::Index a, Eigen::Index b) const { return y_[a] * y_[b] * k_(a, b); }

  bool in_up(Eigen::Index t) const {
    return (y_[t] > 0 && alpha_[t] < c_) || (y_[t] < 0 && alpha_[t] > 0.0);
  }
  bool in_low(Eigen::Index t) const {
    return (y_[t] > 0 && alpha_[t] > 0.0) || (y_[t] < 0 && alpha_[t] < c_);
  }

  // Maximal violating pair; returns the gap m(a) - M(a).
  double select_pair(Eigen::Index& i, Eigen::Index& j) const {
    double up = -std::numeric_limits<double>::infinity();
    double low = std::numeric_limits<double>::infinity();
    for (Eigen::Index t : order_) {
      const double v = -y_[t] * grad_[t];
      if (in_up(t) && v > up) {
        up = v;
        i = t;
      }
      if (in_low(t) && v < low) {
        low = v;
        j = t;
      }
    }
    return up - low;
  }

  void update_pair(Eigen::Index i, Eigen::Index j) {
    const double old_i = alpha_[i];
    const double old_j = alpha_[j];
    double& ai = alpha_[i];
    double& aj = alpha_[j];
    if (y_[i] != y_[j]) {
      double quad = k_(i, i) + k_(j, j) + 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad_[i] - grad_[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0) {
        if (aj < 0.0) {
          aj = 0.0;
          ai = diff;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = -diff;
      }
      if (diff > 0.0) {
        if (ai > c_) {
          ai = c_;
          aj = c_ - diff;
        }
      } else if (aj > c_) {
        aj = c_;
        ai = c_ + diff;
      }
    } else {
      double quad = k_(i, i) + k_(j, j) - 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad_[i] - grad_[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > c_) {
        if (ai > c_) {
          ai = c_;
          aj = sum - c_;
        }
      } else if (aj < 0.0) {
        aj = 0.0;
        ai = sum;
      }
      if (sum > c_) {
        if (aj > c_) {
          aj = c_;
          ai = sum - c_;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = sum;
      }
    }
    const double di = ai - old_i;
    const double dj = aj - old_j;
    for (Eigen::Index t = 0; t < m_; ++t) grad_[t] += q(t, i) * di + q(t, j) * dj;
  }

  void refresh_gradient() {
    for (Eigen::Index t = 0; t < m_; ++t) {
      double acc = 0.0;
      for (Eigen::Index s = 0; s < m_; ++s) {
        if (alpha_[s] != 0.0) acc += q(t, s) * alpha_[s];
      }
      grad_[t] = acc - 1.0;
    }
  }

  double objective_from_gradient() const {
    double f = 0.0;
    for (Eigen::Index t = 0; t < m_; ++t) f += 0.5 * alpha_[t] * (grad_[t] - 1.0);
    return f;
  }

  const Eigen::MatrixXd& k_;
  std::vector<int> y_;
  Eigen::Index m_;
  double c_;
  double tol_;
  bool verify_;
  std::vector<double> alpha_;
  std::vector<double> grad_;
  std::vector<Eigen::Index> order_;
  std::int64_t budget_ = 0;
  std::int64_t iterations_ = 0;
  bool stopped_by_tolerance_ = false;
};

// b from the free support vectors, else the midpoint of the KKT-feasible interval.
double compute_bias(std::span<const double> alpha, std::span<const double> grad,
                    std::span<const int> y, double cost) {
  double free_sum = 0.0;
  std::size_t free_count = 0;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < alpha.size(); ++t) {
    // Value of b that puts sample t exactly on its margin.
    const double r = -y[t] * grad[t];
    if (alpha[t] > 0.0 && alpha[t] < cost) {
      free_sum += r;
      ++free_count;
      continue;
    }
    const bool at_zero = alpha[t] <= 0.0;
    const bool raises_lower = (y[t] > 0) == at_zero;
    if (raises_lower) {
      lower = std::max(lower, r);
    } else {
      upper = std::min(upper, r);
    }
  }
  if (free_count > 0) return free_sum / static_cast<double>(free_count);
  if (std::isfinite(lower) && std::isfinite(upper)) return 0.5 * (lower + upper);
  if (std::isfinite(lower)) return lower;
  if (std::isfinite(upper)) return upper;
  return 0.0;
}

void check_labels(std::span<const int> labels) {
  bool pos = false;
  bool neg = false;
  for (int y : labels) {
    if (y == 1) {
      pos = true;
    } else if (y == -1) {
      neg = true;
    } else {
      throw InvalidParams("labels must be -1 or +1");
    }
  }
  if (!pos || !neg) throw SingleClassData();
}

}  // namespace

std::size_t TrainedModel::support_vectors() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(signed_duals.begin(), signed_duals.end(), [](double s) { return s != 0.0; }));
}

TrainedModel train(const KernelSpec& spec, const Dataset& data, const SvmConfig& config) {
  return train(spec, data, gram(spec, data.rescaled), config);
}

TrainedModel train(const KernelSpec& spec, const Dataset& data, const GramMatrix& gram,
                   const SvmConfig& config) {
  if (!(config.cost > 0.0)) throw InvalidParams("cost C must be positive");
  if (!(config.kkt_tol > 0.0)) throw InvalidParams("kkt_tol must be positive");
  if (data.dims() != static_cast<std::size_t>(spec.d)) {
    throw DimensionMismatch(static_cast<std::size_t>(spec.d), data.dims());
  }
  if (gram.entries.rows() != static_cast<Eigen::Index>(data.size())) {
    throw DimensionMismatch(data.size(), static_cast<std::size_t>(gram.entries.rows()));
  }
  check_labels(data.labels);

  SmoSolver solver(gram.entries, data.labels, config);
  solver.solve();

  const auto& alpha = solver.alpha();
  std::vector<double> signed_duals(alpha.size());
  for (std::size_t t = 0; t < alpha.size(); ++t) signed_duals[t] = alpha[t] * data.labels[t];

  TrainedModel model{spec, data.rescale_map, data.rescaled, std::move(signed_duals)};
  model.cost = config.cost;
  model.bias = compute_bias(alpha, solver.gradient(), data.labels, config.cost);
  model.iterations = solver.iterations();
  model.dual_objective = dual_objective(model.signed_duals, data.labels, gram);
  model.kkt_residual = kkt_residual(model, gram, data.labels);
  model.converged = solver.stopped_by_tolerance() || model.kkt_residual <= 10.0 * config.kkt_tol;
  return model;
}

double decision_value_rescaled(const TrainedModel& model, std::span<const double> x) {
  const auto d = static_cast<std::size_t>(model.spec.d);
  if (x.size() != d) throw DimensionMismatch(d, x.size());
  const auto& basis = model.spec.basis;
  const auto width = static_cast<std::size_t>(basis.size());
  std::vector<double> features(d * width);
  for (std::size_t j = 0; j < d; ++j) {
    basis.evaluate_all(x[j], std::span<double>(features.data() + j * width, width));
  }
  std::vector<double> sample(width);
  double h = 0.0;
  for (std::size_t i = 0; i < model.samples(); ++i) {
    const double s = model.signed_duals[i];
    if (s == 0.0) continue;
    double k = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      basis.evaluate_all(model.inputs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                         sample);
      double dot = 0.0;
      for (std::size_t c = 0; c < width; ++c) dot += sample[c] * features[j * width + c];
      k *= dot;
    }
    h += s * k;
  }
  return h + model.bias;
}

double decision_function(const TrainedModel& model, std::span<const double> x_raw) {
  const auto d = static_cast<std::size_t>(model.spec.d);
  if (x_raw.size() != d) throw DimensionMismatch(d, x_raw.size());
  const auto scaled = model.rescale.apply(x_raw);
  return decision_value_rescaled(model, scaled);
}

int predict(const TrainedModel& model, std::span<const double> x_raw) {
  return sign_label(decision_function(model, x_raw));
}

double dual_objective(std::span<const double> signed_duals, std::span<const int> labels,
                      const GramMatrix& gram) {
  const auto m = static_cast<Eigen::Index>(signed_duals.size());
  double linear = 0.0;
  double quad = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    linear += signed_duals[i] * labels[i];
    if (signed_duals[i] == 0.0) continue;
    double row = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) row += gram.entries(i, j) * signed_duals[j];
    quad += signed_duals[i] * row;
  }
  return linear - 0.5 * quad;
}

double kkt_residual(const TrainedModel& model, const GramMatrix& gram,
                    std::span<const int> labels) {
  const auto m = static_cast<Eigen::Index>(model.samples());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    double g = model.bias;
    for (Eigen::Index j = 0; j < m; ++j) g += model.signed_duals[j] * gram.entries(i, j);
    const double margin = labels[i] * g;
    const double a = model.signed_duals[i] * labels[i];
    double violation = 0.0;
    if (a <= 0.0) {
      violation = std::max(0.0, 1.0 - margin);
    } else if (a >= model.cost) {
      violation = std::max(0.0, margin - 1.0);
    } else {
      violation = std::abs(margin - 1.0);
    }
    worst = std::max(worst, violation);
  }
  return worst;
}

double training_accuracy(const TrainedModel& model, const Dataset& data) {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Eigen::VectorXd row = data.raw.row(static_cast<Eigen::Index>(i));
    if (predict(model, std::span<const double>(row.data(), data.dims())) == data.labels[i]) {
      ++correct;
    }
  }
  return data.size() == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace orca
