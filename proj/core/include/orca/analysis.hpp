#pragma once

#include <span>
#include <string>
#include <vector>

#include "orca/expansion.hpp"

namespace orca {

/// Default coverage levels for spectral thresholds.
inline const std::vector<double> kDefaultEpsilons = {0.10, 0.05, 0.01};

/// Smallest total degree T whose cumulative mass F(T) reaches 1 - epsilon.
struct SpectralThreshold {
  double epsilon = 0.0;
  int degree = 0;
  double coverage = 0.0;
};

/// Normalised Orthogonal Kernel Contribution indices of one coefficient tensor.
///
/// block[q][N] is the share of sum_k c_k^2 carried by modes with q active
/// coordinates and total degree N. by_order and by_degree are its row and
/// column sums; marginal[i] and pairwise[i][j] (i < j, zero-based) split the
/// q = 1 and q = 2 rows by active set.
struct OrcaReport {
  int n = 0;
  int d = 0;
  std::vector<std::vector<double>> block;
  std::vector<double> by_order;
  std::vector<double> by_degree;
  std::vector<double> marginal;
  std::vector<std::vector<double>> pairwise;
  double even_mass = 0.0;
  double odd_mass = 0.0;
  int spectral_peak = 0;
  std::vector<SpectralThreshold> thresholds;
  double norm_sq = 0.0;
};

/// Number of strictly positive entries of k.
int interaction_order(std::span<const int> k) noexcept;
/// Sum of the entries of k.
int total_degree(std::span<const int> k) noexcept;

/// One streaming pass over the coefficients in odometer order. Epsilons must
/// lie in (0, 1); thresholds come back sorted by descending epsilon.
/// Throws DegenerateModel when every coefficient is zero.
OrcaReport analyze(const CoefficientTensor& tensor,
                   std::span<const double> epsilons = kDefaultEpsilons);

/// Normalised mass of the modes whose active set is exactly `subset`
/// (zero-based coordinate indices, nonempty, no repeats).
double subset_contribution(const CoefficientTensor& tensor, std::span<const int> subset);

/// F[T] = sum_{N <= T} by_degree[N].
std::vector<double> degree_profile_cumulative(const OrcaReport& report);

/// JSON with fields block, by_order, by_degree, marginal, pairwise, even_mass,
/// odd_mass, spectral_peak, thresholds, norm_sq.
std::string report_to_json(const OrcaReport& report);

/// Column label for an epsilon: 0.10 -> "010", 0.05 -> "005".
std::string epsilon_tag(double epsilon);

/// Flat table layout: n, even, odd, okc_q0..okc_qd, okc_1..okc_d, n_star,
/// t_<eps>..., f_<eps>...
std::vector<std::string> csv_columns(int d, std::span<const double> epsilons);
std::vector<std::string> csv_values(const OrcaReport& report);
std::string csv_line(const std::vector<std::string>& fields);
std::string report_to_csv(const OrcaReport& report);

/// Human-readable one-row table with four decimals.
std::string report_table(const OrcaReport& report);

}  // namespace orca
