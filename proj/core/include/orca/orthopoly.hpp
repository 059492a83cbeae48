#pragma once

#include <span>
#include <vector>

namespace orca {

/// Parameters of the Jacobi weight w(x) = (1 - x)^alpha (1 + x)^beta on [-1, 1].
struct JacobiParams {
  double alpha = 0.0;
  double beta = 0.0;

  bool valid() const noexcept { return alpha > -1.0 && beta > -1.0; }
  bool is_legendre() const noexcept { return alpha == 0.0 && beta == 0.0; }
  friend bool operator==(const JacobiParams&, const JacobiParams&) = default;
};

/// Slack beyond [-1, 1] that is clamped instead of rejected.
inline constexpr double kDomainSlack = 1e-9;

/// Below this separation the Christoffel-Darboux closed form switches to its
/// diagonal (derivative) form.
inline constexpr double kCdSwitchThreshold = 1e-7;

/// Largest supported truncation level.
inline constexpr int kMaxDegree = 200;

/// Orthonormal Jacobi polynomials p_0..p_n with respect to w^(alpha,beta).
///
/// The family obeys the three-term recurrence
///
///   p_{k+1}(x) = (a_k x + b_k) p_k(x) - c_k p_{k-1}(x),   k = 0..n,
///
/// with p_{-1} = 0 and p_0 = 1 / sqrt(h_0). Coefficients are stored for
/// k = 0..n so that p_{n+1} is available to the Christoffel-Darboux closed form.
/// Immutable after construction; safe to share across threads.
class OrthonormalBasis {
 public:
  OrthonormalBasis(JacobiParams params, int n);

  const JacobiParams& params() const noexcept { return params_; }
  int degree() const noexcept { return n_; }
  /// Number of basis functions, n + 1.
  int size() const noexcept { return n_ + 1; }

  std::span<const double> recur_a() const noexcept { return a_; }
  std::span<const double> recur_b() const noexcept { return b_; }
  std::span<const double> recur_c() const noexcept { return c_; }
  /// Leading coefficients kappa_0..kappa_{n+1}, all positive.
  std::span<const double> leading() const noexcept { return leading_; }
  /// log h_k of the classical (unnormalized) Jacobi polynomials, k = 0..n+1.
  std::span<const double> log_norms() const noexcept { return log_h_; }

  /// Value of the constant p_0 = 1 / sqrt(h_0).
  double p0() const noexcept { return p0_; }

  /// Clamps x into [-1, 1]; throws DomainError beyond kDomainSlack.
  static double clamp_domain(double x);

  /// p_0(x)..p_n(x) in one forward recurrence pass.
  std::vector<double> evaluate_all(double x) const;
  /// Writes p_0(x)..p_n(x) into out (size n + 1).
  void evaluate_all(double x, std::span<double> out) const;

  /// Single p_k(x), 0 <= k <= n + 1.
  double evaluate(int k, double x) const;

  /// p_0..p_{n+1} and their first derivatives at x.
  void evaluate_with_derivatives(double x, std::span<double> values,
                                 std::span<double> derivs) const;

 private:
  JacobiParams params_;
  int n_;
  double p0_;
  std::vector<double> a_, b_, c_;
  std::vector<double> leading_;
  std::vector<double> log_h_;
};

/// Validates the parameters and builds the basis. Throws InvalidParams.
OrthonormalBasis build_basis(JacobiParams params, int n);

/// Classical Jacobi squared norm log h_k, computed with log-Gamma.
double jacobi_log_norm(JacobiParams params, int k);

/// Christoffel-Darboux kernel K_n(x, z) through the closed form in p_n, p_{n+1}.
/// For |x - z| < kCdSwitchThreshold the diagonal form at the midpoint is used.
double cd_closed_form(const OrthonormalBasis& basis, double x, double z);

}  // namespace orca
