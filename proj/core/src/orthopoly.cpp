#include "orca/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "orca/errors.hpp"

namespace orca {
namespace {

// Monic Jacobi recurrence: q_{k+1} = (x - A_k) q_k - B_k q_{k-1}.
double monic_a(const JacobiParams& p, int k) {
  const double ab = p.alpha + p.beta;
  if (k == 0) return (p.beta - p.alpha) / (ab + 2.0);
  const double s = 2.0 * k + ab;
  return (p.beta * p.beta - p.alpha * p.alpha) / (s * (s + 2.0));
}

double monic_b(const JacobiParams& p, int k) {
  const double ab = p.alpha + p.beta;
  if (k == 1) {
    const double s = 2.0 + ab;
    return 4.0 * (1.0 + p.alpha) * (1.0 + p.beta) / (s * s * (s + 1.0));
  }
  const double s = 2.0 * k + ab;
  return 4.0 * k * (k + p.alpha) * (k + p.beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
}

// log of the leading coefficient of the classical P_k^(alpha,beta).
double classical_log_leading(const JacobiParams& p, int k) {
  if (k == 0) return 0.0;
  const double ab = p.alpha + p.beta;
  return std::lgamma(2.0 * k + ab + 1.0) - k * std::numbers::ln2 - std::lgamma(k + 1.0) -
         std::lgamma(k + ab + 1.0);
}

}  // namespace

double jacobi_log_norm(JacobiParams p, int k) {
  const double ab = p.alpha + p.beta;
  if (k == 0) {
    return (ab + 1.0) * std::numbers::ln2 + std::lgamma(p.alpha + 1.0) +
           std::lgamma(p.beta + 1.0) - std::lgamma(ab + 2.0);
  }
  return (ab + 1.0) * std::numbers::ln2 + std::lgamma(k + p.alpha + 1.0) +
         std::lgamma(k + p.beta + 1.0) - std::log(2.0 * k + ab + 1.0) - std::lgamma(k + 1.0) -
         std::lgamma(k + ab + 1.0);
}

OrthonormalBasis::OrthonormalBasis(JacobiParams params, int n) : params_(params), n_(n) {
  if (!params.valid()) {
    throw InvalidParams("Jacobi parameters must satisfy alpha > -1 and beta > -1 (got alpha=" +
                        std::to_string(params.alpha) + ", beta=" + std::to_string(params.beta) +
                        ")");
  }
  if (n < 0 || n > kMaxDegree) {
    throw InvalidParams("truncation level must lie in [0, " + std::to_string(kMaxDegree) +
                        "], got " + std::to_string(n));
  }

  const auto count = static_cast<std::size_t>(n) + 1;
  a_.resize(count);
  b_.resize(count);
  c_.resize(count);
  for (int k = 0; k <= n; ++k) {
    const double next = std::sqrt(monic_b(params, k + 1));
    a_[k] = 1.0 / next;
    b_[k] = -monic_a(params, k) / next;
    c_[k] = k == 0 ? 0.0 : std::sqrt(monic_b(params, k)) / next;
  }

  log_h_.resize(count + 1);
  leading_.resize(count + 1);
  for (int k = 0; k <= n + 1; ++k) {
    log_h_[k] = jacobi_log_norm(params, k);
    leading_[k] = std::exp(classical_log_leading(params, k) - 0.5 * log_h_[k]);
  }
  p0_ = std::exp(-0.5 * log_h_[0]);
}

double OrthonormalBasis::clamp_domain(double x) {
  if (!(x >= -1.0 - kDomainSlack && x <= 1.0 + kDomainSlack)) {
    throw DomainError("point " + std::to_string(x) + " lies outside [-1, 1]");
  }
  return std::clamp(x, -1.0, 1.0);
}

std::vector<double> OrthonormalBasis::evaluate_all(double x) const {
  std::vector<double> out(static_cast<std::size_t>(size()));
  evaluate_all(x, out);
  return out;
}

void OrthonormalBasis::evaluate_all(double x, std::span<double> out) const {
  x = clamp_domain(x);
  out[0] = p0_;
  if (n_ == 0) return;
  out[1] = (a_[0] * x + b_[0]) * out[0];
  for (int k = 1; k < n_; ++k) {
    out[k + 1] = (a_[k] * x + b_[k]) * out[k] - c_[k] * out[k - 1];
  }
}

double OrthonormalBasis::evaluate(int k, double x) const {
  if (k < 0 || k > n_ + 1) {
    throw InvalidParams("polynomial index " + std::to_string(k) + " out of range");
  }
  x = clamp_domain(x);
  double prev = 0.0;
  double cur = p0_;
  for (int j = 0; j < k; ++j) {
    const double next = (a_[j] * x + b_[j]) * cur - c_[j] * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void OrthonormalBasis::evaluate_with_derivatives(double x, std::span<double> values,
                                                 std::span<double> derivs) const {
  x = clamp_domain(x);
  values[0] = p0_;
  derivs[0] = 0.0;
  for (int k = 0; k <= n_; ++k) {
    const double lin = a_[k] * x + b_[k];
    const double pm1 = k == 0 ? 0.0 : values[k - 1];
    const double dm1 = k == 0 ? 0.0 : derivs[k - 1];
    values[k + 1] = lin * values[k] - c_[k] * pm1;
    derivs[k + 1] = lin * derivs[k] + a_[k] * values[k] - c_[k] * dm1;
  }
}

OrthonormalBasis build_basis(JacobiParams params, int n) { return OrthonormalBasis(params, n); }

double cd_closed_form(const OrthonormalBasis& basis, double x, double z) {
  x = OrthonormalBasis::clamp_domain(x);
  z = OrthonormalBasis::clamp_domain(z);
  const int n = basis.degree();
  const auto lead = basis.leading();
  const double ratio = lead[n] / lead[n + 1];

  if (std::abs(x - z) < kCdSwitchThreshold) {
    // Diagonal limit at the midpoint; first-order terms cancel by symmetry.
    const double mid = 0.5 * (x + z);
    std::vector<double> v(static_cast<std::size_t>(n) + 2);
    std::vector<double> dv(v.size());
    basis.evaluate_with_derivatives(mid, v, dv);
    return ratio * (dv[n + 1] * v[n] - dv[n] * v[n + 1]);
  }
  const double pnx = basis.evaluate(n, x);
  const double pn1x = basis.evaluate(n + 1, x);
  const double pnz = basis.evaluate(n, z);
  const double pn1z = basis.evaluate(n + 1, z);
  return ratio * (pn1x * pnz - pnx * pn1z) / (x - z);
}

}  // namespace orca
