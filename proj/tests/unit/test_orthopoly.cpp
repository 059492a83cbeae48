#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "orca/errors.hpp"
#include "orca/orthopoly.hpp"
#include "orca/quadrature.hpp"

using namespace orca;

namespace {

const JacobiParams kParamSets[] = {{0, 0}, {0.5, 0.5}, {1, 1}, {2, 2}, {2.5, 1.2}, {4.3, 1.8}, {0.8, 2.7}};

double max_gram_deviation(JacobiParams p, int n, int nodes) {
  const auto basis = build_basis(p, n);
  const auto rule = gauss_jacobi(p, nodes);
  std::vector<std::vector<double>> vals;
  for (double x : rule.nodes) vals.push_back(basis.evaluate_all(x));
  double worst = 0.0;
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= n; ++j) {
      double s = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) s += rule.weights[q] * vals[q][k] * vals[q][j];
      worst = std::max(worst, std::abs(s - (k == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("legendre p0 and p1") {
  const auto b0 = build_basis({0, 0}, 0);
  for (double x : {-1.0, -0.3, 0.0, 0.8, 1.0}) CHECK(b0.evaluate_all(x)[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  const auto b1 = build_basis({0, 0}, 1);
  for (double x : {-1.0, -0.3, 0.4, 1.0}) CHECK(b1.evaluate_all(x)[1] == doctest::Approx(std::sqrt(1.5) * x).epsilon(1e-14));
}

TEST_CASE("legendre n=2 at the origin") {
  const auto v = build_basis({0, 0}, 2).evaluate_all(0.0);
  REQUIRE(v.size() == 3);
  CHECK(v[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(v[1]) < 1e-16);
  CHECK(v[2] == doctest::Approx(-std::sqrt(5.0 / 8.0)).epsilon(1e-15));
}

TEST_CASE("first entry is the constant 1/sqrt(h0)") {
  for (const auto& p : kParamSets) {
    const auto b = build_basis(p, 5);
    const double want = 1.0 / std::sqrt(std::exp(jacobi_log_norm(p, 0)));
    for (double x : {-0.9, 0.1, 0.77}) CHECK(b.evaluate_all(x)[0] == doctest::Approx(want).epsilon(1e-14));
  }
}

TEST_CASE("recurrence agrees with the explicit binomial formula") {
  const auto b = build_basis({0, 0}, 16);
  const auto v = b.evaluate_all(0.73);
  for (int k = 0; k <= 16; ++k) CHECK(oracle::rel_err(v[k], oracle::orthonormal(k, 0, 0, 0.73)) < 1e-12);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const auto& p : kParamSets) {
    const auto bp = build_basis(p, 12);
    for (int t = 0; t < 20; ++t) {
      const double x = u(rng);
      const auto w = bp.evaluate_all(x);
      for (int k = 0; k <= 12; ++k) CHECK(std::abs(w[k] - oracle::orthonormal(k, p.alpha, p.beta, x)) < 1e-10);
    }
  }
}

TEST_CASE("orthonormality under Gauss-Jacobi quadrature") {
  for (const auto& p : kParamSets) {
    for (int n : {0, 1, 5, 16, 30}) {
      CAPTURE(p.alpha);
      CAPTURE(p.beta);
      CAPTURE(n);
      CHECK(max_gram_deviation(p, n, 2 * n + 2) < 1e-10);
    }
  }
  CHECK(max_gram_deviation({2.5, 1.2}, 16, 64) < 1e-10);
}

TEST_CASE("leading coefficients are positive and consistent with the recurrence") {
  for (const auto& p : kParamSets) {
    const auto b = build_basis(p, 20);
    const auto lead = b.leading();
    const auto a = b.recur_a();
    REQUIRE(lead.size() == 22);
    for (int k = 0; k <= 20; ++k) {
      CHECK(lead[k] > 0.0);
      CHECK(oracle::rel_err(lead[k + 1] / lead[k], a[k]) < 1e-12);
    }
  }
}

TEST_CASE("legendre parity") {
  const auto b = build_basis({0, 0}, 15);
  for (double x : {0.2, 0.55, 0.93}) {
    const auto pos = b.evaluate_all(x);
    const auto neg = b.evaluate_all(-x);
    for (int k = 0; k <= 15; ++k) CHECK(neg[k] == doctest::Approx((k % 2 ? -1.0 : 1.0) * pos[k]).epsilon(1e-13));
  }
}

TEST_CASE("closed form kernel") {
  SUBCASE("constant mode only") {
    const auto b = build_basis({0, 0}, 0);
    CHECK(cd_closed_form(b, 0.1, -0.7) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(cd_closed_form(b, 0.4, 0.4) == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("n=8 off and on the diagonal") {
    const auto b = build_basis({0, 0}, 8);
    auto direct = [&](double x, double z) {
      const auto px = b.evaluate_all(x), pz = b.evaluate_all(z);
      double s = 0;
      for (int k = 0; k <= 8; ++k) s += px[k] * pz[k];
      return s;
    };
    CHECK(std::abs(cd_closed_form(b, 0.3, -0.4) - direct(0.3, -0.4)) < 1e-9);
    CHECK(std::abs(cd_closed_form(b, 0.3, 0.3) - direct(0.3, 0.3)) < 1e-9);
    CHECK(std::abs(cd_closed_form(b, 0.3, 0.3 + 5e-8) - direct(0.3, 0.3 + 5e-8)) < 1e-9);
  }
  SUBCASE("random pairs, all parameter sets, n <= 20") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    std::uniform_int_distribution<int> deg(0, 20);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const auto& p = kParamSets[t % std::size(kParamSets)];
      const auto b = build_basis(p, deg(rng));
      const double x = u(rng), z = u(rng);
      const auto px = b.evaluate_all(x), pz = b.evaluate_all(z);
      double s = 0;
      for (std::size_t k = 0; k < px.size(); ++k) s += px[k] * pz[k];
      worst = std::max(worst, std::abs(cd_closed_form(b, x, z) - s));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("derivatives match finite differences") {
  const auto b = build_basis({2.5, 1.2}, 10);
  std::vector<double> v(12), dv(12), vp(12), dvp(12), vm(12), dvm(12);
  const double x = 0.37, h = 1e-6;
  b.evaluate_with_derivatives(x, v, dv);
  b.evaluate_with_derivatives(x + h, vp, dvp);
  b.evaluate_with_derivatives(x - h, vm, dvm);
  for (int k = 0; k <= 11; ++k) CHECK(std::abs(dv[k] - (vp[k] - vm[k]) / (2 * h)) < 1e-5 * (1 + std::abs(dv[k])));
}

TEST_CASE("domain handling") {
  const auto b = build_basis({0, 0}, 3);
  CHECK_NOTHROW(b.evaluate_all(1.0 + 5e-10));
  CHECK(b.evaluate_all(1.0 + 5e-10) == b.evaluate_all(1.0));
  CHECK_THROWS_AS(b.evaluate_all(1.01), DomainError);
  CHECK_THROWS_AS(b.evaluate_all(std::nan("")), DomainError);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(build_basis({-1.0, 0.0}, 3), InvalidParams);
  CHECK_THROWS_AS(build_basis({0.0, -1.5}, 3), InvalidParams);
  CHECK_THROWS_AS(build_basis({0.0, 0.0}, -1), InvalidParams);
  CHECK_THROWS_AS(build_basis({0.0, 0.0}, kMaxDegree + 1), InvalidParams);
  CHECK_NOTHROW(build_basis({-0.5, -0.5}, 4));
}
