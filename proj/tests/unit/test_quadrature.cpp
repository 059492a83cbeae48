#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "orca/quadrature.hpp"

using namespace orca;

TEST_CASE("weighted moments are exact up to degree 2N-1") {
  const JacobiParams params[] = {{0, 0}, {0.5, 0.5}, {2.5, 1.2}, {4.3, 1.8}, {0.8, 2.7}, {-0.5, -0.5}};
  for (const auto& p : params) {
    const int count = 8;
    const auto rule = gauss_jacobi(p, count);
    for (int deg = 0; deg <= 2 * count - 1; ++deg) {
      double s = 0.0;
      for (int i = 0; i < count; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], deg);
      const double want = oracle::weighted_moment(deg, p.alpha, p.beta);
      CAPTURE(deg);
      CHECK(std::abs(s - want) < 1e-12 * (1 + std::abs(want)));
    }
  }
}

TEST_CASE("three-point Gauss-Legendre rule") {
  const auto rule = gauss_jacobi({0, 0}, 3);
  REQUIRE(rule.nodes.size() == 3);
  const double r = std::sqrt(0.6);
  CHECK(rule.nodes[0] == doctest::Approx(-r).epsilon(1e-14));
  CHECK(std::abs(rule.nodes[1]) < 1e-14);
  CHECK(rule.nodes[2] == doctest::Approx(r).epsilon(1e-14));
  CHECK(rule.weights[0] == doctest::Approx(5.0 / 9).epsilon(1e-14));
  CHECK(rule.weights[1] == doctest::Approx(8.0 / 9).epsilon(1e-14));
  CHECK(rule.weights[2] == doctest::Approx(5.0 / 9).epsilon(1e-14));
}

TEST_CASE("nodes ascend inside the interval and weights are positive") {
  const auto rule = gauss_jacobi({2.5, 1.2}, 40);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    CHECK(rule.nodes[i] > -1.0);
    CHECK(rule.nodes[i] < 1.0);
    CHECK(rule.weights[i] > 0.0);
    if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
  }
}
