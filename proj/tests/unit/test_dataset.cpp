#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "orca/dataset.hpp"
#include "orca/errors.hpp"

using namespace orca;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

// UCI layout: survival, still-alive, age, pericardial-effusion,
// fractional-shortening, epss, lvdd, wall-motion-score, wall-motion-index,
// mult, name, group, alive-at-1.
const char* kEchoSample =
    "11,0,71,0,0.260,9,4.600,14,1,1,name,1,0\n"
    "19,0,72,0,0.380,6,4.100,14,1.700,0.588,name,1,0\n"
    "16,0,55,0,0.260,4,3.420,14,1,1,name,1,0\n"
    "57,0,60,0,0.253,12.062,4.603,16,1.450,0.788,name,1,0\n"
    "19,1,57,0,0.160,22,5.750,18,2.250,0.571,name,1,0\n"
    "26,0,68,0,0.260,?,4.310,12,1,0.857,name,1,0\n"
    "?,1,60,0,0.200,10,4.620,14,1.400,0.714,name,1,?\n"
    "12,?,62,0,0.300,9,4.100,14,1,1,name,1,0\n";

}  // namespace

TEST_CASE("rescale") {
  Eigen::MatrixXd raw(3, 2);
  raw << 2, 5, 4, 5, 6, 5;
  const auto r = rescale(raw);
  CHECK(r.rescaled(0, 0) == -1.0);
  CHECK(r.rescaled(1, 0) == 0.0);
  CHECK(r.rescaled(2, 0) == 1.0);
  for (int i = 0; i < 3; ++i) CHECK(r.rescaled(i, 1) == 0.0);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("x2") != std::string::npos);
  CHECK(r.map.apply(1, 5.0) == 0.0);
}

TEST_CASE("rescale round trip") {
  const auto data = generate_spiral({.seed = 4});
  for (Eigen::Index i = 0; i < data.raw.rows(); ++i)
    for (Eigen::Index j = 0; j < 2; ++j) {
      const double back = data.rescale_map.invert(static_cast<std::size_t>(j), data.rescaled(i, j));
      CHECK(std::abs(back - data.raw(i, j)) <= 1e-12 * std::max(1.0, std::abs(data.raw(i, j))));
    }
  CHECK(data.rescaled.minCoeff() == -1.0);
  CHECK(data.rescaled.maxCoeff() == 1.0);
}

TEST_CASE("spiral geometry") {
  SUBCASE("two points per class, no noise") {
    const auto data = generate_spiral({.points_per_class = 2, .noise_sd = 0.0});
    CHECK(data.raw(0, 0) == doctest::Approx(0.15));
    CHECK(std::abs(data.raw(0, 1)) < 1e-15);
    CHECK(data.raw(1, 0) == doctest::Approx(-1.0));
    CHECK(std::abs(data.raw(1, 1)) < 1e-15);
  }
  SUBCASE("default size and balance") {
    const auto data = generate_spiral({});
    CHECK(data.size() == 300);
    int sum = 0;
    for (int y : data.labels) sum += y;
    CHECK(sum == 0);
  }
  SUBCASE("class -1 is the rotated arm") {
    for (double noise : {0.0, 0.05}) {
      const auto data = generate_spiral({.points_per_class = 20, .noise_sd = noise});
      for (int t = 0; t < 20; ++t) {
        CHECK(data.labels[t] == 1);
        CHECK(data.labels[20 + t] == -1);
        CHECK(data.raw(20 + t, 0) == -data.raw(t, 0));
        CHECK(data.raw(20 + t, 1) == -data.raw(t, 1));
      }
    }
  }
  SUBCASE("seeded determinism") {
    const SpiralConfig config{.seed = 17};
    CHECK(generate_spiral(config).raw == generate_spiral(config).raw);
    CHECK(generate_spiral(config).raw != generate_spiral({.seed = 18}).raw);
  }
  SUBCASE("invalid configs") {
    CHECK_THROWS_AS(generate_spiral({.points_per_class = 0}), InvalidParams);
    CHECK_THROWS_AS(generate_spiral({.noise_sd = -1}), InvalidParams);
    CHECK_THROWS_AS(generate_spiral({.inner_radius = 1.0, .outer_radius = 0.5}), InvalidParams);
  }
}

TEST_CASE("interchange csv round trip") {
  const auto data = generate_spiral({.points_per_class = 15, .seed = 2});
  const auto path = temp_path("orca_dataset_test.csv");
  write_dataset_csv(path, data);
  const auto back = read_dataset_csv(path);
  CHECK(back.raw == data.raw);
  CHECK(back.labels == data.labels);
  CHECK(dataset_csv(back) == dataset_csv(data));
  CHECK(dataset_csv(data).substr(0, 12) == "x1,x2,label\n");
  std::filesystem::remove(path);
}

TEST_CASE("interchange csv errors") {
  const auto path = temp_path("orca_dataset_bad.csv");
  write_text(path, "x1,x2,label\n0.1,0.2,1\n0.3,0.4,2\n");
  CHECK_THROWS_AS(read_dataset_csv(path), MalformedRow);
  write_text(path, "x1,x2,label\n0.1,1\n");
  try {
    read_dataset_csv(path);
    FAIL("expected MalformedRow");
  } catch (const MalformedRow& e) {
    CHECK(e.row() == 2);
  }
  write_text(path, "a,b,label\n0.1,0.2,1\n");
  CHECK_THROWS_AS(read_dataset_csv(path), MalformedRow);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_dataset_csv(path), FileNotFound);
}

TEST_CASE("echocardiogram parser") {
  const auto path = temp_path("orca_echo_test.data");
  write_text(path, kEchoSample);
  const auto data = load_echocardiogram(path);
  CHECK(data.size() == 6);  // missing epss and missing label rows dropped
  CHECK(data.dims() == 5);
  CHECK(data.labels == std::vector<int>{-1, -1, -1, -1, 1, 1});
  CHECK(data.raw(0, 0) == 71);
  CHECK(data.raw(0, 1) == 0.26);
  CHECK(data.raw(0, 2) == 9);
  CHECK(data.raw(0, 3) == 4.6);
  CHECK(data.raw(0, 4) == 1);
  CHECK(data.raw(5, 4) == 1.4);
  bool warned = false;
  for (const auto& w : data.warnings) warned |= w.find("expected 61") != std::string::npos;
  CHECK(warned);

  write_text(path, std::string(kEchoSample) + "1,2,3\n");
  try {
    load_echocardiogram(path);
    FAIL("expected MalformedRow");
  } catch (const MalformedRow& e) {
    CHECK(e.row() == 9);
  }
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_echocardiogram(path), FileNotFound);
}

TEST_CASE("dataset validation") {
  Eigen::MatrixXd raw(2, 1);
  raw << 0, 1;
  CHECK_THROWS_AS(make_dataset("bad", raw, {1, 0}), InvalidParams);
  CHECK_THROWS_AS(make_dataset("bad", raw, {1}), DimensionMismatch);
}
