#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "orca/analysis.hpp"
#include "orca/dataset.hpp"

using namespace orca;

namespace {

const Dataset& spiral() {
  static const Dataset data = generate_spiral({});
  return data;
}

const TrainedModel& spiral_model(int n) {
  static std::map<int, TrainedModel> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, train(KernelSpec(build_basis({0, 0}, n), 2), spiral(), SvmConfig{})).first;
  }
  return it->second;
}

void BM_Gram(benchmark::State& state) {
  const KernelSpec spec(build_basis({0, 0}, static_cast<int>(state.range(0))), 2);
  for (auto _ : state) benchmark::DoNotOptimize(gram(spec, spiral().rescaled));
}
BENCHMARK(BM_Gram)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Train(benchmark::State& state) {
  const KernelSpec spec(build_basis({0, 0}, static_cast<int>(state.range(0))), 2);
  const auto g = gram(spec, spiral().rescaled);
  for (auto _ : state) benchmark::DoNotOptimize(train(spec, spiral(), g, SvmConfig{}));
}
BENCHMARK(BM_Train)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ExtractSpiral(benchmark::State& state) {
  const auto& model = spiral_model(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(extract_coefficients(model));
}
BENCHMARK(BM_ExtractSpiral)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

// Echocardiogram-shaped workload: 61 samples in d = 5.
void BM_ExtractFiveDim(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd x(61, 5);
  std::vector<double> s(61);
  for (int i = 0; i < 61; ++i) {
    for (int j = 0; j < 5; ++j) x(i, j) = u(rng);
    s[i] = u(rng);
  }
  const KernelSpec spec(build_basis({0, 0}, n), 5);
  for (auto _ : state) benchmark::DoNotOptimize(extract_coefficients(spec, x, s));
  state.counters["modes"] = static_cast<double>(mode_count(n, 5));
}
BENCHMARK(BM_ExtractFiveDim)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_Analyze(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0, 1);
  CoefficientTensor t{n, 5, std::vector<double>(mode_count(n, 5))};
  for (double& c : t.coeffs) c = g(rng);
  t.refresh_norm();
  for (auto _ : state) benchmark::DoNotOptimize(analyze(t));
  state.counters["modes"] = static_cast<double>(t.size());
}
BENCHMARK(BM_Analyze)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
