#include "orca/analysis.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "orca/errors.hpp"
#include "orca/parallel.hpp"

namespace orca {
namespace {

constexpr std::size_t kChunkModes = std::size_t{1} << 16;

// Unnormalised sums over one contiguous range of modes.
struct Partial {
  std::vector<double> block;  // (d + 1) x (dn + 1), row-major
  std::vector<double> marginal;
  std::vector<double> pairwise;  // d x d, row-major

  Partial(int n, int d)
      : block(static_cast<std::size_t>((d + 1) * (d * n + 1)), 0.0),
        marginal(static_cast<std::size_t>(d), 0.0),
        pairwise(static_cast<std::size_t>(d * d), 0.0) {}
};

void accumulate_range(const CoefficientTensor& tensor, std::size_t begin, std::size_t end,
                      Partial& out) {
  const int n = tensor.n;
  const int d = tensor.d;
  const auto width = static_cast<std::size_t>(d * n + 1);

  std::vector<int> digits = tensor.multi_index(begin);
  int q = interaction_order(digits);
  int degree = total_degree(digits);

  for (std::size_t flat = begin; flat < end; ++flat) {
    const double c = tensor.coeffs[flat];
    const double mass = c * c;
    out.block[static_cast<std::size_t>(q) * width + static_cast<std::size_t>(degree)] += mass;
    if (q == 1 || q == 2) {
      int first = -1;
      int second = -1;
      for (int j = 0; j < d; ++j) {
        if (digits[static_cast<std::size_t>(j)] == 0) continue;
        if (first < 0) {
          first = j;
        } else {
          second = j;
        }
      }
      if (q == 1) {
        out.marginal[static_cast<std::size_t>(first)] += mass;
      } else {
        out.pairwise[static_cast<std::size_t>(first * d + second)] += mass;
      }
    }

    // Odometer step: last coordinate fastest, q and N updated from the carry.
    for (int j = d - 1; j >= 0; --j) {
      int& digit = digits[static_cast<std::size_t>(j)];
      if (digit < n) {
        if (digit == 0) ++q;
        ++digit;
        ++degree;
        break;
      }
      if (n > 0) --q;
      digit = 0;
      degree -= n;
    }
  }
}

}  // namespace

int interaction_order(std::span<const int> k) noexcept {
  return static_cast<int>(std::count_if(k.begin(), k.end(), [](int v) { return v > 0; }));
}

int total_degree(std::span<const int> k) noexcept {
  int sum = 0;
  for (int v : k) sum += v;
  return sum;
}

OrcaReport analyze(const CoefficientTensor& tensor, std::span<const double> epsilons) {
  for (double eps : epsilons) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidParams("epsilons must lie in (0, 1)");
  }
  const int n = tensor.n;
  const int d = tensor.d;
  const std::size_t total = tensor.coeffs.size();

  // Fixed chunking, merged in chunk order: the result does not depend on the
  // number of worker threads.
  const std::size_t chunks = std::max<std::size_t>(1, (total + kChunkModes - 1) / kChunkModes);
  std::vector<Partial> partials(chunks, Partial(n, d));
  parallel_for(chunks, [&](std::size_t chunk) {
    const std::size_t begin = chunk * kChunkModes;
    const std::size_t end = std::min(total, begin + kChunkModes);
    if (begin < end) accumulate_range(tensor, begin, end, partials[chunk]);
  });
  Partial sums(n, d);
  for (const auto& p : partials) {
    for (std::size_t t = 0; t < sums.block.size(); ++t) sums.block[t] += p.block[t];
    for (std::size_t t = 0; t < sums.marginal.size(); ++t) sums.marginal[t] += p.marginal[t];
    for (std::size_t t = 0; t < sums.pairwise.size(); ++t) sums.pairwise[t] += p.pairwise[t];
  }

  double norm_sq = 0.0;
  for (double v : sums.block) norm_sq += v;
  if (!(norm_sq > 0.0)) throw DegenerateModel();

  OrcaReport report;
  report.n = n;
  report.d = d;
  report.norm_sq = norm_sq;
  const auto orders = static_cast<std::size_t>(d + 1);
  const auto degrees = static_cast<std::size_t>(d * n + 1);
  report.block.assign(orders, std::vector<double>(degrees, 0.0));
  report.by_order.assign(orders, 0.0);
  report.by_degree.assign(degrees, 0.0);
  for (std::size_t q = 0; q < orders; ++q) {
    for (std::size_t deg = 0; deg < degrees; ++deg) {
      const double okc = sums.block[q * degrees + deg] / norm_sq;
      report.block[q][deg] = okc;
      report.by_order[q] += okc;
    }
  }
  for (std::size_t deg = 0; deg < degrees; ++deg) {
    for (std::size_t q = 0; q < orders; ++q) report.by_degree[deg] += report.block[q][deg];
  }

  const auto dims = static_cast<std::size_t>(d);
  report.marginal.resize(dims);
  for (std::size_t i = 0; i < dims; ++i) report.marginal[i] = sums.marginal[i] / norm_sq;
  report.pairwise.assign(dims, std::vector<double>(dims, 0.0));
  for (std::size_t i = 0; i < dims; ++i) {
    for (std::size_t j = i + 1; j < dims; ++j) {
      report.pairwise[i][j] = sums.pairwise[i * dims + j] / norm_sq;
    }
  }

  for (std::size_t deg = 0; deg < degrees; ++deg) {
    (deg % 2 == 0 ? report.even_mass : report.odd_mass) += report.by_degree[deg];
  }
  for (std::size_t deg = 1; deg < degrees; ++deg) {
    if (report.by_degree[deg] > report.by_degree[static_cast<std::size_t>(report.spectral_peak)]) {
      report.spectral_peak = static_cast<int>(deg);
    }
  }

  std::vector<double> sorted(epsilons.begin(), epsilons.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const auto cumulative = degree_profile_cumulative(report);
  for (double eps : sorted) {
    SpectralThreshold t{eps, static_cast<int>(degrees) - 1, cumulative.back()};
    for (std::size_t deg = 0; deg < degrees; ++deg) {
      if (cumulative[deg] >= 1.0 - eps) {
        t.degree = static_cast<int>(deg);
        t.coverage = cumulative[deg];
        break;
      }
    }
    report.thresholds.push_back(t);
  }
  return report;
}

double subset_contribution(const CoefficientTensor& tensor, std::span<const int> subset) {
  if (subset.empty()) throw InvalidParams("subset must be nonempty");
  std::vector<int> coords(subset.begin(), subset.end());
  std::sort(coords.begin(), coords.end());
  for (std::size_t t = 0; t < coords.size(); ++t) {
    if (coords[t] < 0 || coords[t] >= tensor.d) throw InvalidParams("subset index out of range");
    if (t > 0 && coords[t] == coords[t - 1]) throw InvalidParams("subset has repeated indices");
  }
  if (!(tensor.rkhs_norm_sq > 0.0)) throw DegenerateModel();
  if (tensor.n == 0) return 0.0;

  // Enumerate k with k_j in 1..n on the subset and 0 elsewhere.
  std::vector<int> k(static_cast<std::size_t>(tensor.d), 0);
  for (int c : coords) k[static_cast<std::size_t>(c)] = 1;
  double mass = 0.0;
  while (true) {
    const double c = tensor.coeffs[tensor.flat_index(k)];
    mass += c * c;
    std::size_t t = coords.size();
    while (t > 0) {
      int& digit = k[static_cast<std::size_t>(coords[t - 1])];
      if (digit < tensor.n) {
        ++digit;
        break;
      }
      digit = 1;
      --t;
    }
    if (t == 0) break;
  }
  return mass / tensor.rkhs_norm_sq;
}

std::vector<double> degree_profile_cumulative(const OrcaReport& report) {
  std::vector<double> cumulative(report.by_degree.size());
  double acc = 0.0;
  for (std::size_t deg = 0; deg < cumulative.size(); ++deg) {
    acc += report.by_degree[deg];
    cumulative[deg] = acc;
  }
  return cumulative;
}

}  // namespace orca
