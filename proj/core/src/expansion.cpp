#include "orca/expansion.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>

#include "orca/errors.hpp"
#include "orca/io.hpp"
#include "orca/parallel.hpp"

namespace orca {
namespace {

constexpr std::size_t kParallelThreshold = std::size_t{1} << 16;

std::size_t checked_modes(int n, int d) {
  const auto count = mode_count(n, d);
  if (count > (std::uint64_t{1} << 40)) {
    throw BudgetExceeded("(n + 1)^d = " + std::to_string(count) + " modes is not addressable");
  }
  return static_cast<std::size_t>(count);
}

// out = a (x) b with a's index slowest.
void kron(std::span<const double> a, std::span<const double> b, std::vector<double>& out) {
  out.resize(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = a[i];
    double* dst = out.data() + i * b.size();
    for (std::size_t j = 0; j < b.size(); ++j) dst[j] = ai * b[j];
  }
}

// Kronecker product of the univariate feature rows of one sample for
// coordinates [first, d).
void tail_product(const FeatureTable& table, std::size_t sample, std::size_t first,
                  std::vector<double>& out, std::vector<double>& scratch) {
  out.assign(1, 1.0);
  for (std::size_t j = first; j < table.dims(); ++j) {
    kron(out, table.row(sample, j), scratch);
    out.swap(scratch);
  }
}

}  // namespace

std::size_t CoefficientTensor::flat_index(std::span<const int> k) const {
  if (k.size() != static_cast<std::size_t>(d)) throw DimensionMismatch(d, k.size());
  std::size_t flat = 0;
  for (int kj : k) {
    if (kj < 0 || kj > n) throw InvalidParams("multi-index entry out of range");
    flat = flat * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(kj);
  }
  return flat;
}

std::vector<int> CoefficientTensor::multi_index(std::size_t flat) const {
  std::vector<int> k(static_cast<std::size_t>(d));
  const auto base = static_cast<std::size_t>(n + 1);
  for (int j = d - 1; j >= 0; --j) {
    k[static_cast<std::size_t>(j)] = static_cast<int>(flat % base);
    flat /= base;
  }
  return k;
}

void CoefficientTensor::refresh_norm() {
  double acc = 0.0;
  for (double c : coeffs) acc += c * c;
  rkhs_norm_sq = acc;
}

Eigen::MatrixXd design_matrix(const KernelSpec& spec, const Eigen::MatrixXd& inputs,
                              std::uint64_t element_cap) {
  const auto d = static_cast<std::size_t>(spec.d);
  if (static_cast<std::size_t>(inputs.cols()) != d) {
    throw DimensionMismatch(d, static_cast<std::size_t>(inputs.cols()));
  }
  const auto modes = mode_count(spec.degree(), spec.d);
  const auto m = static_cast<std::uint64_t>(inputs.rows());
  if (modes > element_cap || (m > 0 && modes > element_cap / m)) {
    throw BudgetExceeded("dense design matrix needs " + std::to_string(m) + " x " +
                         std::to_string(modes) + " entries; use extract_coefficients");
  }
  const FeatureTable table(spec.basis, inputs);
  Eigen::MatrixXd p(inputs.rows(), static_cast<Eigen::Index>(modes));
  std::vector<double> row, scratch;
  for (Eigen::Index i = 0; i < inputs.rows(); ++i) {
    tail_product(table, static_cast<std::size_t>(i), 0, row, scratch);
    for (std::size_t f = 0; f < row.size(); ++f) p(i, static_cast<Eigen::Index>(f)) = row[f];
  }
  return p;
}

CoefficientTensor extract_coefficients(const KernelSpec& spec, const Eigen::MatrixXd& inputs,
                                       std::span<const double> signed_duals) {
  const auto d = static_cast<std::size_t>(spec.d);
  if (static_cast<std::size_t>(inputs.cols()) != d) {
    throw DimensionMismatch(d, static_cast<std::size_t>(inputs.cols()));
  }
  if (static_cast<std::size_t>(inputs.rows()) != signed_duals.size()) {
    throw DimensionMismatch(static_cast<std::size_t>(inputs.rows()), signed_duals.size());
  }

  CoefficientTensor tensor;
  tensor.n = spec.degree();
  tensor.d = spec.d;
  tensor.coeffs.assign(checked_modes(tensor.n, tensor.d), 0.0);

  const FeatureTable table(spec.basis, inputs);
  const auto width = table.width();
  const std::size_t slice = tensor.coeffs.size() / width;
  std::vector<double> tail, scratch;
  for (std::size_t i = 0; i < signed_duals.size(); ++i) {
    const double s = signed_duals[i];
    if (s == 0.0) continue;
    tail_product(table, i, 1, tail, scratch);
    const auto lead = table.row(i, 0);
    // Each slice of the first coordinate is owned by exactly one task, and every
    // coefficient sees the samples in the same order.
    auto accumulate = [&](std::size_t k1) {
      const double scale = s * lead[k1];
      double* dst = tensor.coeffs.data() + k1 * slice;
      for (std::size_t t = 0; t < slice; ++t) dst[t] += scale * tail[t];
    };
    if (tensor.coeffs.size() < kParallelThreshold) {
      for (std::size_t k1 = 0; k1 < width; ++k1) accumulate(k1);
    } else {
      parallel_for(width, accumulate);
    }
  }
  tensor.refresh_norm();
  return tensor;
}

CoefficientTensor extract_coefficients(const TrainedModel& model) {
  return extract_coefficients(model.spec, model.inputs, model.signed_duals);
}

double rkhs_norm_sq_via_gram(const TrainedModel& model, const GramMatrix& gram) {
  const auto m = static_cast<Eigen::Index>(model.samples());
  if (gram.entries.rows() != m || gram.entries.cols() != m) {
    throw DimensionMismatch(static_cast<std::size_t>(m),
                            static_cast<std::size_t>(gram.entries.rows()));
  }
  const Eigen::Map<const Eigen::VectorXd> s(model.signed_duals.data(), m);
  return s.dot(gram.entries * s);
}

double evaluate_expansion(const CoefficientTensor& tensor, const OrthonormalBasis& basis,
                          std::span<const double> x) {
  const auto d = static_cast<std::size_t>(tensor.d);
  if (x.size() != d) throw DimensionMismatch(d, x.size());
  if (basis.degree() != tensor.n) throw DimensionMismatch(tensor.n, basis.degree());

  const auto width = static_cast<std::size_t>(tensor.n + 1);
  std::vector<double> phi(width);
  std::vector<double> current;
  std::vector<double> next;
  const std::vector<double>* src = &tensor.coeffs;
  for (std::size_t j = d; j-- > 0;) {
    basis.evaluate_all(x[j], phi);
    const std::size_t outer = src->size() / width;
    next.assign(outer, 0.0);
    for (std::size_t a = 0; a < outer; ++a) {
      const double* block = src->data() + a * width;
      double acc = 0.0;
      for (std::size_t k = 0; k < width; ++k) acc += block[k] * phi[k];
      next[a] = acc;
    }
    current.swap(next);
    src = &current;
  }
  return current.at(0);
}

namespace {

constexpr std::array<char, 8> kMagic = {'O', 'R', 'C', 'A', 'C', 'O', 'E', 'F'};

template <typename T>
void put_le(std::string& out, T value) {
  auto bits = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
  out.append(reinterpret_cast<const char*>(bits.data()), bits.size());
}

template <typename T>
T get_le(std::string_view bytes, std::size_t offset) {
  std::array<unsigned char, sizeof(T)> bits{};
  std::memcpy(bits.data(), bytes.data() + offset, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
  return std::bit_cast<T>(bits);
}

}  // namespace

std::string coefficients_to_bytes(const CoefficientTensor& tensor) {
  std::string out;
  out.reserve(20 + tensor.coeffs.size() * sizeof(double));
  out.append(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kCoefficientFormatVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(tensor.n));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(tensor.d));
  for (double c : tensor.coeffs) put_le<double>(out, c);
  return out;
}

CoefficientTensor coefficients_from_bytes(std::string_view bytes) {
  constexpr std::size_t kHeader = 8 + 3 * sizeof(std::uint32_t);
  if (bytes.size() < kHeader || std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
    throw IoError("not an ORCACOEF coefficient dump");
  }
  if (get_le<std::uint32_t>(bytes, 8) != kCoefficientFormatVersion) {
    throw IoError("unsupported coefficient dump version");
  }
  CoefficientTensor tensor;
  tensor.n = static_cast<int>(get_le<std::uint32_t>(bytes, 12));
  tensor.d = static_cast<int>(get_le<std::uint32_t>(bytes, 16));
  const std::size_t count = checked_modes(tensor.n, tensor.d);
  if (bytes.size() != kHeader + count * sizeof(double)) {
    throw IoError("coefficient dump has the wrong length");
  }
  tensor.coeffs.resize(count);
  for (std::size_t t = 0; t < count; ++t) {
    tensor.coeffs[t] = get_le<double>(bytes, kHeader + t * sizeof(double));
  }
  tensor.refresh_norm();
  return tensor;
}

void save_coefficients(const std::string& path, const CoefficientTensor& tensor) {
  write_file_atomic(path, coefficients_to_bytes(tensor));
}

CoefficientTensor load_coefficients(const std::string& path) {
  return coefficients_from_bytes(read_file(path));
}

}  // namespace orca
