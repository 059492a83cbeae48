#include "orca/kernel.hpp"

#include <Eigen/Eigenvalues>
#include <cstring>
#include <limits>
#include <sstream>

#include "orca/errors.hpp"
#include "orca/parallel.hpp"

namespace orca {

KernelSpec::KernelSpec(OrthonormalBasis b, int dim) : basis(std::move(b)), d(dim) {
  if (dim < 1) throw InvalidParams("input dimension must be positive");
}

std::uint64_t mode_count(int n, int d) noexcept {
  const std::uint64_t base = static_cast<std::uint64_t>(n) + 1;
  std::uint64_t total = 1;
  for (int j = 0; j < d; ++j) {
    if (total > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= base;
  }
  return total;
}

std::uint64_t KernelSpec::feature_dimension() const noexcept { return mode_count(degree(), d); }

FeatureTable::FeatureTable(const OrthonormalBasis& basis, const Eigen::MatrixXd& points)
    : m_(static_cast<std::size_t>(points.rows())),
      d_(static_cast<std::size_t>(points.cols())),
      width_(static_cast<std::size_t>(basis.size())),
      values_(m_ * d_ * width_) {
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < d_; ++j) {
      basis.evaluate_all(points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                         std::span<double>(values_.data() + (i * d_ + j) * width_, width_));
    }
  }
}

namespace {

double dot(std::span<const double> u, std::span<const double> v) {
  double acc = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) acc += u[k] * v[k];
  return acc;
}

}  // namespace

double kernel_1d(const OrthonormalBasis& basis, double x, double z) {
  const auto px = basis.evaluate_all(x);
  const auto pz = basis.evaluate_all(z);
  return dot(px, pz);
}

double kernel_nd(const KernelSpec& spec, std::span<const double> x, std::span<const double> z) {
  const auto d = static_cast<std::size_t>(spec.d);
  if (x.size() != d) throw DimensionMismatch(d, x.size());
  if (z.size() != d) throw DimensionMismatch(d, z.size());
  double value = 1.0;
  for (std::size_t j = 0; j < d; ++j) value *= kernel_1d(spec.basis, x[j], z[j]);
  return value;
}

std::string spec_digest(const KernelSpec& spec, const Eigen::MatrixXd& points) {
  // FNV-1a over the raw bytes of the point matrix.
  std::uint64_t hash = 1469598103934665603ULL;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
      const double v = points(i, j);
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &v, sizeof(double));
      for (unsigned char byte : bytes) {
        hash ^= byte;
        hash *= 1099511628211ULL;
      }
    }
  }
  std::ostringstream out;
  out << "jacobi(" << spec.basis.params().alpha << "," << spec.basis.params().beta
      << ");n=" << spec.degree() << ";d=" << spec.d << ";m=" << points.rows() << ";fnv=" << std::hex
      << hash;
  return out.str();
}

GramMatrix gram(const KernelSpec& spec, const Eigen::MatrixXd& points) {
  const auto d = static_cast<std::size_t>(spec.d);
  if (static_cast<std::size_t>(points.cols()) != d) {
    throw DimensionMismatch(d, static_cast<std::size_t>(points.cols()));
  }
  const FeatureTable table(spec.basis, points);
  const auto m = static_cast<Eigen::Index>(table.samples());

  GramMatrix result;
  result.entries.resize(m, m);
  result.spec_digest = spec_digest(spec, points);

  parallel_for(static_cast<std::size_t>(m), [&](std::size_t row) {
    const auto i = static_cast<Eigen::Index>(row);
    for (Eigen::Index j = i; j < m; ++j) {
      double value = 1.0;
      for (std::size_t dim = 0; dim < d; ++dim) {
        value *= dot(table.row(row, dim), table.row(static_cast<std::size_t>(j), dim));
      }
      result.entries(i, j) = value;
    }
  });
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) result.entries(i, j) = result.entries(j, i);
  }
  return result;
}

EigenRange eigen_range(const Eigen::MatrixXd& symmetric) {
  if (symmetric.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigenvalue computation failed");
  return {solver.eigenvalues().minCoeff(), solver.eigenvalues().maxCoeff()};
}

bool is_numerically_psd(const GramMatrix& gram, double rel_tol) {
  const auto range = eigen_range(gram.entries);
  return range.min >= -rel_tol * std::max(range.max, 0.0);
}

}  // namespace orca
