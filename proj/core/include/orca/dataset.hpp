#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace orca {

/// Per-feature affine map x -> 2 (x - lo) / (hi - lo) - 1 onto [-1, 1].
struct FeatureRange {
  double lo = 0.0;
  double hi = 1.0;
  friend bool operator==(const FeatureRange&, const FeatureRange&) = default;
};

class RescaleMap {
 public:
  RescaleMap() = default;
  explicit RescaleMap(std::vector<FeatureRange> ranges) : ranges_(std::move(ranges)) {}

  std::size_t dims() const noexcept { return ranges_.size(); }
  const std::vector<FeatureRange>& ranges() const noexcept { return ranges_; }

  double apply(std::size_t feature, double raw) const;
  double invert(std::size_t feature, double scaled) const;
  /// Maps a full raw point. Throws DimensionMismatch.
  std::vector<double> apply(std::span<const double> raw) const;

 private:
  std::vector<FeatureRange> ranges_;
};

struct RescaleResult {
  Eigen::MatrixXd rescaled;
  RescaleMap map;
  std::vector<std::string> warnings;
};

/// Min-max rescaling of every column to [-1, 1]. Column extremes land on -1 and
/// +1 exactly. A constant column maps to 0 and records the unit-width range
/// (v - 0.5, v + 0.5) together with a warning.
RescaleResult rescale(const Eigen::MatrixXd& raw);

/// A labelled sample set: raw features, their [-1, 1] image and +-1 labels.
struct Dataset {
  std::string name;
  Eigen::MatrixXd raw;
  Eigen::MatrixXd rescaled;
  std::vector<int> labels;
  RescaleMap rescale_map;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t dims() const noexcept { return static_cast<std::size_t>(raw.cols()); }
};

/// Builds a dataset from raw features and labels, rescaling every column.
/// Throws InvalidParams on labels outside {-1, +1}, DimensionMismatch when the
/// label count differs from the row count.
Dataset make_dataset(std::string name, Eigen::MatrixXd raw, std::vector<int> labels);

struct SpiralConfig {
  int points_per_class = 150;
  double turns = 1.5;
  double noise_sd = 0.02;
  double inner_radius = 0.15;
  double outer_radius = 1.0;
  std::uint64_t seed = 0;
};

/// Two interleaved spiral arms. Class +1 point t sits at angle
/// turns * 2 pi * t / (P - 1) and radius inner + (outer - inner) * t / (P - 1);
/// Gaussian noise is added per coordinate of the class +1 arm, and class -1 is
/// that noisy arm rotated by pi. Rows are ordered class +1 first, then class -1.
Dataset generate_spiral(const SpiralConfig& config);

/// Rows reported for the UCI echocardiogram file after dropping records with
/// missing values in the used columns.
inline constexpr std::size_t kEchocardiogramExpectedRows = 61;

/// Reads the UCI echocardiogram file (13 comma-separated columns, "?" for
/// missing). Features: age, fractional-shortening, epss, lvdd,
/// wall-motion-index; label: still-alive (1 -> +1, 0 -> -1). Rows missing any
/// of these six values are dropped.
Dataset load_echocardiogram(const std::string& path);

/// Interchange CSV: header "x1,...,xd,label", one raw sample per row.
Dataset read_dataset_csv(const std::string& path);
std::string dataset_csv(const Dataset& data);
void write_dataset_csv(const std::string& path, const Dataset& data);

}  // namespace orca
