#include "orca/dataset.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "orca/errors.hpp"
#include "orca/io.hpp"

namespace orca {

double RescaleMap::apply(std::size_t feature, double raw) const {
  const auto& r = ranges_.at(feature);
  return 2.0 * (raw - r.lo) / (r.hi - r.lo) - 1.0;
}

double RescaleMap::invert(std::size_t feature, double scaled) const {
  const auto& r = ranges_.at(feature);
  return r.lo + 0.5 * (scaled + 1.0) * (r.hi - r.lo);
}

std::vector<double> RescaleMap::apply(std::span<const double> raw) const {
  if (raw.size() != ranges_.size()) throw DimensionMismatch(ranges_.size(), raw.size());
  std::vector<double> out(raw.size());
  for (std::size_t j = 0; j < raw.size(); ++j) out[j] = apply(j, raw[j]);
  return out;
}

RescaleResult rescale(const Eigen::MatrixXd& raw) {
  if (raw.rows() < 1) throw InvalidParams("cannot rescale an empty sample");
  RescaleResult result;
  result.rescaled.resize(raw.rows(), raw.cols());
  std::vector<FeatureRange> ranges(static_cast<std::size_t>(raw.cols()));
  for (Eigen::Index j = 0; j < raw.cols(); ++j) {
    const double lo = raw.col(j).minCoeff();
    const double hi = raw.col(j).maxCoeff();
    auto& range = ranges[static_cast<std::size_t>(j)];
    if (hi > lo) {
      range = {lo, hi};
      for (Eigen::Index i = 0; i < raw.rows(); ++i) {
        result.rescaled(i, j) = 2.0 * (raw(i, j) - lo) / (hi - lo) - 1.0;
      }
    } else {
      range = {lo - 0.5, lo + 0.5};
      result.rescaled.col(j).setZero();
      result.warnings.push_back("feature x" + std::to_string(j + 1) +
                                " is constant; mapped to 0");
    }
  }
  result.map = RescaleMap(std::move(ranges));
  return result;
}

Dataset make_dataset(std::string name, Eigen::MatrixXd raw, std::vector<int> labels) {
  if (static_cast<std::size_t>(raw.rows()) != labels.size()) {
    throw DimensionMismatch(static_cast<std::size_t>(raw.rows()), labels.size());
  }
  for (int y : labels) {
    if (y != 1 && y != -1) throw InvalidParams("labels must be -1 or +1");
  }
  auto scaled = rescale(raw);
  Dataset data;
  data.name = std::move(name);
  data.raw = std::move(raw);
  data.rescaled = std::move(scaled.rescaled);
  data.labels = std::move(labels);
  data.rescale_map = std::move(scaled.map);
  data.warnings = std::move(scaled.warnings);
  return data;
}

Dataset generate_spiral(const SpiralConfig& config) {
  if (config.points_per_class < 1) throw InvalidParams("points_per_class must be >= 1");
  if (!(config.outer_radius > config.inner_radius && config.inner_radius > 0.0)) {
    throw InvalidParams("spiral radii must satisfy outer > inner > 0");
  }
  if (!(config.noise_sd >= 0.0)) throw InvalidParams("noise_sd must be >= 0");

  const int per_class = config.points_per_class;
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  Eigen::MatrixXd raw(2 * per_class, 2);
  std::vector<int> labels(static_cast<std::size_t>(2 * per_class));
  const double span = per_class > 1 ? static_cast<double>(per_class - 1) : 1.0;
  // Class -1 is the noisy class +1 arm rotated by pi, so the sample is
  // centrally symmetric and min-max rescaling keeps the origin fixed.
  for (int t = 0; t < per_class; ++t) {
    const double frac = t / span;
    const double theta = config.turns * 2.0 * std::numbers::pi * frac;
    const double r = config.inner_radius + (config.outer_radius - config.inner_radius) * frac;
    const double ex = config.noise_sd > 0.0 ? config.noise_sd * noise(rng) : 0.0;
    const double ey = config.noise_sd > 0.0 ? config.noise_sd * noise(rng) : 0.0;
    raw(t, 0) = r * std::cos(theta) + ex;
    raw(t, 1) = r * std::sin(theta) + ey;
    raw(per_class + t, 0) = -raw(t, 0);
    raw(per_class + t, 1) = -raw(t, 1);
    labels[static_cast<std::size_t>(t)] = 1;
    labels[static_cast<std::size_t>(per_class + t)] = -1;
  }
  return make_dataset("spiral", std::move(raw), std::move(labels));
}

namespace {

std::vector<std::string_view> lines_of(const std::string& text) {
  std::vector<std::string_view> lines;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
  }
  return lines;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows, std::size_t d) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

}  // namespace

Dataset load_echocardiogram(const std::string& path) {
  constexpr std::size_t kColumns = 13;
  constexpr std::size_t kStillAlive = 1;
  constexpr std::size_t kFeatureColumns[] = {2, 4, 5, 6, 8};

  const std::string text = read_file(path);
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::size_t row_number = 0;
  for (auto line : lines_of(text)) {
    ++row_number;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != kColumns) {
      throw MalformedRow(row_number, "expected " + std::to_string(kColumns) + " columns, got " +
                                         std::to_string(fields.size()));
    }
    double label = 0.0;
    if (!parse_double(fields[kStillAlive], label)) continue;  // "?" or blank
    std::vector<double> features;
    bool complete = true;
    for (std::size_t col : kFeatureColumns) {
      double v = 0.0;
      if (!parse_double(fields[col], v)) {
        complete = false;
        break;
      }
      features.push_back(v);
    }
    if (!complete) continue;
    if (label != 0.0 && label != 1.0) {
      throw MalformedRow(row_number, "still-alive must be 0 or 1");
    }
    rows.push_back(std::move(features));
    labels.push_back(label == 1.0 ? 1 : -1);
  }
  if (rows.empty()) throw IoError("no complete records in " + path);
  const std::size_t kept = rows.size();
  auto data = make_dataset("echocardiogram", to_matrix(rows, 5), std::move(labels));
  if (kept != kEchocardiogramExpectedRows) {
    data.warnings.push_back("echocardiogram: kept " + std::to_string(kept) + " rows, expected " +
                            std::to_string(kEchocardiogramExpectedRows));
  }
  return data;
}

Dataset read_dataset_csv(const std::string& path) {
  const std::string text = read_file(path);
  const auto lines = lines_of(text);
  if (lines.empty() || trim(lines[0]).empty()) throw MalformedRow(1, "missing header");

  const auto header = split(lines[0], ',');
  if (header.size() < 2 || trim(header.back()) != "label") {
    throw MalformedRow(1, "header must be x1,...,xd,label");
  }
  const std::size_t d = header.size() - 1;
  for (std::size_t j = 0; j < d; ++j) {
    if (trim(header[j]) != "x" + std::to_string(j + 1)) {
      throw MalformedRow(1, "header must be x1,...,xd,label");
    }
  }

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (trim(lines[r]).empty()) continue;
    const auto fields = split(lines[r], ',');
    if (fields.size() != d + 1) {
      throw MalformedRow(r + 1, "expected " + std::to_string(d + 1) + " columns, got " +
                                    std::to_string(fields.size()));
    }
    std::vector<double> row(d);
    for (std::size_t j = 0; j < d; ++j) {
      if (!parse_double(fields[j], row[j]) || !std::isfinite(row[j])) {
        throw MalformedRow(r + 1, "non-numeric feature value");
      }
    }
    double label = 0.0;
    if (!parse_double(fields[d], label) || (label != 1.0 && label != -1.0)) {
      throw MalformedRow(r + 1, "label must be -1 or 1");
    }
    rows.push_back(std::move(row));
    labels.push_back(label > 0 ? 1 : -1);
  }
  if (rows.empty()) throw IoError("dataset " + path + " has no samples");
  return make_dataset(path, to_matrix(rows, d), std::move(labels));
}

std::string dataset_csv(const Dataset& data) {
  std::ostringstream out;
  const auto d = data.dims();
  for (std::size_t j = 0; j < d; ++j) out << 'x' << (j + 1) << ',';
  out << "label\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      out << format_double(data.raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))
          << ',';
    }
    out << data.labels[i] << '\n';
  }
  return out.str();
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
  write_file_atomic(path, dataset_csv(data));
}

}  // namespace orca
