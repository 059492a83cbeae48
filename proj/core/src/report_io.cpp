#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "orca/analysis.hpp"
#include "orca/io.hpp"

namespace orca {

using nlohmann::json;

std::string report_to_json(const OrcaReport& report) {
  json doc;
  doc["n"] = report.n;
  doc["d"] = report.d;
  doc["block"] = report.block;
  doc["by_order"] = report.by_order;
  doc["by_degree"] = report.by_degree;
  doc["marginal"] = report.marginal;
  doc["pairwise"] = report.pairwise;
  doc["even_mass"] = report.even_mass;
  doc["odd_mass"] = report.odd_mass;
  doc["spectral_peak"] = report.spectral_peak;
  json thresholds = json::array();
  for (const auto& t : report.thresholds) {
    thresholds.push_back({{"epsilon", t.epsilon}, {"T", t.degree}, {"coverage", t.coverage}});
  }
  doc["thresholds"] = std::move(thresholds);
  doc["norm_sq"] = report.norm_sq;
  return doc.dump(2) + "\n";
}

std::string epsilon_tag(double epsilon) {
  const double percent = epsilon * 100.0;
  const double rounded = std::round(percent);
  if (std::abs(percent - rounded) < 1e-9 && rounded >= 0.0 && rounded < 1000.0) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%03d", static_cast<int>(rounded));
    return buf;
  }
  std::string tag = format_double(epsilon);
  for (char& ch : tag) {
    if (ch == '.') ch = 'p';
  }
  return tag;
}

std::vector<std::string> csv_columns(int d, std::span<const double> epsilons) {
  std::vector<std::string> cols = {"n", "even", "odd"};
  for (int q = 0; q <= d; ++q) cols.push_back("okc_q" + std::to_string(q));
  for (int i = 1; i <= d; ++i) cols.push_back("okc_" + std::to_string(i));
  cols.emplace_back("n_star");
  for (double eps : epsilons) cols.push_back("t_" + epsilon_tag(eps));
  for (double eps : epsilons) cols.push_back("f_" + epsilon_tag(eps));
  return cols;
}

std::vector<std::string> csv_values(const OrcaReport& report) {
  std::vector<std::string> vals = {std::to_string(report.n), format_double(report.even_mass),
                                   format_double(report.odd_mass)};
  for (double v : report.by_order) vals.push_back(format_double(v));
  for (double v : report.marginal) vals.push_back(format_double(v));
  vals.push_back(std::to_string(report.spectral_peak));
  for (const auto& t : report.thresholds) vals.push_back(std::to_string(t.degree));
  for (const auto& t : report.thresholds) vals.push_back(format_double(t.coverage));
  return vals;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t t = 0; t < fields.size(); ++t) {
    if (t > 0) line += ',';
    line += fields[t];
  }
  line += '\n';
  return line;
}

namespace {

std::vector<double> epsilons_of(const OrcaReport& report) {
  std::vector<double> eps;
  for (const auto& t : report.thresholds) eps.push_back(t.epsilon);
  return eps;
}

}  // namespace

std::string report_to_csv(const OrcaReport& report) {
  return csv_line(csv_columns(report.d, epsilons_of(report))) + csv_line(csv_values(report));
}

std::string report_table(const OrcaReport& report) {
  const auto cols = csv_columns(report.d, epsilons_of(report));
  std::vector<std::string> vals;
  char buf[32];
  auto fixed = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
  };
  vals.push_back(std::to_string(report.n));
  vals.push_back(fixed(report.even_mass));
  vals.push_back(fixed(report.odd_mass));
  for (double v : report.by_order) vals.push_back(fixed(v));
  for (double v : report.marginal) vals.push_back(fixed(v));
  vals.push_back(std::to_string(report.spectral_peak));
  for (const auto& t : report.thresholds) vals.push_back(std::to_string(t.degree));
  for (const auto& t : report.thresholds) vals.push_back(fixed(t.coverage));

  std::ostringstream out;
  for (std::size_t t = 0; t < cols.size(); ++t) {
    const std::size_t w = std::max(cols[t].size(), vals[t].size());
    std::snprintf(buf, sizeof buf, "%*s", static_cast<int>(w), cols[t].c_str());
    out << (t ? "  " : "") << buf;
  }
  out << '\n';
  for (std::size_t t = 0; t < cols.size(); ++t) {
    const std::size_t w = std::max(cols[t].size(), vals[t].size());
    std::snprintf(buf, sizeof buf, "%*s", static_cast<int>(w), vals[t].c_str());
    out << (t ? "  " : "") << buf;
  }
  out << '\n';
  return out.str();
}

}  // namespace orca
