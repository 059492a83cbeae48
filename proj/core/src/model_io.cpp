#include <json.hpp>

#include "orca/errors.hpp"
#include "orca/io.hpp"
#include "orca/svm.hpp"

namespace orca {

using nlohmann::json;

std::string model_to_json(const TrainedModel& model) {
  json doc;
  doc["jacobi"] = {{"alpha", model.spec.basis.params().alpha},
                   {"beta", model.spec.basis.params().beta}};
  doc["degree"] = model.spec.degree();
  doc["d"] = model.spec.d;
  doc["cost"] = model.cost;
  doc["bias"] = model.bias;
  json ranges = json::array();
  for (const auto& r : model.rescale.ranges()) ranges.push_back({r.lo, r.hi});
  doc["rescale"] = std::move(ranges);
  json samples = json::array();
  for (Eigen::Index i = 0; i < model.inputs.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < model.inputs.cols(); ++j) row.push_back(model.inputs(i, j));
    samples.push_back(std::move(row));
  }
  doc["samples"] = std::move(samples);
  doc["signed_duals"] = model.signed_duals;
  doc["dual_objective"] = model.dual_objective;
  doc["converged"] = model.converged;
  return doc.dump(2) + "\n";
}

TrainedModel model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("model JSON does not parse: ") + e.what());
  }
  try {
    const JacobiParams params{doc.at("jacobi").at("alpha").get<double>(),
                              doc.at("jacobi").at("beta").get<double>()};
    const int degree = doc.at("degree").get<int>();
    const int d = doc.at("d").get<int>();
    KernelSpec spec(build_basis(params, degree), d);

    std::vector<FeatureRange> ranges;
    for (const auto& r : doc.at("rescale")) {
      ranges.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
    }
    if (ranges.size() != static_cast<std::size_t>(d)) throw DimensionMismatch(d, ranges.size());

    const auto& samples = doc.at("samples");
    auto duals = doc.at("signed_duals").get<std::vector<double>>();
    if (samples.size() != duals.size()) throw DimensionMismatch(samples.size(), duals.size());
    Eigen::MatrixXd inputs(static_cast<Eigen::Index>(samples.size()), d);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& row = samples[i];
      if (row.size() != static_cast<std::size_t>(d)) throw DimensionMismatch(d, row.size());
      for (int j = 0; j < d; ++j) inputs(static_cast<Eigen::Index>(i), j) = row.at(j).get<double>();
    }

    TrainedModel model{std::move(spec), RescaleMap(std::move(ranges)), std::move(inputs),
                       std::move(duals)};
    model.cost = doc.at("cost").get<double>();
    model.bias = doc.at("bias").get<double>();
    model.dual_objective = doc.at("dual_objective").get<double>();
    model.converged = doc.at("converged").get<bool>();
    return model;
  } catch (const json::exception& e) {
    throw IoError(std::string("model JSON is missing or mistypes a field: ") + e.what());
  }
}

void save_model(const std::string& path, const TrainedModel& model) {
  write_file_atomic(path, model_to_json(model));
}

TrainedModel load_model(const std::string& path) { return model_from_json(read_file(path)); }

}  // namespace orca
