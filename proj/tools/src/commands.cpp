#include "orca_cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <type_traits>
#include <memory>
#include <sstream>

#include "orca/analysis.hpp"
#include "orca/dataset.hpp"
#include "orca/errors.hpp"
#include "orca/expansion.hpp"
#include "orca/io.hpp"
#include "orca/svm.hpp"

#ifdef ORCA_WITH_DOWNLOAD
#include <httplib.h>
#endif

namespace orca::cli {
namespace {

constexpr const char* kEchoUrl =
    "https://archive.ics.uci.edu/ml/machine-learning-databases/echocardiogram/echocardiogram.data";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

void print_warnings(const Dataset& data, std::ostream& err) {
  for (const auto& w : data.warnings) err << "warning: " << w << '\n';
}

void check_budget(int n, int d, unsigned long long budget) {
  const auto modes = mode_count(n, d);
  if (modes > budget) {
    throw UsageError("(n+1)^d = " + std::to_string(modes) + " modes exceeds --budget " +
                     std::to_string(budget));
  }
}

// Comma-separated list flag; empty fields and trailing garbage are usage errors.
template <class T>
std::vector<T> parse_list(const std::string& flag, const std::string& text) {
  std::vector<T> values;
  if (trim(text).empty()) throw UsageError(flag + " needs at least one value");
  for (auto field : split(text, ',')) {
    double v = 0.0;
    if (!parse_double(field, v)) throw UsageError(flag + ": cannot parse '" + std::string(field) + "'");
    if constexpr (std::is_integral_v<T>) {
      if (v != std::floor(v)) throw UsageError(flag + " values must be integers");
    }
    values.push_back(static_cast<T>(v));
  }
  return values;
}

std::vector<double> parse_epsilons(const std::string& text) {
  if (text.empty()) return kDefaultEpsilons;
  auto eps = parse_list<double>("--epsilons", text);
  for (double e : eps) {
    if (!(e > 0.0 && e < 1.0)) throw UsageError("--epsilons values must lie in (0, 1)");
  }
  return eps;
}

// ---- gen-spiral -------------------------------------------------------------

struct GenSpiralArgs {
  SpiralConfig config;
  std::string out;
};

int gen_spiral(const GenSpiralArgs& a, Streams io) {
  const auto data = generate_spiral(a.config);
  write_dataset_csv(a.out, data);
  const auto& c = a.config;
  io.out << "m=" << data.size() << " seed=" << c.seed << " points_per_class=" << c.points_per_class
         << " turns=" << format_double(c.turns) << " noise_sd=" << format_double(c.noise_sd)
         << " inner_radius=" << format_double(c.inner_radius)
         << " outer_radius=" << format_double(c.outer_radius) << '\n';
  return kOk;
}

// ---- train ------------------------------------------------------------------

struct TrainArgs {
  std::string data;
  std::string out;
  double alpha = 0.0;
  double beta = 0.0;
  int degree = 0;
  SvmConfig svm;
  bool strict = false;
};

int train_cmd(const TrainArgs& a, Streams io) {
  const auto data = read_dataset_csv(a.data);
  print_warnings(data, io.err);
  const KernelSpec spec(build_basis({a.alpha, a.beta}, a.degree), static_cast<int>(data.dims()));
  const auto model = train(spec, data, a.svm);
  save_model(a.out, model);
  io.out << "m=" << data.size() << " d=" << data.dims() << " n=" << a.degree
         << " accuracy=" << format_double(training_accuracy(model, data))
         << " support_vectors=" << model.support_vectors()
         << " converged=" << (model.converged ? "true" : "false")
         << " kkt_residual=" << format_double(model.kkt_residual) << '\n';
  if (!model.converged) {
    io.err << "warning: solver stopped at the iteration budget before meeting the KKT tolerance\n";
    if (a.strict) return kNotConverged;
  }
  return kOk;
}

// ---- report -----------------------------------------------------------------

struct ReportArgs {
  std::string model;
  std::string epsilons;
  std::string json;
  std::string csv;
  std::string coeffs;
  unsigned long long budget = kDefaultModeBudget;
};

int report_cmd(const ReportArgs& a, Streams io) {
  const auto epsilons = parse_epsilons(a.epsilons);
  const auto model = load_model(a.model);
  check_budget(model.spec.degree(), model.spec.d, a.budget);
  const auto tensor = extract_coefficients(model);
  if (!a.coeffs.empty()) save_coefficients(a.coeffs, tensor);
  const auto report = analyze(tensor, epsilons);
  if (!a.json.empty()) write_file_atomic(a.json, report_to_json(report));
  if (!a.csv.empty()) write_file_atomic(a.csv, report_to_csv(report));
  io.out << report_table(report);
  return kOk;
}

// ---- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string data;
  std::string out;
  std::string degrees;
  double alpha = 0.0;
  double beta = 0.0;
  SvmConfig svm;
  std::string epsilons;
  unsigned long long budget = kDefaultModeBudget;
  bool strict = false;
};

int sweep_cmd(const SweepArgs& a, Streams io) {
  const auto degrees = parse_list<int>("--degrees", a.degrees);
  for (int n : degrees) {
    if (n < 0) throw UsageError("--degrees values must be >= 0");
  }
  const auto epsilons = parse_epsilons(a.epsilons);
  const auto data = read_dataset_csv(a.data);
  print_warnings(data, io.err);
  const int d = static_cast<int>(data.dims());
  const int top = *std::max_element(degrees.begin(), degrees.end());
  io.out << "largest coefficient tensor: (" << top << "+1)^" << d << " = " << mode_count(top, d)
         << " modes (budget " << a.budget << ")\n";
  check_budget(top, d, a.budget);

  auto columns = csv_columns(d, epsilons);
  columns.push_back("error");
  std::string table = csv_line(columns);
  bool all_converged = true;
  for (int n : degrees) {
    std::vector<std::string> row;
    try {
      const KernelSpec spec(build_basis({a.alpha, a.beta}, n), d);
      const auto model = train(spec, data, a.svm);
      all_converged = all_converged && model.converged;
      const auto report = analyze(extract_coefficients(model), epsilons);
      row = csv_values(report);
      row.push_back(model.converged ? "" : "not converged");
      io.out << report_table(report);
    } catch (const Error& e) {
      row.assign(columns.size(), "");
      row[0] = std::to_string(n);
      std::string msg = e.what();
      std::replace(msg.begin(), msg.end(), ',', ';');
      row.back() = msg;
      io.err << "degree " << n << ": " << e.what() << '\n';
    }
    table += csv_line(row);
  }
  write_file_atomic(a.out, table);
  if (!all_converged && a.strict) return kNotConverged;
  return kOk;
}

// ---- boundary ---------------------------------------------------------------

struct BoundaryArgs {
  std::string model;
  std::string out;
  int grid = 100;
  unsigned long long budget = kDefaultModeBudget;
};

int boundary_cmd(const BoundaryArgs& a, Streams io) {
  const auto model = load_model(a.model);
  if (model.spec.d != 2) throw NotTwoDimensional(static_cast<std::size_t>(model.spec.d));
  if (a.grid < 1) throw UsageError("--grid must be >= 1");
  check_budget(model.spec.degree(), 2, a.budget);
  const auto tensor = extract_coefficients(model);
  std::string text = "x1,x2,g\n";
  auto coord = [&](int i) { return a.grid == 1 ? 0.0 : -1.0 + 2.0 * i / (a.grid - 1); };
  for (int i = 0; i < a.grid; ++i) {
    for (int j = 0; j < a.grid; ++j) {
      const double x[2] = {coord(i), coord(j)};
      const double g = evaluate_expansion(tensor, model.spec.basis, x) + model.bias;
      text += format_double(x[0]) + ',' + format_double(x[1]) + ',' + format_double(g) + '\n';
    }
  }
  write_file_atomic(a.out, text);
  io.out << "grid=" << a.grid << "x" << a.grid << " rows=" << a.grid * a.grid << '\n';
  return kOk;
}

// ---- echo-import ------------------------------------------------------------

struct EchoArgs {
  std::string uci;
  std::string out;
  bool download = false;
  std::string url = kEchoUrl;
};

void download_file(const std::string& url, const std::string& path) {
#ifdef ORCA_WITH_DOWNLOAD
  const auto scheme_end = url.find("://");
  const auto host_end = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (scheme_end == std::string::npos || host_end == std::string::npos) {
    throw UsageError("--url must look like https://host/path");
  }
  httplib::Client client(url.substr(0, host_end));
  client.set_follow_location(true);
  const auto res = client.Get(url.substr(host_end));
  if (!res) throw IoError("download failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw IoError("download failed: HTTP " + std::to_string(res->status));
  write_file_atomic(path, res->body);
#else
  (void)url;
  (void)path;
  throw IoError("this build has no TLS support; fetch the file manually and pass --uci");
#endif
}

int echo_cmd(const EchoArgs& a, Streams io) {
  if (a.uci.empty()) throw UsageError("--uci is required");
  if (a.download) {
    io.out << "downloading " << a.url << " -> " << a.uci << '\n';
    download_file(a.url, a.uci);
  }
  const auto data = load_echocardiogram(a.uci);
  print_warnings(data, io.err);
  write_dataset_csv(a.out, data);
  io.out << "m=" << data.size() << " d=" << data.dims() << " (expected m=" << kEchocardiogramExpectedRows
         << ")\n";
  return kOk;
}

template <class F>
int guarded(F&& body, Streams io) {
  try {
    return body();
  } catch (const UsageError& e) {
    io.err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DegenerateModel& e) {
    io.err << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const IoError& e) {
    io.err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const InvalidParams& e) {
    io.err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NotTwoDimensional& e) {
    io.err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

void add_svm_flags(CLI::App* cmd, SvmConfig& svm) {
  cmd->add_option("--cost", svm.cost, "box constraint C")->capture_default_str();
  cmd->add_option("--tol", svm.kkt_tol, "KKT tolerance")->capture_default_str();
  cmd->add_option("--max-iter", svm.max_iterations, "pair-update budget (0 = automatic)")
      ->capture_default_str();
  cmd->add_option("--seed", svm.seed, "working-set scan seed")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orthogonal-polynomial kernel SVM with ORCA interpretability reports", "orca"};
  app.require_subcommand(1);
  const Streams io{out, err};

  GenSpiralArgs gs;
  auto* gen = app.add_subcommand("gen-spiral", "write the two-spiral dataset as CSV");
  gen->add_option("--seed", gs.config.seed)->capture_default_str();
  gen->add_option("--points-per-class", gs.config.points_per_class)->capture_default_str();
  gen->add_option("--turns", gs.config.turns)->capture_default_str();
  gen->add_option("--noise", gs.config.noise_sd, "Gaussian noise sd per coordinate")->capture_default_str();
  gen->add_option("--inner-radius", gs.config.inner_radius)->capture_default_str();
  gen->add_option("--outer-radius", gs.config.outer_radius)->capture_default_str();
  gen->add_option("--out", gs.out)->required();

  TrainArgs tr;
  auto* trn = app.add_subcommand("train", "fit the SVM and write the model JSON");
  trn->add_option("--data", tr.data, "dataset CSV (x1,...,xd,label)")->required();
  trn->add_option("--alpha", tr.alpha)->capture_default_str();
  trn->add_option("--beta", tr.beta)->capture_default_str();
  trn->add_option("--degree", tr.degree, "truncation level n")->required();
  trn->add_option("--out", tr.out)->required();
  trn->add_flag("--strict", tr.strict, "exit 5 when the solver does not converge");
  add_svm_flags(trn, tr.svm);

  ReportArgs rp;
  auto* rep = app.add_subcommand("report", "ORCA decomposition of a trained model");
  rep->add_option("--model", rp.model)->required();
  rep->add_option("--epsilons", rp.epsilons, "comma-separated coverage levels (default 0.10,0.05,0.01)");
  rep->add_option("--json", rp.json, "write the report as JSON");
  rep->add_option("--csv", rp.csv, "write the report as a one-row CSV");
  rep->add_option("--coeffs", rp.coeffs, "write the coefficient tensor (binary)");
  rep->add_option("--budget", rp.budget, "cap on (n+1)^d")->capture_default_str();

  SweepArgs sw;
  auto* swp = app.add_subcommand("sweep", "train and report over several truncation levels");
  swp->add_option("--data", sw.data)->required();
  swp->add_option("--degrees", sw.degrees, "comma-separated truncation levels")->required();
  swp->add_option("--alpha", sw.alpha)->capture_default_str();
  swp->add_option("--beta", sw.beta)->capture_default_str();
  swp->add_option("--epsilons", sw.epsilons, "comma-separated coverage levels (default 0.10,0.05,0.01)");
  swp->add_option("--out", sw.out)->required();
  swp->add_option("--budget", sw.budget, "cap on (n+1)^d")->capture_default_str();
  swp->add_flag("--strict", sw.strict, "exit 5 when any degree does not converge");
  add_svm_flags(swp, sw.svm);

  BoundaryArgs bd;
  auto* bnd = app.add_subcommand("boundary", "decision function on a grid over [-1,1]^2");
  bnd->add_option("--model", bd.model)->required();
  bnd->add_option("--grid", bd.grid, "points per axis")->capture_default_str();
  bnd->add_option("--out", bd.out)->required();
  bnd->add_option("--budget", bd.budget, "cap on (n+1)^d")->capture_default_str();

  EchoArgs ec;
  auto* echo = app.add_subcommand("echo-import", "convert the UCI echocardiogram file to dataset CSV");
  echo->add_option("--uci", ec.uci, "path of the UCI echocardiogram.data file")->required();
  echo->add_option("--out", ec.out)->required();
  echo->add_flag("--download", ec.download, "fetch the UCI file to --uci first (network)");
  echo->add_option("--url", ec.url)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "run '" << (sub == &app ? std::string("orca") : "orca " + sub->get_name()) << " --help' for usage\n";
    return kUsage;
  }

  if (*gen) return guarded([&] { return gen_spiral(gs, io); }, io);
  if (*trn) return guarded([&] { return train_cmd(tr, io); }, io);
  if (*rep) return guarded([&] { return report_cmd(rp, io); }, io);
  if (*swp) return guarded([&] { return sweep_cmd(sw, io); }, io);
  if (*bnd) return guarded([&] { return boundary_cmd(bd, io); }, io);
  if (*echo) return guarded([&] { return echo_cmd(ec, io); }, io);
  return kUsage;
}

}  // namespace orca::cli
