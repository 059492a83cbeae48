#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

#include "orca/io.hpp"
#include "orca/svm.hpp"
#include "orca_cli/commands.hpp"

namespace fs = std::filesystem;
using orca::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& path) {
  const auto text = orca::read_file(path);
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("orca_cli_" + std::to_string(std::rand()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("gen-spiral") {
  TempDir dir;
  auto r = cli({"gen-spiral", "--seed", "7", "--out", dir / "a.csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("m=300") != std::string::npos);
  CHECK(r.out.find("seed=7") != std::string::npos);
  CHECK(line_count(dir / "a.csv") == 301);
  CHECK(cli({"gen-spiral", "--seed", "7", "--out", dir / "b.csv"}).code == 0);
  CHECK(orca::read_file(dir / "a.csv") == orca::read_file(dir / "b.csv"));
  CHECK(cli({"gen-spiral", "--points-per-class", "10", "--out", dir / "c.csv"}).code == 0);
  CHECK(line_count(dir / "c.csv") == 21);
  CHECK(cli({"gen-spiral", "--points-per-class", "0", "--out", dir / "d.csv"}).code == 2);
}

TEST_CASE("train and report") {
  TempDir dir;
  REQUIRE(cli({"gen-spiral", "--out", dir / "s.csv"}).code == 0);
  auto r = cli({"train", "--data", dir / "s.csv", "--alpha", "0", "--beta", "0", "--degree", "16", "--cost", "1",
                "--out", dir / "m.json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("converged=true") != std::string::npos);
  CHECK(r.out.find("accuracy=") != std::string::npos);

  r = cli({"report", "--model", dir / "m.json", "--json", dir / "r.json", "--csv", dir / "r.csv", "--coeffs",
           dir / "c.bin"});
  CHECK(r.code == 0);
  CHECK(r.out.find("okc_q2") != std::string::npos);
  CHECK(line_count(dir / "r.csv") == 2);
  CHECK(fs::file_size(dir / "c.bin") == 20 + 289 * 8);

  r = cli({"report", "--model", dir / "m.json", "--epsilons", "0.5", "--csv", dir / "r1.csv"});
  CHECK(r.code == 0);
  const auto header = orca::read_file(dir / "r1.csv").substr(0, orca::read_file(dir / "r1.csv").find('\n'));
  CHECK(header.find("t_050") != std::string::npos);
  CHECK(header.find("t_010") == std::string::npos);

  CHECK(cli({"report", "--model", dir / "m.json", "--budget", "100"}).code == 2);
}

TEST_CASE("n=1 report row") {
  TempDir dir;
  REQUIRE(cli({"gen-spiral", "--out", dir / "s.csv"}).code == 0);
  REQUIRE(cli({"train", "--data", dir / "s.csv", "--degree", "1", "--out", dir / "m.json"}).code == 0);
  auto r = cli({"report", "--model", dir / "m.json", "--json", dir / "r.json"});
  REQUIRE(r.code == 0);
  const auto json = orca::read_file(dir / "r.json");
  CHECK(json.find("\"spectral_peak\": 1,") != std::string::npos);
}

TEST_CASE("degree zero fits the majority rate") {
  TempDir dir;
  orca::write_file_atomic(dir / "d.csv", "x1,label\n-1,1\n0,1\n1,-1\n");
  auto r = cli({"train", "--data", dir / "d.csv", "--degree", "0", "--out", dir / "m.json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("accuracy=0.6666666666666666") != std::string::npos);
}

TEST_CASE("degenerate model exits 3") {
  TempDir dir;
  REQUIRE(cli({"gen-spiral", "--points-per-class", "5", "--out", dir / "s.csv"}).code == 0);
  REQUIRE(cli({"train", "--data", dir / "s.csv", "--degree", "2", "--out", dir / "m.json"}).code == 0);
  auto model = orca::load_model(dir / "m.json");
  std::fill(model.signed_duals.begin(), model.signed_duals.end(), 0.0);
  orca::save_model(dir / "zero.json", model);
  auto r = cli({"report", "--model", dir / "zero.json"});
  CHECK(r.code == 3);
  CHECK(r.err.find("degenerate") != std::string::npos);
}

TEST_CASE("sweep") {
  TempDir dir;
  REQUIRE(cli({"gen-spiral", "--points-per-class", "40", "--out", dir / "s.csv"}).code == 0);
  auto r = cli({"sweep", "--data", dir / "s.csv", "--degrees", "1,3,5", "--out", dir / "t.csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("modes") != std::string::npos);
  CHECK(line_count(dir / "t.csv") == 4);

  // A sweep row equals train + report for the same degree.
  REQUIRE(cli({"train", "--data", dir / "s.csv", "--degree", "3", "--out", dir / "m3.json"}).code == 0);
  REQUIRE(cli({"report", "--model", dir / "m3.json", "--csv", dir / "r3.csv"}).code == 0);
  const auto single = orca::read_file(dir / "r3.csv");
  const auto row = single.substr(single.find('\n') + 1);
  const auto table = orca::read_file(dir / "t.csv");
  CHECK(table.find(row.substr(0, row.size() - 1) + ",\n") != std::string::npos);

  CHECK(cli({"sweep", "--data", dir / "s.csv", "--degrees", "", "--out", dir / "e.csv"}).code == 2);
  CHECK(cli({"sweep", "--data", dir / "s.csv", "--out", dir / "e.csv"}).code == 2);
  CHECK(cli({"sweep", "--data", dir / "s.csv", "--degrees", "1,30", "--budget", "500", "--out", dir / "e.csv"}).code == 2);
}

TEST_CASE("boundary") {
  TempDir dir;
  REQUIRE(cli({"gen-spiral", "--out", dir / "s.csv"}).code == 0);
  REQUIRE(cli({"train", "--data", dir / "s.csv", "--degree", "16", "--out", dir / "m.json"}).code == 0);
  CHECK(cli({"boundary", "--model", dir / "m.json", "--grid", "3", "--out", dir / "g3.csv"}).code == 0);
  CHECK(line_count(dir / "g3.csv") == 10);

  REQUIRE(cli({"boundary", "--model", dir / "m.json", "--grid", "41", "--out", dir / "g.csv"}).code == 0);
  // Mid-row transect x1 = 0: count sign changes of g along x2.
  std::istringstream in(orca::read_file(dir / "g.csv"));
  std::string line;
  std::getline(in, line);
  int changes = 0, prev = 0;
  while (std::getline(in, line)) {
    const auto a = line.find(','), b = line.rfind(',');
    double x1 = 0, g = 0;
    orca::parse_double(std::string_view(line).substr(0, a), x1);
    orca::parse_double(std::string_view(line).substr(b + 1), g);
    if (x1 != 0.0) continue;
    const int s = g >= 0 ? 1 : -1;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  CHECK(changes >= 2);

  REQUIRE(cli({"train", "--data", dir / "s.csv", "--degree", "0", "--out", dir / "m0.json"}).code == 0);
  REQUIRE(cli({"boundary", "--model", dir / "m0.json", "--grid", "4", "--out", dir / "g0.csv"}).code == 0);
  std::istringstream flat(orca::read_file(dir / "g0.csv"));
  std::getline(flat, line);
  std::set<std::string> values;
  while (std::getline(flat, line)) values.insert(line.substr(line.rfind(',') + 1));
  CHECK(values.size() == 1);

  orca::write_file_atomic(dir / "d1.csv", "x1,label\n-1,1\n0,-1\n1,1\n");
  REQUIRE(cli({"train", "--data", dir / "d1.csv", "--degree", "2", "--out", dir / "m1.json"}).code == 0);
  CHECK(cli({"boundary", "--model", dir / "m1.json", "--out", dir / "x.csv"}).code == 2);
}

TEST_CASE("usage and io exit codes") {
  TempDir dir;
  CHECK(cli({}).code == 2);
  CHECK(cli({"train", "--degree", "3", "--out", dir / "m.json"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"train", "--data", dir / "missing.csv", "--degree", "3", "--out", dir / "m.json"}).code == 4);
  CHECK(cli({"report", "--model", dir / "missing.json"}).code == 4);
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"echo-import", "--uci", dir / "missing.data", "--out", dir / "e.csv"}).code == 4);
}

TEST_CASE("strict non-convergence") {
  TempDir dir;
  REQUIRE(cli({"gen-spiral", "--points-per-class", "50", "--out", dir / "s.csv"}).code == 0);
  auto r = cli({"train", "--data", dir / "s.csv", "--degree", "10", "--max-iter", "2", "--out", dir / "m.json"});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK(cli({"train", "--data", dir / "s.csv", "--degree", "10", "--max-iter", "2", "--strict", "--out",
             dir / "m.json"}).code == 5);
}

TEST_CASE("installed binary") {
  const char* exe = std::getenv("ORCA_CLI");
  if (exe == nullptr) return;
  TempDir dir;
  const std::string base = std::string(exe);
  CHECK(WEXITSTATUS(std::system((base + " train --out x.json > /dev/null 2>&1").c_str())) == 2);
  CHECK(WEXITSTATUS(std::system((base + " gen-spiral --out " + (dir / "s.csv") + " > /dev/null").c_str())) == 0);
  CHECK(line_count(dir / "s.csv") == 301);
}
