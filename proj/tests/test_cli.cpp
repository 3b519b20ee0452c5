#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "norlund/cli.hpp"
#include "norlund/errors.hpp"
#include "norlund/io.hpp"

namespace fs = std::filesystem;
using namespace norlund;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

// In-process run of the command line.
Result run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "norlund");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Runs the built binary through the shell and returns its exit status.
int run_binary(const std::string& args) {
  const char* cli = std::getenv("NORLUND_CLI");
  REQUIRE(cli != nullptr);
  const std::string cmd = std::string("\"") + cli + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "norlund_test_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_CASE("weights golden output") {
  const auto r = run_args({"weights", "--d", "constant:2", "--n", "5"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "# norlund 0.1.0\n"
        "# command=weights d=constant:2 n=5 seed=20240611 override_guard=false format=csv\n"
        "n,p_n\n0,1\n1,2\n2,3\n3,4\n4,5\n5,6\n");
}

TEST_CASE("dist golden output for fixed points in S_3") {
  const auto r = run_args({"dist", "--d", "constant:1", "--n", "3", "--hhat", "fixedpoints"});
  CHECK(r.code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "value,prob");
  const std::vector<std::pair<double, double>> expected{{0, 1.0 / 3.0}, {1, 0.5}, {3, 1.0 / 6.0}};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& line = lines[i + 1];
    const auto comma = line.find(',');
    CHECK(std::stod(line.substr(0, comma)) == expected[i].first);
    CHECK(std::abs(std::stod(line.substr(comma + 1)) - expected[i].second) <= 1e-15);
  }
}

TEST_CASE("JSON output carries version and config") {
  const auto r = run_args({"dist", "--d", "constant:1", "--n", "4", "--hhat", "cycles",
                           "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["version"] == kVersion);
  CHECK(j["config"]["command"] == "dist");
  CHECK(j["config"]["seed"] == "20240611");
  CHECK(j["columns"] == nlohmann::json({"value", "prob"}));
  double total = 0.0;
  for (const auto& row : j["rows"]) total += row[1].get<double>();
  CHECK(total == doctest::Approx(1.0));

  const auto inf = run_args({"clt", "--n", "12", "--p", "inf", "--format", "json"});
  CHECK(inf.code == 0);
  CHECK(nlohmann::json::parse(inf.out)["config"]["p"] == "inf");
}

TEST_CASE("every command runs") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"weights", "--d", "random:0.5:2.5", "--n-sweep", "3,7,11"},
           {"voronoi", "--d", "constant:1", "--n-sweep", "16,32", "--series", "log1p"},
           {"tauber", "--d", "constant:2", "--n-sweep", "9,19,39"},
           {"mean", "--d", "random:0.5:2", "--n-sweep", "5,9", "--fhat", "root:1"},
           {"dist", "--d", "constant:0.7", "--n", "8", "--hhat", "power"},
           {"clt", "--d", "constant:2", "--n-sweep", "10,14", "--hhat", "sparse"},
           {"sample", "--d", "constant:2", "--n", "9", "--count", "5"},
           {"check", "--suite", "goncharov"}}) {
    const auto r = run_args(args);
    CAPTURE(args[0]);
    CHECK(r.code == 0);
    CHECK(r.out.rfind("# norlund 0.1.0\n", 0) == 0);
  }
}

TEST_CASE("tauber trajectory for the alternating series decays") {
  const auto r = run_args({"tauber", "--d", "constant:2", "--series", "alternating",
                           "--n-sweep", "11,21,41,81,161"});
  REQUIRE(r.code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 6);
  double prev = 1e300;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const double t = std::abs(std::stod(lines[i].substr(lines[i].find(',') + 1)));
    CHECK(t < prev);
    prev = t;
  }
  CHECK(prev < 0.01);
}

TEST_CASE("exit codes") {
  CHECK(run_args({"weights", "--d", "bogus", "--n", "5"}).code == kExitUsage);
  CHECK(run_args({"weights", "--nope"}).code == kExitUsage);
  CHECK(run_args({}).code == kExitUsage);
  CHECK(run_args({"weights", "--format", "xml"}).code == kExitUsage);
  CHECK(run_args({"dist", "--n-sweep", "3,4"}).code == kExitUsage);
  CHECK(run_args({"weights", "--n", "3", "--n-sweep", "3,4"}).code == kExitUsage);
  CHECK(run_args({"weights", "--d", "constant:-1", "--n", "3"}).code == kExitUsage);
  CHECK(run_args({"mean", "--u", "0", "--n", "3"}).code == kExitUsage);
  CHECK(run_args({"check", "--suite", "nope"}).code == kExitUsage);

  const auto guard = run_args({"dist", "--n", "61", "--hhat", "cycles"});
  CHECK(guard.code == kExitResource);
  CHECK(guard.err.find("guard") != std::string::npos);
  CHECK(run_args({"dist", "--n", "91", "--hhat", "cycles", "--override-guard"}).code ==
        kExitResource);

  const auto overflow = run_args({"weights", "--d", "constant:700", "--n", "400"});
  CHECK(overflow.code == kExitOverflow);
  CHECK(overflow.err.find("p_") != std::string::npos);

  const auto io = run_args({"weights", "--out", "/nonexistent-dir/x.csv"});
  CHECK(io.code == kExitIo);
  CHECK(io.err.find("/nonexistent-dir/x.csv") != std::string::npos);

  CHECK(run_args({"--help"}).code == 0);
  CHECK(run_args({"--version"}).code == 0);
}

TEST_CASE("exit codes from the installed binary") {
  CHECK(run_binary("weights --d constant:2 --n 5") == 0);
  CHECK(run_binary("weights --d nope") == kExitUsage);
  CHECK(run_binary("dist --n 61") == kExitResource);
  CHECK(run_binary("weights --d constant:700 --n 400") == kExitOverflow);
}

TEST_CASE("override guard admits n above 60") {
  const auto r = run_args({"dist", "--n", "62", "--hhat", "fixedpoints", "--override-guard"});
  CHECK(r.code == 0);
  CHECK(data_lines(r.out).size() == 63);  // header, values 0..60 and 62
}

TEST_CASE("byte-identical reruns through --out") {
  const auto dir = scratch("rerun");
  for (const std::string args : {"sample --d random:0.5:2.5 --n 12 --count 50 --seed 99",
                                 "mean --d random:0.5:2 --n-sweep 4,8 --fhat random --seed 1 --format json",
                                 "clt --d constant:0.7 --n-sweep 10,20 --p inf --hhat power"}) {
    const auto a = dir / "a.out";
    const auto b = dir / "b.out";
    REQUIRE(run_binary(args + " --out " + a.string()) == 0);
    REQUIRE(run_binary(args + " --out " + b.string()) == 0);
    CAPTURE(args);
    CHECK(!slurp(a).empty());
    CHECK(slurp(a) == slurp(b));
  }
  // The seed changes the random output.
  CHECK(run_args({"sample", "--n", "12", "--seed", "1"}).out !=
        run_args({"sample", "--n", "12", "--seed", "2"}).out);
}

TEST_CASE("numeric CSV cells round-trip at 17 significant digits") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"weights", "--d", "random:0.3:2.9", "--n", "60", "--seed", "4"},
           {"voronoi", "--d", "random:0.5:2.5", "--n-sweep", "16,32,64", "--series", "random"},
           {"clt", "--d", "constant:1.3", "--n-sweep", "15,25", "--hhat", "power"}}) {
    const auto r = run_args(args);
    REQUIRE(r.code == 0);
    const auto lines = data_lines(r.out);
    std::size_t cells = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      std::istringstream row(lines[i]);
      std::string cell;
      while (std::getline(row, cell, ',')) {
        const double v = std::strtod(cell.c_str(), nullptr);
        REQUIRE(format_number(v) == cell);
        ++cells;
      }
    }
    CHECK(cells > 10);
  }
}

TEST_CASE("check suite output and exit status") {
  const auto r = run_args({"check", "--suite", "goncharov"});
  CHECK(r.code == 0);
  CHECK(r.out.find("# pass=true\n") != std::string::npos);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "n,kolmogorov");
}

TEST_CASE("plot data") {
  const auto dir = scratch("plots");
  const auto r = run_args({"tauber", "--d", "constant:2", "--n-sweep", "5,10",
                           "--plot-dir", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "tauber.csv").rfind("n,S_n/(n p_n)\n5,", 0) == 0);

  const auto g = run_args({"check", "--suite", "goncharov", "--plot-dir", dir.string()});
  REQUIRE(g.code == 0);
  const auto lines = data_lines(slurp(dir / "check_goncharov.csv"));
  REQUIRE(lines.size() == 4);
  CHECK(lines[1].rfind("50,", 0) == 0);
  CHECK(lines[3].rfind("800,", 0) == 0);

  const auto c = run_args({"clt", "--n", "12", "--plot-dir", dir.string()});
  REQUIRE(c.code == 0);
  CHECK(data_lines(slurp(dir / "clt_curve_n12.csv")).size() == 1002);

  emit_plotdata({PlotSeries{"empty", "x", "y", {}}}, dir);
  CHECK(slurp(dir / "empty.csv") == "x,y\n");

  CHECK_THROWS_AS(emit_plotdata({PlotSeries{"x", "a", "b", {}}}, "/proc/no-such-dir"), IoError);
}
