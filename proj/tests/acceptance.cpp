// Acceptance runner: one PASS/FAIL line per criterion.  The CLI binary path
// is the first argument (used by the reproducibility criterion).

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "norlund/errors.hpp"
#include "norlund/suites.hpp"

namespace fs = std::filesystem;
using namespace norlund;

namespace {

struct Criterion {
  int id;
  const char* title;
  const char* suite;
  double budget_seconds;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs every command twice into separate files and compares the bytes.
bool reproducible(const std::string& cli, std::string& detail) {
  const std::vector<std::string> commands{
      "weights --d constant:2 --n 5",
      "weights --d random:0.5:2.5 --n 40 --seed 7 --format json",
      "voronoi --d random:0.5:2.5 --seed 11 --n-sweep 16,32,64 --series alternating",
      "tauber --d constant:2 --series alternating --n-sweep 10,20,40,80",
      "mean --d random:0.5:2 --n 12 --fhat random --seed 3",
      "dist --d constant:1 --n 3 --hhat fixedpoints",
      "dist --d constant:1 --n 12 --hhat cycles --format json",
      "clt --d constant:1 --n-sweep 20,30 --p 4 --hhat flat",
      "sample --d random:0.5:2.5 --n 15 --count 200 --seed 42",
      "check --suite oracle --seed 5",
  };
  const fs::path dir = fs::temp_directory_path() / "norlund_acceptance";
  fs::create_directories(dir);
  int mismatches = 0;
  int failures = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::array<std::string, 2> out;
    for (int run = 0; run < 2; ++run) {
      const fs::path file = dir / ("run" + std::to_string(i) + "_" + std::to_string(run) + ".out");
      const std::string cmd = "\"" + cli + "\" " + commands[i] + " --out \"" + file.string() + "\"";
      if (std::system(cmd.c_str()) != 0) ++failures;
      out[run] = slurp(file);
    }
    if (out[0] != out[1] || out[0].empty()) ++mismatches;
  }
  fs::remove_all(dir);
  detail = std::to_string(commands.size()) + " commands run twice: " +
           std::to_string(mismatches) + " differing outputs, " +
           std::to_string(failures) + " non-zero exits";
  return mismatches == 0 && failures == 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-norlund-cli>\n");
    return 2;
  }
  const std::vector<Criterion> criteria{
      {1, "weight closed forms", "weights", 1.0},
      {2, "Cesaro recovery", "cesaro", 1.0},
      {3, "log(1+x) Tauberian recovery", "tauber", 5.0},
      {4, "remainder ratio stability", "voronoi", 120.0},
      {5, "generating-function vs enumeration oracle", "oracle", 30.0},
      {6, "exact inequality suites", "inequalities", 60.0},
      {7, "sampler law", "sampler", 30.0},
      {8, "Goncharov trend", "goncharov", 60.0},
      {9, "corrected normal approximation and quadratic residual", "clt", 180.0},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string summary;
    try {
      const auto r = run_suite(c.suite);
      pass = r.pass;
      summary = r.summary;
    } catch (const std::exception& e) {
      summary = std::string("error: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_seconds;
    pass = pass && in_time;
    if (!pass) ++failed;
    std::printf("[%s] %2d. %s: %s; %.2f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL",
                c.id, c.title, summary.c_str(), secs, c.budget_seconds,
                in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
  }

  std::string detail;
  const bool pass10 = reproducible(argv[1], detail);
  if (!pass10) ++failed;
  std::printf("[%s] 10. CLI reproducibility: %s\n", pass10 ? "PASS" : "FAIL", detail.c_str());

  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
