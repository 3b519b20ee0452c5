#pragma once

// Command-line front end.  Exit codes:
//   0 success, 1 a check suite failed, 2 usage or invalid input,
//   3 enumeration guard exceeded, 4 numeric overflow, 5 I/O failure.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace norlund {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitResource = 3,
  kExitOverflow = 4,
  kExitIo = 5,
};

struct RunConfig {
  std::string command;  // weights voronoi tauber mean dist clt sample check
  std::string d_spec = "constant:1";  // constant:T | random:LO:HI | file:PATH
  std::vector<std::size_t> n_list;    // from --n or --n-sweep
  std::string p = "4";                // real or "inf"
  double u = 0.1;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "csv";
  std::string out;  // empty: standard output
  bool override_guard = false;
  std::string suite = "all";
  std::size_t nmax = 512;
  std::string series = "alternating";
  std::string hhat = "flat";
  std::string fhat = "random";
  std::size_t count = 1000;
  std::string plot_dir;  // empty: no plot data
};

// One (x, y) series for external plotting.
struct PlotSeries {
  std::string name;  // file stem
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<double, double>> points;
};

// Writes <dir>/<name>.csv for each series: a header row, then one x,y row
// per point.  Throws IoError naming the path on failure.
void emit_plotdata(const std::vector<PlotSeries>& series,
                   const std::filesystem::path& dir);

// Executes a parsed configuration, writing the artifact to cfg.out (or os
// when empty).  Library exceptions propagate.
int run(const RunConfig& cfg, std::ostream& os);

// Parses argv, runs, and maps every failure to an exit code; messages go
// to err.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace norlund
