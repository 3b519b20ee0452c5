#pragma once

// Standard check families.  Each suite runs one fixed, seeded family of
// instances and reports pass/fail together with the per-instance table, so
// the CLI check command and the acceptance runner share one definition.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace norlund {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void write_csv(std::ostream& os) const;
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string summary;
  Table table;
};

struct SuiteOptions {
  // Largest n for the sweep-based suites (voronoi: n = 16, 32, ... <= n_max).
  std::size_t n_max = 512;
  std::uint64_t seed = 20240611;
};

// weights, cesaro, tauber, voronoi, oracle, inequalities, sampler,
// goncharov, clt
const std::vector<std::string>& suite_names();

// Throws ArgumentError on an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts = {});

}  // namespace norlund
