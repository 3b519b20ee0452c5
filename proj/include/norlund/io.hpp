#pragma once

#include <cstdio>
#include <string>

namespace norlund {

inline constexpr const char* kVersion = "0.1.0";

// 17 significant digits, '.' decimal separator, no grouping.  Parsing the
// result with strtod recovers the same double.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace norlund
