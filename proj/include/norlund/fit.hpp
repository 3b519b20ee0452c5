#pragma once

// Boundedness checks for inequalities whose constant is only known to
// exist: fit the constant on one half of a family, then require the other
// half to respect it with a fixed headroom factor.

#include <cstddef>
#include <span>

#include "json.hpp"

namespace norlund {

struct FittedBound {
  double fitted = 0;        // extreme value over the fitting half
  double worst_holdout = 0; // extreme value over the holdout half
  double headroom = 2;
  std::size_t fit_count = 0;
  std::size_t holdout_count = 0;
  bool all_finite = true;
  bool pass = false;

  nlohmann::json to_json() const;
};

// Even indices fit, odd indices are held out.  Passes when every value is
// finite and max(holdout) <= headroom * max(fit).
FittedBound fit_upper(std::span<const double> values, double headroom = 2.0);

// Same split for a positive floor: min(holdout) >= min(fit) / headroom.
FittedBound fit_lower(std::span<const double> values, double headroom = 2.0);

}  // namespace norlund
