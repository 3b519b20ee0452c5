#include "norlund/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "norlund/errors.hpp"

namespace norlund {

namespace {

template <typename Better>
FittedBound fit(std::span<const double> values, double headroom, double init,
                Better better) {
  if (values.size() < 2) {
    throw ArgumentError("fitted bound needs at least two values");
  }
  FittedBound r;
  r.headroom = headroom;
  r.fitted = init;
  r.worst_holdout = init;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) {
      r.all_finite = false;
      continue;
    }
    if (i % 2 == 0) {
      ++r.fit_count;
      if (better(v, r.fitted)) r.fitted = v;
    } else {
      ++r.holdout_count;
      if (better(v, r.worst_holdout)) r.worst_holdout = v;
    }
  }
  return r;
}

}  // namespace

nlohmann::json FittedBound::to_json() const {
  return {{"fitted", fitted},         {"worst_holdout", worst_holdout},
          {"headroom", headroom},     {"fit_count", fit_count},
          {"holdout_count", holdout_count},
          {"all_finite", all_finite}, {"pass", pass}};
}

FittedBound fit_upper(std::span<const double> values, double headroom) {
  auto r = fit(values, headroom, -std::numeric_limits<double>::infinity(),
               [](double a, double b) { return a > b; });
  r.pass = r.all_finite && r.worst_holdout <= headroom * r.fitted;
  return r;
}

FittedBound fit_lower(std::span<const double> values, double headroom) {
  auto r = fit(values, headroom, std::numeric_limits<double>::infinity(),
               [](double a, double b) { return a < b; });
  r.pass = r.all_finite && r.fitted > 0.0 && r.worst_holdout >= r.fitted / headroom;
  return r;
}

}  // namespace norlund
