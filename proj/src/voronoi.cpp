#include "norlund/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "norlund/random.hpp"

namespace norlund {

WeightSpec::WeightSpec(std::vector<double> d, std::vector<double> p,
                       double d_minus, double d_plus)
    : d_(std::move(d)),
      p_(std::move(p)),
      d_minus_(d_minus),
      d_plus_(d_plus),
      theta_(std::min(d_minus, 1.0)) {}

WeightSpec WeightSpec::build(std::vector<double> d, double d_minus,
                             double d_plus) {
  if (!(d_minus > 0.0) || !std::isfinite(d_plus) || d_plus < d_minus) {
    throw ValidationError("build_weights: need 0 < d_minus <= d_plus < inf");
  }
  std::vector<std::size_t> bad;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (!(d[k] >= d_minus && d[k] <= d_plus)) bad.push_back(k + 1);
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "build_weights: d_k outside [" << d_minus << ", " << d_plus
        << "] at k =";
    for (std::size_t i = 0; i < bad.size() && i < 10; ++i) msg << ' ' << bad[i];
    if (bad.size() > 10) msg << " ... (" << bad.size() << " total)";
    throw ValidationError(msg.str());
  }

  const std::size_t n_max = d.size();
  std::vector<double> p(n_max + 1, 0.0);
  p[0] = 1.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) acc += d[k - 1] * p[n - k];
    p[n] = acc / static_cast<double>(n);
    if (!std::isfinite(p[n]) || !(p[n] > 0.0)) {
      throw OverflowError("build_weights: p_" + std::to_string(n) +
                          " is not a positive finite number");
    }
  }
  return WeightSpec(std::move(d), std::move(p), d_minus, d_plus);
}

WeightSpec WeightSpec::constant(double theta, std::size_t n_max) {
  return build(std::vector<double>(n_max, theta), theta, theta);
}

WeightSpec WeightSpec::random(double lo, double hi, std::size_t n_max,
                              std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> d(n_max);
  for (auto& v : d) v = uniform(rng, lo, hi);
  return build(std::move(d), lo, hi);
}

SeriesPoly<double> WeightSpec::p_series(std::size_t order) const {
  if (order > n_max()) {
    throw ArgumentError("p_series: order " + std::to_string(order) +
                        " exceeds n_max " + std::to_string(n_max()));
  }
  return SeriesPoly<double>(
      std::vector<double>(p_.begin(), p_.begin() + order + 1));
}

double WeightSpec::p_at_scale(std::size_t n) const {
  if (n == 0) throw ArgumentError("p_at_scale: n must be >= 1");
  const std::size_t order = eval_order_for(n);
  if (order > n_max()) {
    throw ArgumentError("p_at_scale: evaluating at exp(-1/" +
                        std::to_string(n) + ") needs n_max >= " +
                        std::to_string(order));
  }
  const double x = std::exp(-1.0 / static_cast<double>(n));
  double acc = 0.0;
  for (std::size_t k = order + 1; k-- > 0;) acc = acc * x + p_[k];
  return acc;
}

RemainderReport remainder_report(const SeriesPoly<double>& a,
                                 const WeightSpec& w, std::size_t n,
                                 std::size_t tail_horizon) {
  if (n == 0) throw ArgumentError("remainder_report: n must be >= 1");
  if (tail_horizon < 8 * n) {
    throw ArgumentError("remainder_report: tail_horizon " +
                        std::to_string(tail_horizon) + " < 8n = " +
                        std::to_string(8 * n));
  }
  const std::size_t eval_order = eval_order_for(n);
  const std::size_t need = std::max(eval_order, tail_horizon);
  if (a.order() < need || w.n_max() < need) {
    throw ArgumentError("remainder_report: series and weights must reach order " +
                        std::to_string(need));
  }

  const double nd = static_cast<double>(n);
  const double x = std::exp(-1.0 / nd);
  const double theta = w.theta();

  std::vector<double> s(tail_horizon + 1, 0.0);
  for (std::size_t j = 1; j <= tail_horizon; ++j) s[j] = s_transform(a, w, j);

  RemainderReport r;
  r.n = n;
  r.voronoi_mean = voronoi_mean(a, w, n);
  r.g_at_point = series_eval_real(a.truncated(eval_order), x);
  r.correction = s[n] / (nd * w.p(n));
  r.lhs = std::abs(r.voronoi_mean - r.g_at_point - r.correction);

  double sum1 = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    sum1 += std::abs(s[j]) * std::pow(jd, theta - 2.0) / w.p(j);
  }
  r.rhs_sum1 = sum1 * std::pow(nd, -theta);

  double sum2 = 0.0;
  for (std::size_t j = n + 1; j <= tail_horizon; ++j) {
    const double jd = static_cast<double>(j);
    sum2 += std::abs(s[j]) * std::exp(-jd / nd) / jd;
  }
  r.rhs_sum2 = sum2 / w.p_at_scale(n);

  const double rhs = r.rhs_sum1 + r.rhs_sum2;
  r.ratio = rhs > 0.0 ? r.lhs / rhs : 0.0;
  if (!std::isfinite(r.ratio) || !std::isfinite(r.lhs)) {
    throw OverflowError("remainder_report: non-finite result at n=" +
                        std::to_string(n));
  }
  return r;
}

std::vector<double> tauber_trajectory(const SeriesPoly<double>& a,
                                      const WeightSpec& w,
                                      std::span<const std::size_t> n_list) {
  std::vector<double> out;
  out.reserve(n_list.size());
  for (std::size_t n : n_list) {
    if (n == 0) {
      out.push_back(0.0);  // S(g;0) = 0
      continue;
    }
    out.push_back(s_transform(a, w, n) /
                  (static_cast<double>(n) * w.p(n)));
  }
  return out;
}

double lower_ratio_floor(double c) {
  if (c <= 0.5) return 0.5;
  return std::exp(-0.5) / (2.0 * std::pow(2.0 * c, c));
}

LowerRatioCheck lower_ratio_check(const SeriesPoly<double>& b, double c,
                                  std::size_t N) {
  if (!(c > 0.0)) throw ArgumentError("lower_ratio_check: c must be > 0");
  bool any_positive = false;
  for (std::size_t k = 0; k <= b.order(); ++k) {
    if (b[k] < 0.0) {
      throw ValidationError("lower_ratio_check: negative coefficient b_" +
                            std::to_string(k));
    }
    any_positive = any_positive || b[k] > 0.0;
  }
  if (!any_positive) {
    throw ValidationError("lower_ratio_check: b is identically zero");
  }
  if (static_cast<double>(N) < 2.0 * c) {
    throw PreconditionError("lower_ratio_check: need N >= 2c");
  }
  if (N == 0 || N > b.order()) {
    throw ArgumentError("lower_ratio_check: N out of range");
  }

  for (int i = 1; i <= 99; ++i) {
    const double x = i / 100.0;
    double val = 0.0;
    double der = 0.0;
    for (std::size_t k = b.order() + 1; k-- > 0;) {
      der = der * x + val;
      val = val * x + b[k];
    }
    if (der > (c / (1.0 - x)) * val * (1.0 + 1e-12)) {
      throw PreconditionError(
          "lower_ratio_check: b'(x)/b(x) > c/(1-x) at x=" +
          std::to_string(x));
    }
  }

  double partial = 0.0;
  for (std::size_t k = 0; k <= N; ++k) partial += b[k];
  const double at = series_eval_real(b, std::exp(-1.0 / static_cast<double>(N)));

  LowerRatioCheck r;
  r.ratio = partial / at;
  r.floor = lower_ratio_floor(c);
  r.pass = r.ratio >= r.floor;
  return r;
}

RatioBoundsCheck ratio_bounds_check(const WeightSpec& w, std::size_t m,
                                    std::size_t n) {
  if (n < 1 || m < n) {
    throw ArgumentError("ratio_bounds_check: need m >= n >= 1");
  }
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  RatioBoundsCheck r;
  r.ratio = w.p_at_scale(m) / w.p_at_scale(n);
  r.lower = std::pow(md / nd, w.d_minus()) * std::exp(-w.d_minus() / nd);
  r.upper = std::pow(md / nd, w.d_plus()) * std::exp(w.d_plus() / md);
  // Relative slack: both sides can be large when m >> n.
  r.pass = r.ratio >= r.lower * (1.0 - kInequalitySlack) &&
           r.ratio <= r.upper * (1.0 + kInequalitySlack);
  return r;
}

SeriesPoly<double> reciprocal_coeffs(const WeightSpec& w, std::size_t N) {
  if (N > w.n_max()) {
    throw ArgumentError("reciprocal_coeffs: N exceeds n_max");
  }
  std::vector<double> q(N + 1, 0.0);
  q[0] = 1.0;
  for (std::size_t n = 1; n <= N; ++n) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) acc += w.p(k) * q[n - k];
    q[n] = -acc;
  }
  return SeriesPoly<double>(std::move(q));
}

double v_coeff(const WeightSpec& w, std::size_t m, std::size_t j) {
  if (j == 0) throw ArgumentError("v_coeff: j must be >= 1");
  const auto q = reciprocal_coeffs(w, m);
  double acc = 0.0;
  for (std::size_t s = 0; s <= m; ++s) {
    acc += w.p(m - s) * q[s] / static_cast<double>(s + j);
  }
  return acc;
}

}  // namespace norlund
