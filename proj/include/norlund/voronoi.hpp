#pragma once

// Voronoi (Norlund) summation with weights
//
//   p(z) = sum_n p_n z^n = exp( sum_{k>=1} d_k z^k / k ),  0 < d- <= d_k <= d+,
//
// the remainder transform S(g;j) = sum_k a_k k p_{j-k}, and numeric checks
// of the inequalities satisfied by this weight class.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "norlund/errors.hpp"
#include "norlund/series.hpp"

namespace norlund {

class WeightSpec {
 public:
  // Validates d_1..d_N against [d_minus, d_plus] and runs the recurrence
  // n p_n = sum_{k=1..n} d_k p_{n-k}.  d[0] holds d_1.
  static WeightSpec build(std::vector<double> d, double d_minus, double d_plus);

  // d_k = theta for all k; bounds [theta, theta].
  static WeightSpec constant(double theta, std::size_t n_max);

  // d_k uniform on [lo, hi] from a seeded generator; bounds [lo, hi].
  static WeightSpec random(double lo, double hi, std::size_t n_max,
                           std::uint64_t seed);

  std::size_t n_max() const { return d_.size(); }
  double d_minus() const { return d_minus_; }
  double d_plus() const { return d_plus_; }
  double theta() const { return theta_; }

  // 1-based: d(1) .. d(n_max).
  double d(std::size_t k) const { return d_[k - 1]; }
  std::span<const double> d_values() const { return d_; }

  double p(std::size_t n) const { return p_[n]; }
  std::span<const double> p_values() const { return p_; }

  // p_0..p_order as a series; order <= n_max.
  SeriesPoly<double> p_series(std::size_t order) const;

  // p(exp(-1/n)) from the truncated series of order eval_order_for(n).
  // Requires n_max >= eval_order_for(n).
  double p_at_scale(std::size_t n) const;

 private:
  WeightSpec(std::vector<double> d, std::vector<double> p, double d_minus,
             double d_plus);

  std::vector<double> d_;
  std::vector<double> p_;
  double d_minus_;
  double d_plus_;
  double theta_;
};

// ---------------------------------------------------------------------------
// Means and the S-transform.  Templated on the coefficient scalar so complex
// generating functions (m(z) in the permutation module) reuse them.

// (1/p_n) sum_{k=0..n} a_k p_{n-k} against an explicit weight array.  The
// raw form admits degenerate weights such as p = (1, 0, 0, ...), for which
// the mean is the plain partial sum divided by p_0.
template <typename T>
T voronoi_mean(const SeriesPoly<T>& a, std::span<const double> p,
               std::size_t n) {
  if (n > a.order() || n >= p.size()) {
    throw ArgumentError("voronoi_mean: n=" + std::to_string(n) +
                        " out of range");
  }
  T acc(0);
  for (std::size_t k = 0; k <= n; ++k) acc += a[k] * p[n - k];
  return acc / p[n];
}

template <typename T>
T voronoi_mean(const SeriesPoly<T>& a, const WeightSpec& w, std::size_t n) {
  return voronoi_mean(a, w.p_values(), n);
}

// S(g;j) = sum_{k=0..j} a_k k p_{j-k}.  S(g;0) = 0.
template <typename T>
T s_transform(const SeriesPoly<T>& a, const WeightSpec& w, std::size_t j) {
  if (j > a.order() || j > w.n_max()) {
    throw ArgumentError("s_transform: j=" + std::to_string(j) +
                        " out of range");
  }
  T acc(0);
  for (std::size_t k = 1; k <= j; ++k) {
    acc += a[k] * (static_cast<double>(k) * w.p(j - k));
  }
  return acc;
}

struct RemainderReport {
  std::size_t n = 0;
  double voronoi_mean = 0;
  double g_at_point = 0;  // g(exp(-1/n))
  double correction = 0;  // S(g;n) / (n p_n)
  double lhs = 0;
  double rhs_sum1 = 0;
  double rhs_sum2 = 0;
  double ratio = 0;  // lhs / (rhs_sum1 + rhs_sum2), 0/0 -> 0
};

// Both sides of the remainder inequality for the Voronoi mean at n.  The
// second right-hand sum runs over n < j <= tail_horizon, which must be at
// least 8n.  g and p are evaluated at exp(-1/n) from series truncated at
// eval_order_for(n), so a.order() and w.n_max() must reach that order.
RemainderReport remainder_report(const SeriesPoly<double>& a,
                                 const WeightSpec& w, std::size_t n,
                                 std::size_t tail_horizon);

// S(g;n) / (n p_n) for each n in n_list.  Decay to zero is the Tauberian
// condition.
std::vector<double> tauber_trajectory(const SeriesPoly<double>& a,
                                      const WeightSpec& w,
                                      std::span<const std::size_t> n_list);

struct LowerRatioCheck {
  double ratio = 0;  // (sum_{k<=N} b_k) / b(exp(-1/N))
  double floor = 0;  // K(c)
  bool pass = false;
};

// K(c) = 1/2 for c <= 1/2, exp(-1/2) / (2 (2c)^c) otherwise.
double lower_ratio_floor(double c);

// Lower bound for partial sums of a nonnegative series whose logarithmic
// derivative satisfies b'(x)/b(x) <= c/(1-x).  The hypothesis is checked
// on the grid x = 0.01, 0.02, ..., 0.99 only (on the truncated series).
// b(exp(-1/N)) uses the truncated series as given; callers supply
// b.order() >= eval_order_for(N).
LowerRatioCheck lower_ratio_check(const SeriesPoly<double>& b, double c,
                                  std::size_t N);

struct RatioBoundsCheck {
  double ratio = 0;  // p(e^{-1/m}) / p(e^{-1/n})
  double lower = 0;  // (m/n)^{d-} e^{-d-/n}
  double upper = 0;  // (m/n)^{d+} e^{d+/m}
  bool pass = false;
};

inline constexpr double kInequalitySlack = 1e-9;

// Growth of p(x) between x = exp(-1/n) and x = exp(-1/m), m >= n >= 1.
RatioBoundsCheck ratio_bounds_check(const WeightSpec& w, std::size_t m,
                                    std::size_t n);

// Coefficients q_0..q_N of 1/p(z).
SeriesPoly<double> reciprocal_coeffs(const WeightSpec& w, std::size_t N);

// v_{m,j} = sum_{s=0..m} p_{m-s} q_s / (s + j), j >= 1.
double v_coeff(const WeightSpec& w, std::size_t m, std::size_t j);

}  // namespace norlund
