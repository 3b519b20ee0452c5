#pragma once

// Quantitative limit laws for additive and multiplicative functions under
// nu_{n,d}: remainder bounds for means of multiplicative functions and the
// corrected normal approximation for additive functions.

#include <complex>
#include <cstddef>
#include <limits>

#include "json.hpp"

#include "norlund/permstat.hpp"
#include "norlund/voronoi.hpp"

namespace norlund {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

double normal_cdf(double x);
double normal_pdf(double x);

// ---------------------------------------------------------------------------
// Additive functions

struct CltStats {
  int n = 0;
  double p = 0;
  double A_n = 0;         // sum d_k hhat(k)/k
  double C_n = 0;         // sum d_j (hhat(j)/j)(p_{n-j}/p_n - 1)
  double L_n3 = 0;        // sum |hhat(k)|^3 / k
  double L_np = 0;        // sum |hhat(k)|^p / k, or max |hhat(k)| for p = inf
  double L_n2_prime = 0;  // sum (hhat(j)^2/j) |p_{n-j}/p_n - 1|
  double rho_p = 0;       // rho_n(p) of fhat(k) = exp(i hhat(k))
  bool normalized = false;
  // p > max{2, 1/d-}; computed regardless, false is a warning.
  bool p_admissible = false;

  nlohmann::json to_json() const;
};

// sum_k d_k hhat(k)^2 / k
double additive_variance_mass(const AdditiveSpec& h, const WeightSpec& w);

CltStats stats_bundle(const AdditiveSpec& h, const WeightSpec& w, double p);

// Rescales hhat so that sum_k d_k hhat(k)^2 / k = 1.
AdditiveSpec normalize_additive(const AdditiveSpec& h, const WeightSpec& w);

// E exp(i t h(sigma)) through the generating function; with centered set
// the result is multiplied by exp(-i t A(n)).
Complex char_fn(const AdditiveSpec& h, const WeightSpec& w, double t,
                bool centered = false);

struct GapReport {
  int n = 0;
  double gap = 0;     // sup_x |F_n(x) - Phi(x) + phi(x) C_n|
  double budget = 0;  // L_{n,3} + L_{n,p}^{2/p} + L'_{n,2}
  double ratio = 0;   // gap / budget
  double argmax = 0;  // x where the sup was attained
  CltStats stats;

  nlohmann::json to_json() const;
};

// Needs a normalized h.  F_n is the exact law of h - A(n) by enumeration;
// the sup is taken over both one-sided limits at every atom and a uniform
// grid of 10^4 points on [min - 1, max + 1].
GapReport corrected_gap(const AdditiveSpec& h, const WeightSpec& w, double p,
                        EnumerationGuard guard = {});

// sup_x |P((X - shift)/scale < x) - Phi(x)|, attained at an atom.
double kolmogorov_distance(const DistTable& law, double shift, double scale);

// ---------------------------------------------------------------------------
// Multiplicative functions

// rho_n(p) = (sum_j |fhat(j) - 1|^p / j)^{1/p}; max_j |fhat(j) - 1| for p = inf.
double rho(const MultiplicativeSpec& f, double p);

// L(x) = sum_{j<=n} d_j (fhat(j) - 1) x^j / j for x in [0, 1].  Since fhat
// is 1 beyond n this is the full series, and m(x) = exp(L(x)).
Complex log_m(const MultiplicativeSpec& f, const WeightSpec& w, double x);

struct DeltaBoundReport {
  double delta_n = 0;
  double rhs = 0;
  double ratio = 0;
  bool small_d_branch = false;  // d- < 1

  nlohmann::json to_json() const;
};

// |M_n^d(f) - exp(sum_j d_j (fhat(j)-1)/j)| against its remainder bracket;
// the bracket shape switches on d- < 1.  Requires |fhat| <= 1.
DeltaBoundReport delta_bound_report(const MultiplicativeSpec& f,
                                    const WeightSpec& w);

inline constexpr double kExpansionDelta = 0.05;

struct ExpansionResidual {
  double residual = 0;
  double rho = 0;
  double ratio = 0;       // residual / rho^2
  bool p_admissible = false;  // p > max{1, 1/d-}

  nlohmann::json to_json() const;
};

// Second-order residual of M_N/p_N exp(-L_N(1)) around
// 1 + sum_j d_j (fhat(j)-1)/j (p_{N-j}/p_N - 1).  Requires |fhat| <= 1 and
// rho(p) <= delta.
ExpansionResidual expansion_residual(const MultiplicativeSpec& f,
                                     const WeightSpec& w, double p,
                                     double delta = kExpansionDelta);

struct EuBoundReport {
  double lhs = 0;       // |M_n / p_n|
  double majorant = 0;  // |exp L_n(1)| E(u)^{d+}
  double e_u = 0;
  double ratio = 0;

  nlohmann::json to_json() const;
};

// E(u) = exp(2 sum_{|fhat(k)-1| > u} |fhat(k)-1| / k).
double e_penalty(const MultiplicativeSpec& f, double u);

EuBoundReport eu_bound_report(const MultiplicativeSpec& f, const WeightSpec& w,
                              double u);

}  // namespace norlund
