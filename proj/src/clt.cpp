#include "norlund/clt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace norlund {

namespace {

nlohmann::json num(double v) {
  // JSON has no infinity; emit it as a string.
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

void check_n(int n, const WeightSpec& w, const char* op) {
  if (static_cast<std::size_t>(n) > w.n_max()) {
    throw ArgumentError(std::string(op) + ": n exceeds weight n_max");
  }
}

// p_{n-j}/p_n - 1
double tilt(const WeightSpec& w, int n, int j) {
  return w.p(n - j) / w.p(n) - 1.0;
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// ---------------------------------------------------------------------------

nlohmann::json CltStats::to_json() const {
  return {{"n", n},         {"p", num(p)},
          {"A_n", A_n},     {"C_n", C_n},
          {"L_n3", L_n3},   {"L_np", L_np},
          {"L_n2_prime", L_n2_prime},
          {"rho_p", rho_p}, {"normalized", normalized},
          {"p_admissible", p_admissible}};
}

double additive_variance_mass(const AdditiveSpec& h, const WeightSpec& w) {
  check_n(h.n(), w, "additive_variance_mass");
  double acc = 0.0;
  for (int k = 1; k <= h.n(); ++k) acc += w.d(k) * h.hhat(k) * h.hhat(k) / k;
  return acc;
}

CltStats stats_bundle(const AdditiveSpec& h, const WeightSpec& w, double p) {
  const int n = h.n();
  check_n(n, w, "stats_bundle");
  CltStats s;
  s.n = n;
  s.p = p;
  s.p_admissible = p > std::max(2.0, 1.0 / w.d_minus());
  const bool p_inf = std::isinf(p);
  double rho_acc = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double hk = h.hhat(k);
    const double ah = std::abs(hk);
    s.A_n += w.d(k) * hk / k;
    s.C_n += w.d(k) * (hk / k) * tilt(w, n, k);
    s.L_n3 += ah * ah * ah / k;
    s.L_n2_prime += (hk * hk / k) * std::abs(tilt(w, n, k));
    const double dev = std::abs(std::polar(1.0, hk) - 1.0);
    if (p_inf) {
      s.L_np = std::max(s.L_np, ah);
      rho_acc = std::max(rho_acc, dev);
    } else {
      s.L_np += std::pow(ah, p) / k;
      rho_acc += std::pow(dev, p) / k;
    }
  }
  s.rho_p = p_inf ? rho_acc : std::pow(rho_acc, 1.0 / p);
  s.normalized = std::abs(additive_variance_mass(h, w) - 1.0) <= 1e-10;
  return s;
}

AdditiveSpec normalize_additive(const AdditiveSpec& h, const WeightSpec& w) {
  const double mass = additive_variance_mass(h, w);
  if (!(mass > 0.0)) {
    throw DomainError("normalize_additive: hhat is identically zero");
  }
  const double scale = 1.0 / std::sqrt(mass);
  std::vector<double> out(h.values().begin(), h.values().end());
  for (auto& v : out) v *= scale;
  return AdditiveSpec(std::move(out));
}

Complex char_fn(const AdditiveSpec& h, const WeightSpec& w, double t,
                bool centered) {
  Complex g = mean_mult_gf(h.exp_i(t), w);
  if (centered) {
    double a = 0.0;
    for (int k = 1; k <= h.n(); ++k) a += w.d(k) * h.hhat(k) / k;
    g *= std::polar(1.0, -t * a);
  }
  return g;
}

nlohmann::json GapReport::to_json() const {
  return {{"n", n},           {"gap", gap},         {"budget", budget},
          {"ratio", ratio},   {"argmax", argmax},   {"stats", stats.to_json()}};
}

GapReport corrected_gap(const AdditiveSpec& h, const WeightSpec& w, double p,
                        EnumerationGuard guard) {
  GapReport r;
  r.n = h.n();
  r.stats = stats_bundle(h, w, p);
  if (!r.stats.normalized) {
    throw PreconditionError(
        "corrected_gap: hhat must satisfy sum d_k hhat(k)^2/k = 1");
  }
  const DistTable law = additive_dist(h, w, guard);
  const double shift = r.stats.A_n;
  const double cn = r.stats.C_n;
  auto target = [cn](double x) { return normal_cdf(x) - normal_pdf(x) * cn; };

  auto consider = [&](double x, double f) {
    const double d = std::abs(f - target(x));
    if (d > r.gap) {
      r.gap = d;
      r.argmax = x;
    }
  };

  const auto atoms = law.atoms();
  double below = 0.0;
  for (const auto& a : atoms) {
    const double x = a.value - shift;
    consider(x, below);
    below += a.prob;
    consider(x, below);
  }

  constexpr int kGrid = 10000;
  const double lo = atoms.front().value - shift - 1.0;
  const double hi = atoms.back().value - shift + 1.0;
  std::size_t idx = 0;
  double cum = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double x = lo + (hi - lo) * i / (kGrid - 1);
    while (idx < atoms.size() && atoms[idx].value - shift < x) {
      cum += atoms[idx].prob;
      ++idx;
    }
    consider(x, cum);
  }

  const double lp_term = std::isinf(p) ? r.stats.L_np * r.stats.L_np
                                       : std::pow(r.stats.L_np, 2.0 / p);
  r.budget = r.stats.L_n3 + lp_term + r.stats.L_n2_prime;
  r.ratio = r.budget > 0.0 ? r.gap / r.budget : 0.0;
  return r;
}

double kolmogorov_distance(const DistTable& law, double shift, double scale) {
  if (!(scale > 0.0)) throw ArgumentError("kolmogorov_distance: scale > 0");
  double sup = 0.0;
  double below = 0.0;
  for (const auto& a : law.atoms()) {
    const double phi = normal_cdf((a.value - shift) / scale);
    sup = std::max(sup, std::abs(below - phi));
    below += a.prob;
    sup = std::max(sup, std::abs(below - phi));
  }
  return sup;
}

// ---------------------------------------------------------------------------

double rho(const MultiplicativeSpec& f, double p) {
  if (!(p >= 1.0)) throw ArgumentError("rho: p must be >= 1");
  double acc = 0.0;
  for (int j = 1; j <= f.n(); ++j) {
    const double dev = std::abs(f.fhat(j) - 1.0);
    if (std::isinf(p)) {
      acc = std::max(acc, dev);
    } else {
      acc += std::pow(dev, p) / j;
    }
  }
  return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

Complex log_m(const MultiplicativeSpec& f, const WeightSpec& w, double x) {
  check_n(f.n(), w, "log_m");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("log_m: x must lie in [0, 1]");
  Complex acc = 0.0;
  double xj = 1.0;
  for (int j = 1; j <= f.n(); ++j) {
    xj *= x;
    acc += w.d(j) * (f.fhat(j) - 1.0) * (xj / j);
  }
  return acc;
}

nlohmann::json DeltaBoundReport::to_json() const {
  return {{"delta_n", delta_n},
          {"rhs", rhs},
          {"ratio", ratio},
          {"small_d_branch", small_d_branch}};
}

DeltaBoundReport delta_bound_report(const MultiplicativeSpec& f,
                                    const WeightSpec& w) {
  if (!f.bounded()) {
    throw PreconditionError("delta_bound_report: needs |fhat(j)| <= 1");
  }
  const int n = f.n();
  check_n(n, w, "delta_bound_report");
  DeltaBoundReport r;
  if (n == 0) return r;

  const Complex mean = mean_mult_gf(f, w);
  r.delta_n = std::abs(mean - std::exp(log_m(f, w, 1.0)));

  double p_sum = 0.0;
  for (int j = 0; j <= n; ++j) p_sum += w.p(j);
  const double nd = n;
  const double dm = w.d_minus();
  r.small_d_branch = dm < 1.0;

  double first = 0.0;
  double second = 0.0;
  double third = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double dev = std::abs(f.fhat(k) - 1.0);
    first += dev * w.p(n - k);
    if (r.small_d_branch) {
      second += dev * std::pow(static_cast<double>(k), dm - 1.0);
      third += dev;
    } else {
      second += dev * (1.0 + std::log(nd / k));
    }
  }
  r.rhs = first / p_sum;
  if (r.small_d_branch) {
    r.rhs += second * std::pow(nd, -dm) + third / nd;
  } else {
    r.rhs += second / nd;
  }
  r.ratio = r.rhs > 0.0 ? r.delta_n / r.rhs : 0.0;
  return r;
}

nlohmann::json ExpansionResidual::to_json() const {
  return {{"residual", residual},
          {"rho", rho},
          {"ratio", ratio},
          {"p_admissible", p_admissible}};
}

ExpansionResidual expansion_residual(const MultiplicativeSpec& f,
                                     const WeightSpec& w, double p,
                                     double delta) {
  if (!f.bounded()) {
    throw PreconditionError("expansion_residual: needs |fhat(j)| <= 1");
  }
  const int n = f.n();
  check_n(n, w, "expansion_residual");
  ExpansionResidual r;
  r.p_admissible = p > std::max(1.0, 1.0 / w.d_minus());
  r.rho = rho(f, p);
  if (r.rho > delta) {
    throw PreconditionError("expansion_residual: rho(p) = " +
                            std::to_string(r.rho) + " exceeds delta = " +
                            std::to_string(delta));
  }
  const Complex scaled = mean_mult_gf(f, w) * std::exp(-log_m(f, w, 1.0));
  Complex first_order = 1.0;
  for (int j = 1; j <= n; ++j) {
    first_order += w.d(j) * (f.fhat(j) - 1.0) / static_cast<double>(j) *
                   tilt(w, n, j);
  }
  r.residual = std::abs(scaled - first_order);
  r.ratio = r.rho > 0.0 ? r.residual / (r.rho * r.rho) : 0.0;
  return r;
}

nlohmann::json EuBoundReport::to_json() const {
  return {{"lhs", lhs}, {"majorant", majorant}, {"e_u", e_u}, {"ratio", ratio}};
}

double e_penalty(const MultiplicativeSpec& f, double u) {
  if (!(u > 0.0)) throw ArgumentError("E(u): u must be > 0");
  double acc = 0.0;
  for (int k = 1; k <= f.n(); ++k) {
    const double dev = std::abs(f.fhat(k) - 1.0);
    if (dev > u) acc += dev / k;
  }
  return std::exp(2.0 * acc);
}

EuBoundReport eu_bound_report(const MultiplicativeSpec& f, const WeightSpec& w,
                              double u) {
  if (!(u > 0.0)) throw ArgumentError("eu_bound_report: u must be > 0");
  if (!f.bounded()) {
    throw PreconditionError("eu_bound_report: needs |fhat(j)| <= 1");
  }
  check_n(f.n(), w, "eu_bound_report");
  EuBoundReport r;
  r.lhs = std::abs(mean_mult_gf(f, w));
  r.e_u = e_penalty(f, u);
  r.majorant = std::abs(std::exp(log_m(f, w, 1.0))) * std::pow(r.e_u, w.d_plus());
  r.ratio = r.lhs / r.majorant;
  return r;
}

}  // namespace norlund
