#include "norlund/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "norlund/clt.hpp"
#include "norlund/errors.hpp"
#include "norlund/fit.hpp"
#include "norlund/io.hpp"
#include "norlund/permstat.hpp"
#include "norlund/random.hpp"
#include "norlund/voronoi.hpp"

namespace norlund {

namespace {

using RS = SeriesPoly<double>;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

RS alternating(std::size_t order) {
  std::vector<double> a(order + 1);
  for (std::size_t k = 0; k <= order; ++k) a[k] = k % 2 ? -1.0 : 1.0;
  return RS(std::move(a));
}

RS log1p_series(std::size_t order) {
  std::vector<double> a(order + 1, 0.0);
  for (std::size_t k = 1; k <= order; ++k) a[k] = (k % 2 ? 1.0 : -1.0) / k;
  return RS(std::move(a));
}

// Ten bounded coefficient families; the random ones are seeded.
RS coefficient_family(int id, std::size_t order, std::uint64_t seed) {
  Rng rng(seed + 1000 + id);
  std::vector<double> a(order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    const double kd = static_cast<double>(k);
    const double sign = k % 2 ? -1.0 : 1.0;
    switch (id) {
      case 0: a[k] = 1.0; break;
      case 1: a[k] = sign; break;
      case 2: a[k] = sign / (kd + 1.0); break;
      case 3: a[k] = std::cos(kd); break;
      case 4: a[k] = uniform(rng, -1, 1); break;
      case 5: a[k] = uniform(rng, -1, 1) / std::sqrt(kd + 1.0); break;
      case 6: a[k] = rng() & 1 ? 1.0 : -1.0; break;
      case 7: a[k] = std::cos(0.1 * kd) / std::pow(kd + 1.0, 0.25); break;
      case 8: a[k] = sign / std::sqrt(kd + 1.0); break;
      default: a[k] = uniform01(rng); break;
    }
  }
  return RS(std::move(a));
}

std::vector<Complex> random_unit_disk(Rng& rng, int n) {
  std::vector<Complex> f(n);
  for (auto& v : f) {
    v = std::polar(std::sqrt(uniform01(rng)),
                   uniform(rng, 0, 2 * std::numbers::pi));
  }
  return f;
}

std::vector<double> additive_shape(int shape, int n) {
  std::vector<double> h(n, 0.0);
  for (int j = 1; j <= n; ++j) {
    switch (shape) {
      case 0: h[j - 1] = 1.0; break;
      case 1: h[j - 1] = std::pow(j, -0.1); break;
      default: h[j - 1] = (j & (j - 1)) == 0 ? 1.0 : 0.0; break;
    }
  }
  return h;
}

// 1 + eps (e^{ij} - 1)/j stays in the closed unit disk.
MultiplicativeSpec small_perturbation(double eps, int n) {
  std::vector<Complex> f(n);
  for (int j = 1; j <= n; ++j) {
    f[j - 1] = 1.0 + eps * (std::polar(1.0, double(j)) - 1.0) / double(j);
  }
  return MultiplicativeSpec(std::move(f));
}

std::string fit_summary(const FittedBound& f) {
  return fmt("fitted %.4g, worst holdout %.4g (limit %.4g), %zu+%zu values%s",
             f.fitted, f.worst_holdout, f.headroom * f.fitted, f.fit_count,
             f.holdout_count, f.all_finite ? "" : ", non-finite present");
}

// ---------------------------------------------------------------------------

SuiteResult suite_weights() {
  SuiteResult r;
  r.table.columns = {"theta", "n", "p_n", "closed_form", "error"};
  double worst_abs = 0.0;
  const auto w1 = WeightSpec::constant(1.0, 1000);
  for (int n = 0; n <= 1000; ++n) {
    const double err = std::abs(w1.p(n) - 1.0);
    worst_abs = std::max(worst_abs, err);
    r.table.rows.push_back({1.0, double(n), w1.p(n), 1.0, err});
  }
  double worst_rel = 0.0;
  for (double theta : {0.5, 2.0, 3.0}) {
    const auto w = WeightSpec::constant(theta, 200);
    long double rising = 1.0L;  // theta (theta+1) ... (theta+n-1) / n!
    for (int n = 0; n <= 200; ++n) {
      if (n > 0) rising *= (theta + n - 1) / static_cast<long double>(n);
      const double c = static_cast<double>(rising);
      const double err = std::abs(w.p(n) - c) / c;
      worst_rel = std::max(worst_rel, err);
      r.table.rows.push_back({theta, double(n), w.p(n), c, err});
    }
  }
  r.pass = worst_abs <= 1e-12 && worst_rel <= 1e-10;
  r.summary = fmt("d=1: max |p_n - 1| = %.3g (<= 1e-12); theta in {0.5,2,3}: "
                  "max rel err = %.3g (<= 1e-10)",
                  worst_abs, worst_rel);
  return r;
}

SuiteResult suite_cesaro() {
  SuiteResult r;
  r.table.columns = {"n", "V_n", "error", "bound"};
  const std::size_t n_max = 2000;
  const auto w = WeightSpec::constant(2.0, n_max);
  const RS a = alternating(n_max);
  r.pass = true;
  double worst = 0.0;
  for (std::size_t n = 2; n <= n_max; ++n) {
    const double v = voronoi_mean(a, w, n);
    const double err = std::abs(v - 0.5);
    const double bound = 1.0 / n;
    worst = std::max(worst, err * n);
    if (!(err <= bound)) r.pass = false;
    r.table.rows.push_back({double(n), v, err, bound});
  }
  r.summary = fmt("sum (-1)^k, d=2: max n |V_n - 1/2| = %.4g over n = 2..2000 "
                  "(<= 1)",
                  worst);
  return r;
}

SuiteResult suite_tauber(const SuiteOptions& opts) {
  SuiteResult r;
  r.table.columns = {"weights", "n", "tauber", "V_n"};
  const std::size_t n_max = 2000;
  const RS a = log1p_series(n_max);
  const std::vector<std::size_t> ns{125, 250, 500, 1000, 2000};
  const std::array<WeightSpec, 3> weights{
      WeightSpec::constant(1.0, n_max), WeightSpec::constant(2.0, n_max),
      WeightSpec::random(0.5, 2.5, n_max, opts.seed)};
  r.pass = true;
  std::string detail;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const auto traj = tauber_trajectory(a, weights[i], ns);
    for (std::size_t k = 0; k < ns.size(); ++k) {
      r.table.rows.push_back({double(i), double(ns[k]), traj[k],
                              voronoi_mean(a, weights[i], ns[k])});
    }
    const double err = std::abs(voronoi_mean(a, weights[i], n_max) - std::log(2.0));
    bool decays = std::abs(traj.back()) <= 1e-2;
    for (double t : traj) decays = decays && std::abs(t) <= std::abs(traj[0]) + 1e-15;
    if (!decays || !(err <= 5e-3)) r.pass = false;
    detail += fmt("%s[%s] |V_2000 - log 2| = %.3g, tauber(2000) = %.3g",
                  i ? "; " : "", i == 0 ? "d=1" : i == 1 ? "d=2" : "random",
                  err, traj.back());
  }
  r.summary = "log(1+x): " + detail;
  return r;
}

SuiteResult suite_voronoi(const SuiteOptions& opts) {
  SuiteResult r;
  r.table.columns = {"weights", "family", "n", "lhs", "rhs", "ratio"};
  std::vector<std::size_t> ns;
  for (std::size_t n = 16; n <= opts.n_max; n *= 2) ns.push_back(n);
  if (ns.empty()) throw ArgumentError("check voronoi: n_max must be >= 16");
  const std::size_t order = std::max(eval_order_for(ns.back()), 8 * ns.back());

  std::vector<RS> families;
  for (int id = 0; id < 10; ++id) families.push_back(coefficient_family(id, order, opts.seed));

  std::vector<double> ratios;
  auto run = [&](const WeightSpec& w, int widx) {
    for (int fam = 0; fam < 10; ++fam) {
      for (std::size_t n : ns) {
        const auto rep = remainder_report(families[fam], w, n, 8 * n);
        ratios.push_back(rep.ratio);
        r.table.rows.push_back({double(widx), double(fam), double(n), rep.lhs,
                                rep.rhs_sum1 + rep.rhs_sum2, rep.ratio});
      }
    }
  };
  int widx = 0;
  for (double theta : {0.5, 0.7, 1.0, 2.0, 2.5}) run(WeightSpec::constant(theta, order), widx++);
  for (int i = 0; i < 20; ++i) run(WeightSpec::random(0.5, 2.5, order, opts.seed + i), widx++);

  const auto fit = fit_upper(ratios);
  r.pass = fit.pass;
  r.summary = "remainder ratio: " + fit_summary(fit);
  return r;
}

SuiteResult suite_oracle(const SuiteOptions& opts) {
  SuiteResult r;
  r.table.columns = {"trial", "n", "gf_re", "gf_im", "enum_re", "enum_im", "error"};
  Rng rng(opts.seed);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 20);
    std::vector<double> d(n);
    for (auto& v : d) v = uniform(rng, 0.5, 2.5);
    const auto w = WeightSpec::build(d, 0.5, 2.5);
    const MultiplicativeSpec f(random_unit_disk(rng, n));
    const Complex gf = mean_mult_gf(f, w);
    const Complex en = mean_mult_enum(f, w);
    const double err = std::abs(gf - en);
    worst = std::max(worst, err);
    r.table.rows.push_back({double(trial), double(n), gf.real(), gf.imag(),
                            en.real(), en.imag(), err});
  }
  const auto w1 = WeightSpec::constant(1.0, 3);
  const MultiplicativeSpec no_fixed({0.0, 1.0});
  const double s2 = std::max(std::abs(mean_mult_gf(no_fixed, w1) - 0.5),
                             std::abs(mean_mult_enum(no_fixed, w1) - 0.5));
  const auto law = additive_dist(AdditiveSpec({1.0, 0.0, 0.0}), w1);
  const std::array<std::pair<double, double>, 3> expected{
      {{0.0, 1.0 / 3.0}, {1.0, 0.5}, {3.0, 1.0 / 6.0}}};
  bool table_ok = law.size() == expected.size();
  for (std::size_t i = 0; table_ok && i < expected.size(); ++i) {
    table_ok = law.atoms()[i].value == expected[i].first &&
               std::abs(law.atoms()[i].prob - expected[i].second) <= 1e-12;
  }
  r.pass = worst <= 1e-9 && s2 <= 1e-12 && table_ok;
  r.summary = fmt("200 random instances: max |gf - enum| = %.3g (<= 1e-9); "
                  "S_2 fixture err %.3g; S_3 fixed-point table %s",
                  worst, s2, table_ok ? "matches" : "MISMATCH");
  return r;
}

SuiteResult suite_inequalities(const SuiteOptions& opts) {
  SuiteResult r;
  r.table.columns = {"family", "instance", "value", "lower", "upper"};
  constexpr int kInstances = 500;
  constexpr std::size_t kMaxN = 400;
  const std::size_t order = eval_order_for(kMaxN);
  Rng rng(opts.seed);

  // Weight pool: six with d in [0.3, 3], two with d+ <= 1/2.
  std::vector<WeightSpec> pool;
  for (int i = 0; i < 8; ++i) {
    double lo, hi;
    if (i < 6) {
      lo = uniform(rng, 0.3, 1.5);
      hi = lo + uniform(rng, 0.0, 1.5);
    } else {
      lo = uniform(rng, 0.1, 0.3);
      hi = uniform(rng, lo, 0.5);
    }
    pool.push_back(WeightSpec::random(lo, hi, order, rng()));
  }
  auto pick = [&]() -> const WeightSpec& { return pool[rng() % pool.size()]; };
  auto draw = [&](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
  };

  std::array<int, 5> failures{};
  auto record = [&](int family, int instance, double value, double lower,
                    double upper, double abs_slack = 0.0) {
    const bool ok = value >= lower - kInequalitySlack * std::abs(lower) - abs_slack &&
                    value <= upper + kInequalitySlack * std::abs(upper) + abs_slack;
    if (!ok) ++failures[family];
    r.table.rows.push_back({double(family), double(instance), value, lower, upper});
  };

  // 0: growth of p(x) between exp(-1/n) and exp(-1/m).
  for (int i = 0; i < kInstances; ++i) {
    const auto& w = pick();
    const std::size_t n = draw(1, kMaxN);
    const std::size_t m = draw(n, kMaxN);
    const auto c = ratio_bounds_check(w, m, n);
    record(0, i, c.ratio, c.lower, c.upper);
    if (!c.pass) ++failures[0];
  }

  // 1: sum_{k<=N} b_k <= e b(exp(-1/N)) for nonnegative b.
  for (int i = 0; i < kInstances; ++i) {
    const std::size_t N = draw(1, kMaxN);
    const std::size_t b_order = eval_order_for(N);
    std::vector<double> b(b_order + 1);
    const int kind = static_cast<int>(rng() % 3);
    const double alpha = uniform(rng, -1.0, 2.0);
    const auto& w = pick();
    for (std::size_t k = 0; k <= b_order; ++k) {
      if (kind == 0) b[k] = w.p(k);
      if (kind == 1) b[k] = uniform01(rng);
      if (kind == 2) b[k] = std::pow(double(k + 1), alpha);
    }
    double partial = 0.0;
    for (std::size_t k = 0; k <= N; ++k) partial += b[k];
    const double bound = std::numbers::e * series_eval_real(RS(b), std::exp(-1.0 / N));
    record(1, i, partial, 0.0, bound);
  }

  // 2: partial-sum floor K(c) for p(z) with c = d+.
  for (int i = 0; i < kInstances; ++i) {
    const auto& w = pick();
    const double c = w.d_plus();
    const std::size_t N = draw(std::max<std::size_t>(1, std::ceil(2.0 * c)), kMaxN);
    try {
      const auto check = lower_ratio_check(w.p_series(eval_order_for(N)), c, N);
      record(2, i, check.ratio, check.floor, std::numbers::e);
      if (!check.pass) ++failures[2];
    } catch (const PreconditionError&) {
      ++failures[2];
    }
  }

  // 3: v_{0,j} = 1/j.
  for (int i = 0; i < kInstances; ++i) {
    const auto& w = pick();
    const std::size_t j = draw(1, 1000000);
    const double target = 1.0 / static_cast<double>(j);
    record(3, i, v_coeff(w, 0, j), target, target);
  }

  // 4: |L(e^{-1/n}) - L(e^{-1/m})| <= d+ rho(p) (1 + |log(n/m)|).
  for (int i = 0; i < kInstances; ++i) {
    const auto& w = pick();
    const int N = static_cast<int>(draw(1, 80));
    const MultiplicativeSpec f(random_unit_disk(rng, N));
    const double p = std::array<double, 4>{1.5, 2.0, 4.0, kInfinity}[rng() % 4];
    const double n = static_cast<double>(draw(1, 500));
    const double m = static_cast<double>(draw(1, 500));
    const double lhs =
        std::abs(log_m(f, w, std::exp(-1.0 / n)) - log_m(f, w, std::exp(-1.0 / m)));
    const double rhs = w.d_plus() * rho(f, p) * (1.0 + std::abs(std::log(n / m)));
    record(4, i, lhs, 0.0, rhs, 1e-15);
  }

  r.pass = std::all_of(failures.begin(), failures.end(), [](int f) { return f == 0; });
  r.summary = fmt("violations out of 500 each: p-ratio bounds %d, partial-sum "
                  "upper bound %d, K(c) floor %d, v_{0,j} = 1/j %d, "
                  "L-difference %d",
                  failures[0], failures[1], failures[2], failures[3], failures[4]);
  return r;
}

SuiteResult suite_sampler(const SuiteOptions& opts) {
  SuiteResult r;
  r.table.columns = {"cycles", "empirical", "exact"};
  const int n = 20;
  const std::size_t draws = 100000;
  const auto w = WeightSpec::constant(2.0, n);
  std::vector<double> hist(n + 1, 0.0);
  for (const auto& t : sample_cycle_types(w, n, draws, opts.seed)) {
    hist[t.cycles()] += 1.0;
  }
  std::vector<DistTable::Atom> atoms;
  for (int k = 1; k <= n; ++k) {
    if (hist[k] > 0) atoms.push_back({double(k), hist[k] / draws});
  }
  const auto empirical = DistTable::from_atoms(std::move(atoms));
  const auto exact = cycles_distribution(w, n);
  for (const auto& a : exact.atoms()) {
    r.table.rows.push_back({a.value, hist[static_cast<int>(a.value)] / draws, a.prob});
  }
  const double tv = total_variation(empirical, exact);
  r.pass = tv <= 0.02;
  r.summary = fmt("n=20, d=2, 1e5 samples (seed %llu): TV = %.4g (<= 0.02)",
                  static_cast<unsigned long long>(opts.seed), tv);
  return r;
}

SuiteResult suite_goncharov() {
  SuiteResult r;
  r.table.columns = {"n", "kolmogorov"};
  std::vector<double> dist;
  for (int n : {50, 200, 800}) {
    const auto law = ewens_cycle_count_law(1.0, n);
    const double k = kolmogorov_distance(law, law.mean(), std::sqrt(law.variance()));
    dist.push_back(k);
    r.table.rows.push_back({double(n), k});
  }
  r.pass = dist[1] < dist[0] && dist[2] < dist[1];
  r.summary = fmt("Kolmogorov distance of standardized cycle count: n=50 %.4g, "
                  "n=200 %.4g, n=800 %.4g (strictly decreasing)",
                  dist[0], dist[1], dist[2]);
  return r;
}

SuiteResult suite_clt() {
  SuiteResult r;
  r.table.columns = {"theta", "shape", "p", "n", "gap", "budget", "ratio"};
  std::vector<double> ratios;
  for (double theta : {0.7, 1.0, 2.0}) {
    const auto w = WeightSpec::constant(theta, 60);
    for (int shape = 0; shape < 3; ++shape) {
      for (double p : {4.0, kInfinity}) {
        for (int n : {20, 40, 60}) {
          const auto h = normalize_additive(AdditiveSpec(additive_shape(shape, n)), w);
          const auto g = corrected_gap(h, w, p);
          ratios.push_back(g.ratio);
          r.table.rows.push_back({theta, double(shape), p, double(n), g.gap,
                                  g.budget, g.ratio});
        }
      }
    }
  }
  const auto fit = fit_upper(ratios);

  bool window_ok = true;
  std::string scaling;
  for (double theta : {0.7, 1.0, 2.0}) {
    const auto w = WeightSpec::constant(theta, 60);
    const double r1 = expansion_residual(small_perturbation(0.01, 60), w, 2.0).residual;
    const double r2 = expansion_residual(small_perturbation(0.005, 60), w, 2.0).residual;
    const double s = r2 / r1;
    if (!(s >= 0.15 && s <= 0.45)) window_ok = false;
    scaling += fmt("%s%.4g", scaling.empty() ? "" : ", ", s);
  }
  r.pass = fit.pass && window_ok;
  r.summary = "corrected gap ratio: " + fit_summary(fit) +
              "; residual(eps/2)/residual(eps) for d in {0.7,1,2}: " + scaling +
              " (window [0.15, 0.45])";
  return r;
}

}  // namespace

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    os << (i ? "," : "") << columns[i];
  }
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << format_number(row[i]);
    }
    os << '\n';
  }
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "weights", "cesaro",  "tauber",    "voronoi", "oracle",
      "inequalities", "sampler", "goncharov", "clt"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opts) {
  SuiteResult r;
  if (name == "weights") r = suite_weights();
  else if (name == "cesaro") r = suite_cesaro();
  else if (name == "tauber") r = suite_tauber(opts);
  else if (name == "voronoi") r = suite_voronoi(opts);
  else if (name == "oracle") r = suite_oracle(opts);
  else if (name == "inequalities") r = suite_inequalities(opts);
  else if (name == "sampler") r = suite_sampler(opts);
  else if (name == "goncharov") r = suite_goncharov();
  else if (name == "clt") r = suite_clt();
  else throw ArgumentError("unknown suite '" + name + "'");
  r.name = name;
  return r;
}

}  // namespace norlund
