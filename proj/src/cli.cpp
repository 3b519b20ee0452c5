#include "norlund/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "norlund/clt.hpp"
#include "norlund/errors.hpp"
#include "norlund/io.hpp"
#include "norlund/permstat.hpp"
#include "norlund/random.hpp"
#include "norlund/suites.hpp"
#include "norlund/voronoi.hpp"

namespace norlund {

namespace {

using RS = SeriesPoly<double>;
using Cell = std::variant<double, std::string>;

struct Artifact {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;
  std::vector<PlotSeries> plots;
};

// ---------------------------------------------------------------------------
// Parsing helpers

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_real(const std::string& s, const std::string& what) {
  if (s == "inf" || s == "infinity") return kInfinity;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw ArgumentError(what + ": cannot parse '" + s + "' as a number");
  }
  return v;
}

std::vector<double> read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::vector<double> values;
  std::string token;
  while (in >> token) {
    for (const auto& part : split(token, ',')) {
      if (!part.empty()) values.push_back(parse_real(part, path));
    }
  }
  if (values.empty()) throw ValidationError("'" + path + "' holds no numbers");
  return values;
}

WeightSpec make_weights(const RunConfig& cfg, std::size_t n_max) {
  n_max = std::max<std::size_t>(n_max, 1);
  const auto parts = split(cfg.d_spec, ':');
  if (parts[0] == "constant" && parts.size() == 2) {
    return WeightSpec::constant(parse_real(parts[1], "--d"), n_max);
  }
  if (parts[0] == "random" && parts.size() == 3) {
    return WeightSpec::random(parse_real(parts[1], "--d"),
                              parse_real(parts[2], "--d"), n_max, cfg.seed);
  }
  if (parts[0] == "file" && parts.size() >= 2) {
    const std::string path = cfg.d_spec.substr(5);
    auto d = read_numbers(path);
    if (d.size() < n_max) {
      throw ArgumentError("--d " + cfg.d_spec + ": file holds " +
                          std::to_string(d.size()) + " weights, need " +
                          std::to_string(n_max));
    }
    d.resize(n_max);
    const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
    return WeightSpec::build(d, *lo, *hi);
  }
  throw ArgumentError("--d must be constant:THETA, random:LO:HI or file:PATH, got '" +
                      cfg.d_spec + "'");
}

RS make_series(const std::string& name, std::size_t order, std::uint64_t seed) {
  std::vector<double> a(order + 1, 0.0);
  Rng rng(seed);
  for (std::size_t k = 0; k <= order; ++k) {
    const double sign = k % 2 ? -1.0 : 1.0;
    if (name == "ones") {
      a[k] = 1.0;
    } else if (name == "alternating") {
      a[k] = sign;
    } else if (name == "log1p") {
      a[k] = k == 0 ? 0.0 : -sign / static_cast<double>(k);
    } else if (name == "alternating-harmonic") {
      a[k] = sign / static_cast<double>(k + 1);
    } else if (name == "random") {
      a[k] = uniform(rng, -1, 1);
    } else {
      throw ArgumentError("--series must be ones, alternating, log1p, "
                          "alternating-harmonic or random, got '" + name + "'");
    }
  }
  return RS(std::move(a));
}

std::vector<double> make_hhat(const std::string& spec, int n) {
  std::vector<double> h(n, 0.0);
  if (spec.rfind("file:", 0) == 0) {
    auto values = read_numbers(spec.substr(5));
    if (values.size() < static_cast<std::size_t>(n)) {
      throw ArgumentError("--hhat " + spec + ": file holds " +
                          std::to_string(values.size()) + " values, need " +
                          std::to_string(n));
    }
    values.resize(n);
    return values;
  }
  for (int j = 1; j <= n; ++j) {
    if (spec == "fixedpoints") {
      h[j - 1] = j == 1 ? 1.0 : 0.0;
    } else if (spec == "cycles" || spec == "flat") {
      h[j - 1] = 1.0;
    } else if (spec == "power") {
      h[j - 1] = std::pow(j, -0.1);
    } else if (spec == "sparse") {
      h[j - 1] = (j & (j - 1)) == 0 ? 1.0 : 0.0;
    } else {
      throw ArgumentError("--hhat must be fixedpoints, cycles, flat, power, "
                          "sparse or file:PATH, got '" + spec + "'");
    }
  }
  return h;
}

std::vector<Complex> make_fhat(const std::string& spec, int n, Rng& rng) {
  std::vector<Complex> f(n, 1.0);
  const auto parts = split(spec, ':');
  for (int j = 1; j <= n; ++j) {
    if (spec == "random") {
      f[j - 1] = std::polar(std::sqrt(uniform01(rng)),
                            uniform(rng, 0, 2 * std::numbers::pi));
    } else if (spec == "one") {
      f[j - 1] = 1.0;
    } else if (spec == "no-fixed-points") {
      f[j - 1] = j == 1 ? 0.0 : 1.0;
    } else if (parts[0] == "root" && parts.size() == 2) {
      f[j - 1] = std::polar(1.0, parse_real(parts[1], "--fhat") / j);
    } else {
      throw ArgumentError("--fhat must be random, one, no-fixed-points or "
                          "root:ALPHA, got '" + spec + "'");
    }
  }
  return f;
}

std::size_t max_n(const RunConfig& cfg) {
  return *std::max_element(cfg.n_list.begin(), cfg.n_list.end());
}

int single_n(const RunConfig& cfg) {
  if (cfg.n_list.size() != 1) {
    throw ArgumentError(cfg.command + " takes a single --n");
  }
  return static_cast<int>(cfg.n_list.front());
}

EnumerationGuard guard_of(const RunConfig& cfg) {
  return EnumerationGuard{cfg.override_guard};
}

std::string join_n(const std::vector<std::size_t>& ns) {
  std::string s;
  for (std::size_t i = 0; i < ns.size(); ++i) s += (i ? "," : "") + std::to_string(ns[i]);
  return s;
}

// Ordered config echo; destinations (--out, --plot-dir) are left out so
// that identical runs produce identical bytes wherever they are written.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> e{{"command", c.command}};
  if (c.command == "check") {
    e.push_back({"suite", c.suite});
    e.push_back({"nmax", std::to_string(c.nmax)});
    e.push_back({"seed", std::to_string(c.seed)});
    e.push_back({"format", c.format});
    return e;
  }
  e.push_back({"d", c.d_spec});
  e.push_back({"n", join_n(c.n_list)});
  e.push_back({"seed", std::to_string(c.seed)});
  if (c.command == "voronoi" || c.command == "tauber") e.push_back({"series", c.series});
  if (c.command == "mean") {
    e.push_back({"fhat", c.fhat});
    e.push_back({"u", format_number(c.u)});
  }
  if (c.command == "dist" || c.command == "clt") e.push_back({"hhat", c.hhat});
  if (c.command == "clt") e.push_back({"p", c.p});
  if (c.command == "sample") e.push_back({"count", std::to_string(c.count)});
  e.push_back({"override_guard", c.override_guard ? "true" : "false"});
  e.push_back({"format", c.format});
  return e;
}

// ---------------------------------------------------------------------------
// Commands

Artifact cmd_weights(const RunConfig& cfg) {
  Artifact a;
  a.columns = {"n", "p_n"};
  PlotSeries plot{"weights", "n", "p_n", {}};
  const std::size_t top = max_n(cfg);
  const auto w = make_weights(cfg, top);
  std::vector<std::size_t> ns = cfg.n_list;
  if (ns.size() == 1) {
    ns.clear();
    for (std::size_t n = 0; n <= top; ++n) ns.push_back(n);
  }
  for (std::size_t n : ns) {
    a.rows.push_back({double(n), w.p(n)});
    plot.points.emplace_back(double(n), w.p(n));
  }
  a.plots.push_back(std::move(plot));
  return a;
}

Artifact cmd_voronoi(const RunConfig& cfg) {
  Artifact a;
  a.columns = {"n", "V_n", "g_at_point", "correction", "lhs", "rhs_sum1", "rhs_sum2", "ratio"};
  PlotSeries plot{"voronoi_ratio", "n", "ratio", {}};
  const std::size_t top = max_n(cfg);
  const std::size_t order = std::max(eval_order_for(top), 8 * top);
  const auto w = make_weights(cfg, order);
  const RS series = make_series(cfg.series, order, cfg.seed);
  for (std::size_t n : cfg.n_list) {
    const auto r = remainder_report(series, w, n, 8 * n);
    a.rows.push_back({double(n), r.voronoi_mean, r.g_at_point, r.correction, r.lhs,
                      r.rhs_sum1, r.rhs_sum2, r.ratio});
    plot.points.emplace_back(double(n), r.ratio);
  }
  a.plots.push_back(std::move(plot));
  return a;
}

Artifact cmd_tauber(const RunConfig& cfg) {
  Artifact a;
  a.columns = {"n", "tauber", "V_n"};
  PlotSeries plot{"tauber", "n", "S_n/(n p_n)", {}};
  const std::size_t top = max_n(cfg);
  const auto w = make_weights(cfg, top);
  const RS series = make_series(cfg.series, top, cfg.seed);
  const auto traj = tauber_trajectory(series, w, cfg.n_list);
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
    const std::size_t n = cfg.n_list[i];
    a.rows.push_back({double(n), traj[i], voronoi_mean(series, w, n)});
    plot.points.emplace_back(double(n), traj[i]);
  }
  a.plots.push_back(std::move(plot));
  return a;
}

Artifact cmd_mean(const RunConfig& cfg) {
  Artifact a;
  a.columns = {"n",     "mean_re", "mean_im",   "enum_re",     "enum_im",
               "abs_diff", "rho_2", "delta_n", "delta_rhs", "delta_ratio",
               "e_u",   "eu_ratio"};
  PlotSeries plot{"mean_delta_ratio", "n", "delta_ratio", {}};
  const auto w = make_weights(cfg, max_n(cfg));
  Rng rng(cfg.seed);
  for (std::size_t n : cfg.n_list) {
    const MultiplicativeSpec f(make_fhat(cfg.fhat, static_cast<int>(n), rng));
    const Complex gf = mean_mult_gf(f, w);
    const Complex en = mean_mult_enum(f, w, guard_of(cfg));
    const auto delta = delta_bound_report(f, w);
    const auto eu = eu_bound_report(f, w, cfg.u);
    a.rows.push_back({double(n), gf.real(), gf.imag(), en.real(), en.imag(),
                      std::abs(gf - en), rho(f, 2.0), delta.delta_n, delta.rhs,
                      delta.ratio, eu.e_u, eu.ratio});
    plot.points.emplace_back(double(n), delta.ratio);
  }
  a.plots.push_back(std::move(plot));
  return a;
}

Artifact cmd_dist(const RunConfig& cfg) {
  Artifact a;
  a.columns = {"value", "prob"};
  PlotSeries plot{"dist", "value", "prob", {}};
  const int n = single_n(cfg);
  const auto w = make_weights(cfg, n);
  const auto law = additive_dist(AdditiveSpec(make_hhat(cfg.hhat, n)), w, guard_of(cfg));
  for (const auto& atom : law.atoms()) {
    a.rows.push_back({atom.value, atom.prob});
    plot.points.emplace_back(atom.value, atom.prob);
  }
  a.notes.push_back("mean=" + format_number(law.mean()));
  a.notes.push_back("variance=" + format_number(law.variance()));
  a.plots.push_back(std::move(plot));
  return a;
}

Artifact cmd_clt(const RunConfig& cfg, std::ostream& warn) {
  Artifact a;
  a.columns = {"n",   "gap",  "budget", "ratio",      "argmax", "A_n",
               "C_n", "L_n3", "L_np",   "L_n2_prime", "rho_p",  "p_admissible"};
  const double p = parse_real(cfg.p, "--p");
  if (!(p > 0.0)) throw ArgumentError("--p must be positive");
  PlotSeries ratio_plot{"clt_ratio", "n", "ratio", {}};
  const auto w = make_weights(cfg, max_n(cfg));
  for (std::size_t n : cfg.n_list) {
    const int ni = static_cast<int>(n);
    const auto h = normalize_additive(AdditiveSpec(make_hhat(cfg.hhat, ni)), w);
    const auto g = corrected_gap(h, w, p, guard_of(cfg));
    const auto& s = g.stats;
    if (!s.p_admissible) {
      warn << "norlund: warning: p = " << cfg.p
           << " does not exceed max(2, 1/d-); computed anyway\n";
    }
    a.rows.push_back({double(n), g.gap, g.budget, g.ratio, g.argmax, s.A_n, s.C_n,
                      s.L_n3, s.L_np, s.L_n2_prime, s.rho_p,
                      s.p_admissible ? 1.0 : 0.0});
    ratio_plot.points.emplace_back(double(n), g.ratio);

    // x against F_n(x) - Phi(x) + phi(x) C_n on a uniform grid.
    const auto law = additive_dist(h, w, guard_of(cfg));
    const auto atoms = law.atoms();
    const double lo = atoms.front().value - s.A_n - 1.0;
    const double hi = atoms.back().value - s.A_n + 1.0;
    PlotSeries curve{"clt_curve_n" + std::to_string(n), "x", "corrected_difference", {}};
    constexpr int kPoints = 1001;
    for (int i = 0; i < kPoints; ++i) {
      const double x = lo + (hi - lo) * i / (kPoints - 1);
      const double f = law.cdf_below(x + s.A_n);
      curve.points.emplace_back(x, f - normal_cdf(x) + normal_pdf(x) * s.C_n);
    }
    a.plots.push_back(std::move(curve));
  }
  a.plots.insert(a.plots.begin(), std::move(ratio_plot));
  return a;
}

Artifact cmd_sample(const RunConfig& cfg) {
  Artifact a;
  a.columns = {"sample", "cycles", "type"};
  const int n = single_n(cfg);
  const auto w = make_weights(cfg, n);
  const auto draws = sample_cycle_types(w, n, cfg.count, cfg.seed);
  std::vector<double> hist(n + 1, 0.0);
  for (std::size_t i = 0; i < draws.size(); ++i) {
    std::string type;
    for (const auto& part : draws[i].parts()) {
      type += (type.empty() ? "" : ";") + std::to_string(part.length) + ":" +
              std::to_string(part.count);
    }
    a.rows.push_back({double(i), double(draws[i].cycles()), type});
    hist[draws[i].cycles()] += 1.0;
  }
  PlotSeries plot{"sample_cycles", "cycles", "frequency", {}};
  for (int k = 0; k <= n; ++k) {
    if (hist[k] > 0.0) plot.points.emplace_back(double(k), hist[k] / draws.size());
  }
  a.plots.push_back(std::move(plot));
  return a;
}

Artifact cmd_check(const RunConfig& cfg, bool& pass) {
  Artifact a;
  SuiteOptions opts;
  opts.n_max = cfg.nmax;
  opts.seed = cfg.seed;
  if (cfg.suite == "all") {
    a.columns = {"suite", "pass", "summary"};
    pass = true;
    for (const auto& name : suite_names()) {
      const auto r = run_suite(name, opts);
      pass = pass && r.pass;
      a.rows.push_back({name, r.pass ? 1.0 : 0.0, r.summary});
    }
    return a;
  }
  const auto r = run_suite(cfg.suite, opts);
  pass = r.pass;
  a.columns = r.table.columns;
  for (const auto& row : r.table.rows) a.rows.emplace_back(row.begin(), row.end());
  a.notes.push_back(std::string("pass=") + (r.pass ? "true" : "false"));
  a.notes.push_back("summary=" + r.summary);

  static const std::map<std::string, std::pair<std::string, std::string>> axes{
      {"weights", {"n", "error"}},        {"cesaro", {"n", "error"}},
      {"tauber", {"n", "tauber"}},        {"voronoi", {"n", "ratio"}},
      {"oracle", {"trial", "error"}},     {"inequalities", {"instance", "value"}},
      {"sampler", {"cycles", "empirical"}}, {"goncharov", {"n", "kolmogorov"}},
      {"clt", {"n", "ratio"}}};
  const auto& [xs, ys] = axes.at(cfg.suite);
  const auto col = [&](const std::string& c) {
    return std::find(a.columns.begin(), a.columns.end(), c) - a.columns.begin();
  };
  PlotSeries plot{"check_" + cfg.suite, xs, ys, {}};
  for (const auto& row : r.table.rows) plot.points.emplace_back(row[col(xs)], row[col(ys)]);
  a.plots.push_back(std::move(plot));
  return a;
}

// ---------------------------------------------------------------------------
// Writers

std::string csv_cell(const Cell& c) {
  if (const double* v = std::get_if<double>(&c)) return format_number(*v);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

nlohmann::ordered_json json_cell(const Cell& c) {
  if (const double* v = std::get_if<double>(&c)) {
    if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
    if (std::isnan(*v)) return "nan";
    return *v;
  }
  return std::get<std::string>(c);
}

void write_artifact(const Artifact& a, const RunConfig& cfg, std::ostream& os) {
  const auto echo = config_echo(cfg);
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto& [k, v] : echo) config[k] = v;
    j["config"] = config;
    j["columns"] = a.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : a.rows) {
      nlohmann::ordered_json r = nlohmann::ordered_json::array();
      for (const auto& c : row) r.push_back(json_cell(c));
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["notes"] = a.notes;
    os << j.dump(2) << '\n';
    return;
  }
  os << "# norlund " << kVersion << '\n';
  os << "#";
  for (const auto& [k, v] : echo) os << ' ' << k << '=' << v;
  os << '\n';
  for (const auto& note : a.notes) os << "# " << note << '\n';
  for (std::size_t i = 0; i < a.columns.size(); ++i) os << (i ? "," : "") << a.columns[i];
  os << '\n';
  for (const auto& row : a.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

void resolve_defaults(RunConfig& cfg) {
  if (!cfg.n_list.empty()) return;
  if (cfg.command == "voronoi") cfg.n_list = {16, 32, 64, 128};
  else if (cfg.command == "tauber") cfg.n_list = {10, 20, 40, 80, 160};
  else if (cfg.command == "clt") cfg.n_list = {20};
  else if (cfg.command == "dist") cfg.n_list = {5};
  else cfg.n_list = {10};
}

}  // namespace

void emit_plotdata(const std::vector<PlotSeries>& series,
                   const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create plot directory '" + dir.string() + "': " + ec.message());
  for (const auto& s : series) {
    const auto path = dir / (s.name + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << s.x_label << ',' << s.y_label << '\n';
    for (const auto& [x, y] : s.points) out << format_number(x) << ',' << format_number(y) << '\n';
    if (!out) throw IoError("write failed for '" + path.string() + "'");
  }
}

int run(const RunConfig& config, std::ostream& os) {
  RunConfig cfg = config;
  resolve_defaults(cfg);
  if (cfg.format != "csv" && cfg.format != "json") {
    throw ArgumentError("--format must be csv or json");
  }

  Artifact a;
  int code = kExitOk;
  if (cfg.command == "weights") a = cmd_weights(cfg);
  else if (cfg.command == "voronoi") a = cmd_voronoi(cfg);
  else if (cfg.command == "tauber") a = cmd_tauber(cfg);
  else if (cfg.command == "mean") a = cmd_mean(cfg);
  else if (cfg.command == "dist") a = cmd_dist(cfg);
  else if (cfg.command == "clt") a = cmd_clt(cfg, std::cerr);
  else if (cfg.command == "sample") a = cmd_sample(cfg);
  else if (cfg.command == "check") {
    bool pass = false;
    a = cmd_check(cfg, pass);
    if (!pass) code = kExitCheckFailed;
  } else {
    throw ArgumentError("unknown command '" + cfg.command + "'");
  }

  std::ostringstream buf;
  write_artifact(a, cfg, buf);
  if (cfg.out.empty()) {
    os << buf.str();
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw IoError("cannot open output file '" + cfg.out + "'");
    file << buf.str();
    if (!file) throw IoError("write failed for '" + cfg.out + "'");
  }
  if (!cfg.plot_dir.empty()) emit_plotdata(a.plots, cfg.plot_dir);
  return code;
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Voronoi summation and weighted permutation statistics", "norlund"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunConfig cfg;
  std::size_t single_n_value = 0;

  auto add_common = [&](CLI::App* sub, bool with_n) {
    if (with_n) {
      sub->add_option("--d", cfg.d_spec, "constant:THETA, random:LO:HI or file:PATH")
          ->capture_default_str();
      auto* n = sub->add_option("--n", single_n_value, "problem size");
      auto* sweep = sub->add_option("--n-sweep", cfg.n_list, "comma-separated sizes")
                        ->delimiter(',');
      n->excludes(sweep);
      sub->add_flag("--override-guard", cfg.override_guard,
                    "raise the exact-enumeration limit from 60 to 90");
    }
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (default: standard output)");
    sub->add_option("--plot-dir", cfg.plot_dir, "directory for two-column plot CSVs");
  };

  auto* weights = app.add_subcommand("weights", "coefficients p_n of the weight series");
  add_common(weights, true);

  auto* voronoi = app.add_subcommand("voronoi", "remainder report for Voronoi means");
  add_common(voronoi, true);
  voronoi->add_option("--series", cfg.series,
                      "ones, alternating, log1p, alternating-harmonic or random")
      ->capture_default_str();

  auto* tauber = app.add_subcommand("tauber", "S(g;n)/(n p_n) trajectory");
  add_common(tauber, true);
  tauber->add_option("--series", cfg.series)->capture_default_str();

  auto* mean = app.add_subcommand("mean", "means of multiplicative functions");
  add_common(mean, true);
  mean->add_option("--fhat", cfg.fhat, "random, one, no-fixed-points or root:ALPHA")
      ->capture_default_str();
  mean->add_option("--u", cfg.u, "threshold u > 0 of E(u)")->capture_default_str();

  auto* dist = app.add_subcommand("dist", "exact law of an additive function");
  add_common(dist, true);
  dist->add_option("--hhat", cfg.hhat, "fixedpoints, cycles, flat, power, sparse or file:PATH")
      ->capture_default_str();

  auto* clt = app.add_subcommand("clt", "corrected normal approximation gap");
  add_common(clt, true);
  clt->add_option("--hhat", cfg.hhat)->capture_default_str();
  clt->add_option("--p", cfg.p, "exponent p > 0 or inf")->capture_default_str();

  auto* sample = app.add_subcommand("sample", "draw cycle types from the weighted measure");
  add_common(sample, true);
  sample->add_option("--count", cfg.count, "number of draws")->capture_default_str();

  auto* check = app.add_subcommand("check", "run a standard check suite");
  add_common(check, false);
  check->add_option("--suite", cfg.suite,
                    "all, weights, cesaro, tauber, voronoi, oracle, inequalities, "
                    "sampler, goncharov or clt")
      ->capture_default_str();
  check->add_option("--nmax", cfg.nmax, "largest n for the voronoi suite")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  const auto* sub = app.get_subcommands().front();
  if (sub->get_option_no_throw("--n") && sub->count("--n") > 0) cfg.n_list = {single_n_value};

  auto fail = [&](const char* kind, const std::exception& e, int code) {
    err << "norlund: " << kind << " error: " << e.what() << '\n';
    return code;
  };
  try {
    return run(cfg, out);
  } catch (const ResourceError& e) {
    return fail("resource", e, kExitResource);
  } catch (const OverflowError& e) {
    return fail("overflow", e, kExitOverflow);
  } catch (const IoError& e) {
    return fail("I/O", e, kExitIo);
  } catch (const PreconditionError& e) {
    return fail("precondition", e, kExitUsage);
  } catch (const DomainError& e) {
    return fail("domain", e, kExitUsage);
  } catch (const ValidationError& e) {
    return fail("validation", e, kExitUsage);
  } catch (const ArgumentError& e) {
    return fail("argument", e, kExitUsage);
  } catch (const std::exception& e) {
    return fail("internal", e, kExitUsage);
  }
}

}  // namespace norlund
