#include "norlund/permstat.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <numeric>
#include <string>

#include "norlund/io.hpp"
#include "norlund/random.hpp"

namespace norlund {

// ---------------------------------------------------------------------------
// CycleType

CycleType::CycleType(int n, std::vector<Part> parts)
    : n_(n), parts_(std::move(parts)) {
  if (n < 0) throw ArgumentError("CycleType: n must be >= 0");
  long total = 0;
  int prev = 0;
  for (const auto& p : parts_) {
    if (p.length <= prev) {
      throw ArgumentError("CycleType: cycle lengths must strictly increase");
    }
    if (p.count < 1) {
      throw ArgumentError("CycleType: multiplicities must be >= 1");
    }
    prev = p.length;
    total += static_cast<long>(p.length) * p.count;
  }
  if (total != n) {
    throw ArgumentError("CycleType: sum j k_j = " + std::to_string(total) +
                        " but n = " + std::to_string(n));
  }
}

CycleType CycleType::from_lengths(std::span<const int> lengths) {
  std::map<int, int> counts;
  int n = 0;
  for (int len : lengths) {
    if (len < 1) throw ArgumentError("CycleType: cycle length must be >= 1");
    ++counts[len];
    n += len;
  }
  std::vector<Part> parts;
  parts.reserve(counts.size());
  for (const auto& [len, cnt] : counts) parts.push_back({len, cnt});
  return CycleType(n, std::move(parts));
}

CycleType CycleType::of_permutation(std::span<const int> images) {
  const int n = static_cast<int>(images.size());
  std::vector<char> hit(n + 1, 0);
  for (int v : images) {
    if (v < 1 || v > n) {
      throw ArgumentError("of_permutation: image out of range");
    }
    if (hit[v]) throw ArgumentError("of_permutation: not a bijection");
    hit[v] = 1;
  }
  std::vector<char> seen(n + 1, 0);
  std::vector<int> lengths;
  for (int start = 1; start <= n; ++start) {
    if (seen[start]) continue;
    int len = 0;
    for (int i = start; !seen[i]; i = images[i - 1]) {
      seen[i] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  return from_lengths(lengths);
}

int CycleType::multiplicity(int j) const {
  for (const auto& p : parts_) {
    if (p.length == j) return p.count;
  }
  return 0;
}

int CycleType::cycles() const {
  int c = 0;
  for (const auto& p : parts_) c += p.count;
  return c;
}

nlohmann::json CycleType::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& p : parts_) j[std::to_string(p.length)] = p.count;
  return j;
}

// ---------------------------------------------------------------------------
// Enumeration

void EnumerationGuard::check(int n, const char* op) const {
  if (n > limit()) {
    throw ResourceError(std::string(op) + ": n=" + std::to_string(n) +
                        " exceeds the enumeration guard " +
                        std::to_string(limit()) +
                        (allow_large ? "" : " (override raises it to 90)"));
  }
}

Partitions::Partitions(int n, EnumerationGuard guard) : n_(n) {
  if (n < 0) throw ArgumentError("partitions: n must be >= 0");
  guard.check(n, "partitions");
  if (n > EnumerationGuard::kDefaultLimit) {
    std::clog << "warning: enumerating the " << partition_count(n)
              << " partitions of " << n << "; this may take a while\n";
  }
}

Partitions::iterator::iterator(int n) : x_(n + 1, 1), done_(false) {
  if (n == 0) {
    m_ = 0;
    h_ = 0;
  } else {
    x_[1] = n;
    m_ = 1;
    h_ = n > 1 ? 1 : 0;
  }
  publish();
}

// Zoghbi-Stojmenovic ZS1: entries past h_ are always 1.
Partitions::iterator& Partitions::iterator::operator++() {
  if (m_ == 0 || x_[1] == 1) {
    done_ = true;
    return *this;
  }
  if (x_[h_] == 2) {
    ++m_;
    x_[h_] = 1;
    --h_;
  } else {
    const int r = x_[h_] - 1;
    int t = m_ - h_ + 1;
    x_[h_] = r;
    while (t >= r) {
      ++h_;
      x_[h_] = r;
      t -= r;
    }
    if (t == 0) {
      m_ = h_;
    } else {
      m_ = h_ + 1;
      if (t > 1) {
        ++h_;
        x_[h_] = t;
      }
    }
  }
  publish();
  return *this;
}

void Partitions::iterator::publish() {
  std::vector<CycleType::Part> parts;
  for (int i = m_; i >= 1;) {
    const int len = x_[i];
    int cnt = 0;
    while (i >= 1 && x_[i] == len) {
      ++cnt;
      --i;
    }
    parts.push_back({len, cnt});
  }
  current_ = CycleType(static_cast<int>(x_.size()) - 1, std::move(parts));
}

std::uint64_t partition_count(int n) {
  if (n < 0) return 0;
  std::vector<std::uint64_t> p(n + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    // Signed accumulation: p(m) = sum_k (-1)^{k+1} [p(m - g_k) + p(m - g_-k)].
    __int128 acc = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      if (g1 > m) break;
      const int g2 = k * (3 * k + 1) / 2;
      const __int128 term =
          static_cast<__int128>(p[m - g1]) + (g2 <= m ? p[m - g2] : 0);
      acc += (k % 2 == 1) ? term : -term;
    }
    p[m] = static_cast<std::uint64_t>(acc);
  }
  return p[n];
}

BigInt cycle_type_count_exact(const CycleType& t) {
  BigInt num = 1;
  for (int i = 2; i <= t.n(); ++i) num *= i;
  BigInt den = 1;
  for (const auto& part : t.parts()) {
    for (int i = 2; i <= part.count; ++i) den *= i;
    for (int i = 0; i < part.count; ++i) den *= part.length;
  }
  return num / den;
}

double cycle_type_count_log(const CycleType& t) {
  double acc = std::lgamma(t.n() + 1.0);
  for (const auto& part : t.parts()) {
    acc -= std::lgamma(part.count + 1.0) +
           part.count * std::log(static_cast<double>(part.length));
  }
  return acc;
}

namespace {

// log(d_j / j) and log k! tables shared across many measure evaluations.
class LogMeasure {
 public:
  LogMeasure(const WeightSpec& w, int n) : log_dj_(n + 1), log_fact_(n + 1) {
    if (static_cast<std::size_t>(n) > w.n_max()) {
      throw ArgumentError("measure: n=" + std::to_string(n) +
                          " exceeds weight n_max");
    }
    for (int j = 1; j <= n; ++j) log_dj_[j] = std::log(w.d(j) / j);
    for (int k = 1; k <= n; ++k) log_fact_[k] = std::lgamma(k + 1.0);
    log_pn_ = std::log(w.p(n));
  }

  double prob(const CycleType& t) const {
    double acc = -log_pn_;
    for (const auto& part : t.parts()) {
      acc += part.count * log_dj_[part.length] - log_fact_[part.count];
    }
    return std::exp(acc);
  }

 private:
  std::vector<double> log_dj_;
  std::vector<double> log_fact_;
  double log_pn_ = 0.0;
};

}  // namespace

double measure_prob(const CycleType& t, const WeightSpec& w) {
  return LogMeasure(w, t.n()).prob(t);
}

std::vector<Rational> weights_exact(std::span<const Rational> d) {
  const std::size_t n = d.size();
  std::vector<Rational> p(n + 1);
  p[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= m; ++k) acc += d[k - 1] * p[m - k];
    p[m] = acc / static_cast<long>(m);
  }
  return p;
}

Rational measure_prob_exact(const CycleType& t, std::span<const Rational> d) {
  if (static_cast<std::size_t>(t.n()) > d.size()) {
    throw ArgumentError("measure_prob_exact: not enough weights");
  }
  Rational acc = 1;
  for (const auto& part : t.parts()) {
    const Rational base = d[part.length - 1] / part.length;
    for (int i = 1; i <= part.count; ++i) acc *= base / i;
  }
  const auto p = weights_exact(d.subspan(0, t.n()));
  return acc / p[t.n()];
}

// ---------------------------------------------------------------------------
// Multiplicative and additive functions

MultiplicativeSpec::MultiplicativeSpec(std::vector<Complex> fhat)
    : fhat_(std::move(fhat)), bounded_(true) {
  for (std::size_t j = 0; j < fhat_.size(); ++j) {
    if (!detail::is_finite(fhat_[j])) {
      throw ValidationError("MultiplicativeSpec: non-finite fhat(" +
                            std::to_string(j + 1) + ")");
    }
    if (std::abs(fhat_[j]) > 1.0 + 1e-12) bounded_ = false;
  }
}

Complex MultiplicativeSpec::evaluate(const CycleType& t) const {
  Complex acc = 1.0;
  for (const auto& part : t.parts()) {
    if (part.length > n()) {
      throw ArgumentError("MultiplicativeSpec: cycle length beyond n");
    }
    for (int i = 0; i < part.count; ++i) acc *= fhat(part.length);
  }
  return acc;
}

AdditiveSpec::AdditiveSpec(std::vector<double> hhat) : hhat_(std::move(hhat)) {
  for (std::size_t j = 0; j < hhat_.size(); ++j) {
    if (!std::isfinite(hhat_[j])) {
      throw ValidationError("AdditiveSpec: non-finite hhat(" +
                            std::to_string(j + 1) + ")");
    }
  }
}

double AdditiveSpec::evaluate(const CycleType& t) const {
  double acc = 0.0;
  for (const auto& part : t.parts()) {
    if (part.length > n()) {
      throw ArgumentError("AdditiveSpec: cycle length beyond n");
    }
    acc += hhat(part.length) * part.count;
  }
  return acc;
}

MultiplicativeSpec AdditiveSpec::exp_i(double t) const {
  std::vector<Complex> f(hhat_.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    f[k] = std::polar(1.0, t * hhat_[k]);
  }
  return MultiplicativeSpec(std::move(f));
}

// ---------------------------------------------------------------------------
// DistTable

DistTable DistTable::from_atoms(std::vector<Atom> atoms, double merge_tol) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });
  std::vector<Atom> merged;
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!std::isfinite(a.value) || !std::isfinite(a.prob) || a.prob < 0.0) {
      throw ValidationError("DistTable: atoms need finite values and probs >= 0");
    }
    if (!merged.empty() && a.value - merged.back().value <= merge_tol) {
      merged.back().prob += a.prob;
    } else {
      merged.push_back(a);
    }
    total += a.prob;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw ValidationError("DistTable: total probability " +
                          format_number(total) + " differs from 1");
  }
  return DistTable(std::move(merged));
}

double DistTable::mean() const {
  double acc = 0.0;
  for (const auto& a : atoms_) acc += a.value * a.prob;
  return acc;
}

double DistTable::variance() const {
  const double mu = mean();
  double acc = 0.0;
  for (const auto& a : atoms_) acc += (a.value - mu) * (a.value - mu) * a.prob;
  return acc;
}

double DistTable::cdf_below(double x) const {
  double acc = 0.0;
  for (const auto& a : atoms_) {
    if (a.value >= x) break;
    acc += a.prob;
  }
  return acc;
}

double DistTable::cdf_at_or_below(double x) const {
  double acc = 0.0;
  for (const auto& a : atoms_) {
    if (a.value > x) break;
    acc += a.prob;
  }
  return acc;
}

Complex DistTable::char_fn(double t) const {
  Complex acc = 0.0;
  for (const auto& a : atoms_) acc += a.prob * std::polar(1.0, t * a.value);
  return acc;
}

void DistTable::write_csv(std::ostream& os) const {
  os << "value,prob\n";
  for (const auto& a : atoms_) {
    os << format_number(a.value) << ',' << format_number(a.prob) << '\n';
  }
}

nlohmann::json DistTable::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& a : atoms_) arr.push_back({a.value, a.prob});
  return arr;
}

// ---------------------------------------------------------------------------
// Means and laws

Complex mean_mult_gf(const MultiplicativeSpec& f, const WeightSpec& w) {
  const int n = f.n();
  if (static_cast<std::size_t>(n) > w.n_max()) {
    throw ArgumentError("mean_mult_gf: n exceeds weight n_max");
  }
  std::vector<Complex> q(n + 1, 0.0);
  for (int j = 1; j <= n; ++j) q[j] = w.d(j) * f.fhat(j) / static_cast<double>(j);
  const auto m = series_exp(SeriesPoly<Complex>(std::move(q)));
  return m[n] / w.p(n);
}

Complex mean_mult_enum(const MultiplicativeSpec& f, const WeightSpec& w,
                       EnumerationGuard guard) {
  const int n = f.n();
  guard.check(n, "mean_mult_enum");
  const LogMeasure measure(w, n);
  Complex acc = 0.0;
  for (const auto& t : Partitions(n, guard)) acc += measure.prob(t) * f.evaluate(t);
  return acc;
}

DistTable additive_dist(const AdditiveSpec& h, const WeightSpec& w,
                        EnumerationGuard guard) {
  const int n = h.n();
  guard.check(n, "additive_dist");
  const LogMeasure measure(w, n);
  std::vector<DistTable::Atom> atoms;
  atoms.reserve(partition_count(n));
  for (const auto& t : Partitions(n, guard)) {
    atoms.push_back({h.evaluate(t), measure.prob(t)});
  }
  return DistTable::from_atoms(std::move(atoms));
}

DistTable cycles_distribution(const WeightSpec& w, int n,
                              EnumerationGuard guard) {
  return additive_dist(AdditiveSpec(std::vector<double>(n, 1.0)), w, guard);
}

DistTable ewens_cycle_count_law(double theta, int n) {
  if (!(theta > 0.0)) throw ArgumentError("ewens_cycle_count_law: theta > 0");
  if (n < 0) throw ArgumentError("ewens_cycle_count_law: n >= 0");
  std::vector<double> prob(n + 1, 0.0);
  prob[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    const double q = theta / (theta + k - 1);
    for (int c = k; c >= 1; --c) prob[c] = prob[c] * (1.0 - q) + prob[c - 1] * q;
    prob[0] *= (1.0 - q);
  }
  std::vector<DistTable::Atom> atoms;
  for (int c = (n == 0 ? 0 : 1); c <= n; ++c) atoms.push_back({double(c), prob[c]});
  return DistTable::from_atoms(std::move(atoms));
}

namespace {

CycleType draw(const WeightSpec& w, int n, Rng& rng) {
  std::vector<int> lengths;
  for (int m = n; m > 0;) {
    const double target = uniform01(rng) * (m * w.p(m));
    double cum = 0.0;
    int j = 1;
    for (; j < m; ++j) {
      cum += w.d(j) * w.p(m - j);
      if (cum > target) break;
    }
    lengths.push_back(j);
    m -= j;
  }
  return CycleType::from_lengths(lengths);
}

}  // namespace

CycleType sample_cycle_type(const WeightSpec& w, int n, std::uint64_t seed) {
  if (n < 0 || static_cast<std::size_t>(n) > w.n_max()) {
    throw ArgumentError("sample_cycle_type: n out of range");
  }
  Rng rng(seed);
  return draw(w, n, rng);
}

std::vector<CycleType> sample_cycle_types(const WeightSpec& w, int n,
                                          std::size_t count,
                                          std::uint64_t seed) {
  if (n < 0 || static_cast<std::size_t>(n) > w.n_max()) {
    throw ArgumentError("sample_cycle_types: n out of range");
  }
  Rng rng(seed);
  std::vector<CycleType> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(draw(w, n, rng));
  return out;
}

double total_variation(const DistTable& a, const DistTable& b, double tol) {
  const auto& x = a.atoms();
  const auto& y = b.atoms();
  std::size_t i = 0;
  std::size_t j = 0;
  double acc = 0.0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].value < y[j].value - tol)) {
      acc += x[i++].prob;
    } else if (i == x.size() || y[j].value < x[i].value - tol) {
      acc += y[j++].prob;
    } else {
      acc += std::abs(x[i++].prob - y[j++].prob);
    }
  }
  return 0.5 * acc;
}

}  // namespace norlund
