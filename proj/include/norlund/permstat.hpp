#pragma once

// Statistics of permutations under the weighted measure
//
//   nu_{n,d}(sigma) = prod_j d_j^{alpha_j(sigma)} / (n! p_n),
//
// where alpha_j(sigma) counts the j-cycles of sigma.  Everything here is a
// function of the cycle type, so permutations are never materialised.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <iterator>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"

#include "norlund/series.hpp"
#include "norlund/voronoi.hpp"

namespace norlund {

// Partition of n as sparse multiplicities (j, k_j), j strictly increasing,
// every k_j >= 1 and sum j k_j = n.
class CycleType {
 public:
  struct Part {
    int length;
    int count;
    friend bool operator==(const Part&, const Part&) = default;
  };

  CycleType() = default;  // the empty partition of 0

  // Validates ordering, positivity and sum j k_j = n.
  CycleType(int n, std::vector<Part> parts);

  // From a multiset of cycle lengths in any order.
  static CycleType from_lengths(std::span<const int> lengths);

  // Cycle type of a permutation given by its images of 1..n (1-based).
  static CycleType of_permutation(std::span<const int> images);

  int n() const { return n_; }
  std::span<const Part> parts() const { return parts_; }

  // k_j, zero when j does not occur.
  int multiplicity(int j) const;

  // Total number of cycles, sum_j k_j.
  int cycles() const;

  nlohmann::json to_json() const;

  friend bool operator==(const CycleType&, const CycleType&) = default;

 private:
  int n_ = 0;
  std::vector<Part> parts_;
};

// Guard on exact enumeration.  The default ceiling is 60; allow_large
// raises it to 90 and enumeration above 60 prints a warning.
struct EnumerationGuard {
  static constexpr int kDefaultLimit = 60;
  static constexpr int kOverrideLimit = 90;
  bool allow_large = false;

  int limit() const { return allow_large ? kOverrideLimit : kDefaultLimit; }
  // Throws ResourceError when n exceeds the active limit.
  void check(int n, const char* op) const;
};

// All partitions of n in descending-lexicographic order of their parts:
// (n), (n-1, 1), (n-2, 2), (n-2, 1, 1), ..., (1, ..., 1).
class Partitions {
 public:
  explicit Partitions(int n, EnumerationGuard guard = {});

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = CycleType;
    using difference_type = std::ptrdiff_t;
    using pointer = const CycleType*;
    using reference = const CycleType&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.done_ == b.done_;
    }

   private:
    friend class Partitions;
    explicit iterator(int n);
    void publish();

    std::vector<int> x_;  // parts, non-increasing, 1-based
    int m_ = 0;           // number of parts
    int h_ = 0;           // index of the last part > 1
    bool done_ = true;
    CycleType current_;
  };

  iterator begin() const { return iterator(n_); }
  iterator end() const { return iterator(); }

 private:
  int n_;
};

// Number of partitions of n by Euler's pentagonal recurrence.
std::uint64_t partition_count(int n);

// Number of permutations of the given type, n! prod_j 1/(k_j! j^{k_j}).
BigInt cycle_type_count_exact(const CycleType& t);
// Natural log of the same count.
double cycle_type_count_log(const CycleType& t);

// nu_{n,d} probability of the type:  (1/p_n) prod_j (d_j/j)^{k_j} / k_j!.
double measure_prob(const CycleType& t, const WeightSpec& w);

// Same probability in exact arithmetic for rational weights d_1..d_n
// (d[0] = d_1).
Rational measure_prob_exact(const CycleType& t, std::span<const Rational> d);

// Exact p_0..p_n for rational weights.
std::vector<Rational> weights_exact(std::span<const Rational> d);

// f(sigma) = prod_j fhat(j)^{alpha_j(sigma)}.
class MultiplicativeSpec {
 public:
  explicit MultiplicativeSpec(std::vector<Complex> fhat);  // fhat[0] = fhat(1)

  int n() const { return static_cast<int>(fhat_.size()); }
  const Complex& fhat(int j) const { return fhat_[j - 1]; }
  std::span<const Complex> values() const { return fhat_; }
  // true iff every |fhat(j)| <= 1 (up to 1e-12).
  bool bounded() const { return bounded_; }

  // f evaluated on a cycle type.
  Complex evaluate(const CycleType& t) const;

 private:
  std::vector<Complex> fhat_;
  bool bounded_;
};

// h(sigma) = sum_j hhat(j) alpha_j(sigma).
class AdditiveSpec {
 public:
  explicit AdditiveSpec(std::vector<double> hhat);  // hhat[0] = hhat(1)

  int n() const { return static_cast<int>(hhat_.size()); }
  double hhat(int j) const { return hhat_[j - 1]; }
  std::span<const double> values() const { return hhat_; }

  double evaluate(const CycleType& t) const;

  // fhat(k) = exp(i t hhat(k)).
  MultiplicativeSpec exp_i(double t) const;

 private:
  std::vector<double> hhat_;
};

// Discrete law as sorted atoms.
class DistTable {
 public:
  struct Atom {
    double value;
    double prob;
  };

  // Sorts, merges values closer than merge_tol and validates the total mass.
  static DistTable from_atoms(std::vector<Atom> atoms,
                              double merge_tol = 1e-12);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  double mean() const;
  double variance() const;
  // P(X < x) and P(X <= x).
  double cdf_below(double x) const;
  double cdf_at_or_below(double x) const;
  // E exp(i t X).
  Complex char_fn(double t) const;

  void write_csv(std::ostream& os) const;
  nlohmann::json to_json() const;

 private:
  explicit DistTable(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<Atom> atoms_;
};

// M_n^d(f) = [z^n] exp(sum_j d_j fhat(j) z^j / j) / p_n with n = f.n().
Complex mean_mult_gf(const MultiplicativeSpec& f, const WeightSpec& w);

// The same mean by summing f over all cycle types of n.
Complex mean_mult_enum(const MultiplicativeSpec& f, const WeightSpec& w,
                       EnumerationGuard guard = {});

// Exact law of h under nu_{n,d}, n = h.n().
DistTable additive_dist(const AdditiveSpec& h, const WeightSpec& w,
                        EnumerationGuard guard = {});

// Law of the number of cycles, by enumeration.
DistTable cycles_distribution(const WeightSpec& w, int n,
                              EnumerationGuard guard = {});

// Law of the number of cycles under d_k = theta as a sum of independent
// Bernoulli(theta / (theta + k - 1)), k = 1..n.  Any n.
DistTable ewens_cycle_count_law(double theta, int n);

// Draws a cycle type from nu_{n,d}: with m labels left, the cycle through
// the smallest one has length j with probability d_j p_{m-j} / (m p_m).
CycleType sample_cycle_type(const WeightSpec& w, int n, std::uint64_t seed);

// Many draws from one seeded stream.
std::vector<CycleType> sample_cycle_types(const WeightSpec& w, int n,
                                          std::size_t count,
                                          std::uint64_t seed);

double total_variation(const DistTable& a, const DistTable& b,
                       double tol = 1e-12);

}  // namespace norlund
