#pragma once

// Truncated formal power series over double, std::complex<double> or an
// exact rational type.  A SeriesPoly of order N holds the N+1 coefficients
// of z^0..z^N; every arithmetic operation keeps the order of its inputs
// (series_derivative drops it by one).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "norlund/errors.hpp"

namespace norlund {

using Real = double;
using Complex = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename T>
bool is_finite(const T& v) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::isfinite(v);
  } else if constexpr (is_complex<T>::value) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  } else {
    return true;
  }
}

// Real part of a scalar as a double, for precondition checks.
template <typename T>
double real_part(const T& v) {
  if constexpr (std::is_floating_point_v<T>) {
    return v;
  } else if constexpr (is_complex<T>::value) {
    return v.real();
  } else {
    return static_cast<double>(v);
  }
}

template <typename T>
bool has_zero_imag(const T& v) {
  if constexpr (is_complex<T>::value) {
    return v.imag() == 0.0;
  } else {
    return true;
  }
}

// Running sum of products with Ogita-Rump-Oishi compensation (TwoSum plus
// an FMA-based TwoProduct) for double; plain accumulation otherwise.
template <typename T>
class DotAccumulator {
 public:
  explicit DotAccumulator(T init = T(0)) : sum_(init) {}
  void add(const T& a, const T& b) { sum_ += a * b; }
  T value() const { return sum_; }

 private:
  T sum_;
};

template <>
class DotAccumulator<double> {
 public:
  explicit DotAccumulator(double init = 0.0) : sum_(init) {}
  void add(double a, double b) {
    const double prod = a * b;
    const double prod_err = std::fma(a, b, -prod);
    const double s = sum_ + prod;
    const double bb = s - sum_;
    const double sum_err = (sum_ - (s - bb)) + (prod - bb);
    sum_ = s;
    err_ += sum_err + prod_err;
  }
  double value() const { return sum_ + err_; }

 private:
  double sum_;
  double err_ = 0.0;
};

}  // namespace detail

template <typename T>
class SeriesPoly {
 public:
  using value_type = T;

  // Zero series of the given order.
  explicit SeriesPoly(std::size_t order) : coeffs_(order + 1, T(0)) {}

  // Takes ownership of the coefficient array; coeffs[k] multiplies z^k.
  explicit SeriesPoly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
      throw ArgumentError("SeriesPoly needs at least one coefficient");
    }
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (!detail::is_finite(coeffs_[k])) {
        throw OverflowError("SeriesPoly: non-finite coefficient at z^" +
                            std::to_string(k));
      }
    }
  }

  SeriesPoly(std::initializer_list<T> coeffs)
      : SeriesPoly(std::vector<T>(coeffs)) {}

  // 1 + 0z + ... + 0z^order
  static SeriesPoly one(std::size_t order) {
    SeriesPoly s(order);
    s.coeffs_[0] = T(1);
    return s;
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  std::span<const T> coeffs() const { return coeffs_; }
  const T& operator[](std::size_t k) const { return coeffs_[k]; }

  // Keeps z^0..z^order; the requested order may not exceed the current one.
  SeriesPoly truncated(std::size_t order) const {
    if (order > this->order()) {
      throw ArgumentError("truncated: order " + std::to_string(order) +
                          " exceeds series order " +
                          std::to_string(this->order()));
    }
    return SeriesPoly(
        std::vector<T>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  friend SeriesPoly operator+(const SeriesPoly& a, const SeriesPoly& b) {
    check_same_order(a, b, "operator+");
    std::vector<T> out(a.coeffs_.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] + b[k];
    return SeriesPoly(std::move(out));
  }

  friend SeriesPoly operator-(const SeriesPoly& a, const SeriesPoly& b) {
    check_same_order(a, b, "operator-");
    std::vector<T> out(a.coeffs_.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] - b[k];
    return SeriesPoly(std::move(out));
  }

  friend SeriesPoly operator*(const T& s, const SeriesPoly& a) {
    std::vector<T> out(a.coeffs_.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = s * a[k];
    return SeriesPoly(std::move(out));
  }

  friend bool operator==(const SeriesPoly&, const SeriesPoly&) = default;

  static void check_same_order(const SeriesPoly& a, const SeriesPoly& b,
                               const char* op) {
    if (a.order() != b.order()) {
      throw ArgumentError(std::string(op) + ": order mismatch (" +
                          std::to_string(a.order()) + " vs " +
                          std::to_string(b.order()) + ")");
    }
  }

 private:
  std::vector<T> coeffs_;
};

// Cauchy product, truncated to the common order.
template <typename T>
SeriesPoly<T> series_mul(const SeriesPoly<T>& a, const SeriesPoly<T>& b) {
  SeriesPoly<T>::check_same_order(a, b, "series_mul");
  const std::size_t n = a.order();
  std::vector<T> out(n + 1, T(0));
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i] == T(0)) continue;
    for (std::size_t j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
  }
  return SeriesPoly<T>(std::move(out));
}

// exp(Q) via P_n = (1/n) sum_{k=1..n} k Q_k P_{n-k}, P_0 = exp(Q_0).
// Exact scalar types only support Q_0 = 0.
template <typename T>
SeriesPoly<T> series_exp(const SeriesPoly<T>& q) {
  if (!detail::has_zero_imag(q[0])) {
    throw DomainError("series_exp: constant term must be real");
  }
  const std::size_t n = q.order();
  std::vector<T> p(n + 1, T(0));
  if constexpr (std::is_floating_point_v<T> || detail::is_complex<T>::value) {
    p[0] = T(std::exp(detail::real_part(q[0])));
  } else {
    if (q[0] != T(0)) {
      throw DomainError("series_exp: exact mode needs a zero constant term");
    }
    p[0] = T(1);
  }
  // kq[k] = k Q_k
  std::vector<T> kq(n + 1, T(0));
  for (std::size_t k = 1; k <= n; ++k) kq[k] = T(static_cast<long>(k)) * q[k];

  for (std::size_t m = 1; m <= n; ++m) {
    detail::DotAccumulator<T> acc;
    for (std::size_t k = 1; k <= m; ++k) acc.add(kq[k], p[m - k]);
    p[m] = acc.value() / T(static_cast<long>(m));
    if (!detail::is_finite(p[m])) {
      throw OverflowError("series_exp: non-finite coefficient at z^" +
                          std::to_string(m));
    }
  }
  return SeriesPoly<T>(std::move(p));
}

// Inverse of series_exp: Q_0 = log P_0 and
// n Q_n P_0 = n P_n - sum_{k=1..n-1} k Q_k P_{n-k}.
template <typename T>
SeriesPoly<T> series_log(const SeriesPoly<T>& p) {
  if (!detail::has_zero_imag(p[0]) || !(detail::real_part(p[0]) > 0.0)) {
    throw DomainError("series_log: constant term must be real and positive");
  }
  const std::size_t n = p.order();
  std::vector<T> q(n + 1, T(0));
  if constexpr (std::is_floating_point_v<T> || detail::is_complex<T>::value) {
    q[0] = T(std::log(detail::real_part(p[0])));
  } else {
    if (p[0] != T(1)) {
      throw DomainError("series_log: exact mode needs constant term 1");
    }
  }
  std::vector<T> kq(n + 1, T(0));
  for (std::size_t m = 1; m <= n; ++m) {
    detail::DotAccumulator<T> acc(T(static_cast<long>(m)) * p[m]);
    for (std::size_t k = 1; k < m; ++k) acc.add(-kq[k], p[m - k]);
    kq[m] = acc.value() / p[0];
    q[m] = kq[m] / T(static_cast<long>(m));
    if (!detail::is_finite(q[m])) {
      throw OverflowError("series_log: non-finite coefficient at z^" +
                          std::to_string(m));
    }
  }
  return SeriesPoly<T>(std::move(q));
}

// d/dz; the result has order P.order - 1 (no zero padding).
template <typename T>
SeriesPoly<T> series_derivative(const SeriesPoly<T>& p) {
  if (p.order() == 0) {
    throw ArgumentError("series_derivative: order 0 series has no derivative");
  }
  std::vector<T> out(p.order());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = T(static_cast<long>(k + 1)) * p[k + 1];
  }
  return SeriesPoly<T>(std::move(out));
}

// Horner evaluation of the truncated polynomial at a real x in [0, 1).
template <typename T>
T series_eval_real(const SeriesPoly<T>& p, double x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw DomainError("series_eval_real: x must lie in [0, 1)");
  }
  T acc(0);
  for (std::size_t k = p.order() + 1; k-- > 0;) acc = acc * x + p[k];
  return acc;
}

// Truncation order needed to evaluate a bounded-coefficient series at
// x = exp(-1/n) with a negligible tail: max(20n, n + 200).
inline std::size_t eval_order_for(std::size_t n) {
  return std::max<std::size_t>(20 * n, n + 200);
}

}  // namespace norlund
