#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "norlund/random.hpp"
#include "norlund/series.hpp"

using namespace norlund;
using RS = SeriesPoly<double>;

namespace {

RS random_series(Rng& rng, std::size_t order, double bound) {
  std::vector<double> c(order + 1);
  for (auto& v : c) v = uniform(rng, -bound, bound);
  return RS(std::move(c));
}

void check_close(const RS& a, const RS& b, double tol) {
  REQUIRE(a.order() == b.order());
  for (std::size_t k = 0; k <= a.order(); ++k) {
    CHECK(std::abs(a[k] - b[k]) <= tol * std::max(1.0, std::abs(b[k])));
  }
}

}  // namespace

TEST_CASE("construction rejects empty and non-finite input") {
  CHECK_THROWS_AS(RS(std::vector<double>{}), ArgumentError);
  CHECK_THROWS_AS(RS(std::vector<double>{1.0, NAN}), OverflowError);
  CHECK_THROWS_AS(RS(std::vector<double>{INFINITY}), OverflowError);
  CHECK(RS(3).order() == 3);
  CHECK(RS::one(2) == RS(std::vector<double>{1, 0, 0}));
}

TEST_CASE("series_mul") {
  RS a({1, 1, 0});
  RS b({1, -1, 0});
  CHECK(series_mul(a, b) == RS({1, 0, -1}));

  RS ones({1, 1, 1});
  CHECK(series_mul(ones, ones) == RS({1, 2, 3}));

  Rng rng(7);
  const RS r = random_series(rng, 12, 3.0);
  CHECK(series_mul(r, RS::one(12)) == r);

  CHECK_THROWS_AS(series_mul(RS(2), RS(3)), ArgumentError);
  CHECK_THROWS_AS(series_mul(RS({1e200, 1e200}), RS({1e200, 1e200})),
                  OverflowError);
}

TEST_CASE("series_exp") {
  const RS e = series_exp(RS({0, 1, 0, 0}));
  CHECK(e[0] == doctest::Approx(1.0));
  CHECK(e[1] == doctest::Approx(1.0));
  CHECK(e[2] == doctest::Approx(0.5));
  CHECK(e[3] == doctest::Approx(1.0 / 6.0));

  std::vector<double> harmonic(6, 0.0), twice(5, 0.0);
  for (int k = 1; k <= 5; ++k) harmonic[k] = 1.0 / k;
  for (int k = 1; k <= 4; ++k) twice[k] = 2.0 / k;
  const RS geo = series_exp(RS(harmonic));
  for (std::size_t k = 0; k <= 5; ++k) CHECK(geo[k] == doctest::Approx(1.0));
  const RS bin = series_exp(RS(twice));
  for (std::size_t k = 0; k <= 4; ++k) CHECK(bin[k] == doctest::Approx(k + 1.0));

  CHECK(series_exp(RS({2.0}))[0] == doctest::Approx(std::exp(2.0)));
  CHECK_THROWS_AS(series_exp(RS({0.0, 1e200, 1e200})), OverflowError);
  CHECK_THROWS_AS(series_exp(SeriesPoly<Complex>({Complex(0, 1), 1.0})),
                  DomainError);
}

TEST_CASE("series_exp in exact rational mode") {
  // exp(2 sum z^k/k) = (1-z)^{-2}
  std::vector<Rational> q(8);
  for (int k = 1; k < 8; ++k) q[k] = Rational(2, k);
  const auto p = series_exp(SeriesPoly<Rational>(q));
  for (int k = 0; k < 8; ++k) CHECK(p[k] == Rational(k + 1));
  CHECK(series_log(p) == SeriesPoly<Rational>(q));
  CHECK_THROWS_AS(series_exp(SeriesPoly<Rational>({Rational(1)})), DomainError);
}

TEST_CASE("series_log") {
  const RS l = series_log(RS({1, 1, 1, 1, 1}));
  CHECK(l[0] == doctest::Approx(0.0));
  for (int k = 1; k <= 4; ++k) CHECK(l[k] == doctest::Approx(1.0 / k));

  CHECK(series_log(RS({1, 0, 0})) == RS({0, 0, 0}));

  const RS inv = series_log(RS({1, 1, 0.5, 1.0 / 6.0}));
  CHECK(inv[0] == doctest::Approx(0.0));
  CHECK(inv[1] == doctest::Approx(1.0));
  CHECK(std::abs(inv[2]) < 1e-15);
  CHECK(std::abs(inv[3]) < 1e-15);

  CHECK_THROWS_AS(series_log(RS({0.0, 1.0})), DomainError);
  CHECK_THROWS_AS(series_log(RS({-1.0, 1.0})), DomainError);
}

TEST_CASE("series_derivative") {
  CHECK(series_derivative(RS({1, 1, 1, 1})) == RS({1, 2, 3}));
  CHECK(series_derivative(RS({5, 0, 0})) == RS({0, 0}));
  CHECK(series_derivative(RS({0, 0, 1})) == RS({0, 2}));
  CHECK_THROWS_AS(series_derivative(RS({3.0})), ArgumentError);
}

TEST_CASE("series_eval_real") {
  const RS ones(std::vector<double>(51, 1.0));
  const double expect = 2.0 - std::pow(2.0, -50);
  CHECK(std::abs(series_eval_real(ones, 0.5) - expect) / expect < 1e-12);

  const RS some({3.5, -2, 7});
  CHECK(series_eval_real(some, 0.0) == 3.5);

  std::vector<double> q(31, 0.0);
  q[1] = 1.0;
  const RS e = series_exp(RS(q));
  CHECK(std::abs(series_eval_real(e, 0.9) - std::exp(0.9)) < 1e-12);

  CHECK_THROWS_AS(series_eval_real(some, 1.0), DomainError);
  CHECK_THROWS_AS(series_eval_real(some, -0.1), DomainError);
}

TEST_CASE("property: exp and log are inverse") {
  // Rounding P to double perturbs log(P) by about u sum_k |P_k| |R_{n-k}|
  // with R = 1/P; for some draws that alone exceeds 1e-9 at order 200.
  constexpr double u = 0x1.0p-53;
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const RS q = random_series(rng, 200, 2.0);
    const RS p = series_exp(q);
    const RS back = series_log(p);
    const RS r = series_exp(-1.0 * q);
    for (std::size_t n = 0; n <= 200; ++n) {
      double kappa = 0.0;
      for (std::size_t k = 0; k <= n; ++k) kappa += std::abs(p[k] * r[n - k]);
      const double bound = std::max(1e-9, 10.0 * u * kappa);
      REQUIRE(std::abs(back[n] - q[n]) <= bound);
    }
  }

  // Small coefficients: always the plain bound.
  for (int trial = 0; trial < 20; ++trial) {
    const RS q = random_series(rng, 200, 0.5);
    const RS back = series_log(series_exp(q));
    for (std::size_t k = 0; k <= 200; ++k) {
      REQUIRE(std::abs(back[k] - q[k]) <= 1e-9);
    }
  }
}

TEST_CASE("property: exp turns sums into products") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const RS a = random_series(rng, 100, 1.0);
    const RS b = random_series(rng, 100, 1.0);
    check_close(series_exp(a + b), series_mul(series_exp(a), series_exp(b)),
                1e-9);
  }
}

TEST_CASE("property: derivative is linear and obeys the product rule") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t order = 1 + rng() % 100;
    const RS a = random_series(rng, order, 1.0);
    const RS b = random_series(rng, order, 1.0);
    const double s = uniform(rng, -3, 3);
    check_close(series_derivative(s * a + b),
                s * series_derivative(a) + series_derivative(b), 1e-12);
    // (ab)' = a'b + ab' on the common order-1 truncation.
    const RS lhs = series_derivative(series_mul(a, b));
    const RS rhs = series_mul(series_derivative(a), b.truncated(order - 1)) +
                   series_mul(a.truncated(order - 1), series_derivative(b));
    for (std::size_t k = 0; k < order; ++k) {
      REQUIRE(std::abs(lhs[k] - rhs[k]) <= 1e-12 * std::max(1.0, std::abs(rhs[k])) * order);
    }
  }
}

TEST_CASE("property: partial sums bounded by e b(exp(-1/n))") {
  Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    std::vector<double> b(20 * n + 1);
    for (auto& v : b) v = uniform01(rng) * 3.0;
    const RS bs(b);
    double partial = 0.0;
    for (std::size_t k = 0; k <= n; ++k) partial += b[k];
    REQUIRE(partial <= std::exp(1.0) * series_eval_real(bs, std::exp(-1.0 / n)));
  }
}

TEST_CASE("complex scalars") {
  const SeriesPoly<Complex> q({0.0, Complex(0, 1), 0.0, 0.0});
  const auto p = series_exp(q);  // exp(iz)
  CHECK(std::abs(p[2] - Complex(-0.5, 0)) < 1e-15);
  CHECK(std::abs(p[3] - Complex(0, -1.0 / 6.0)) < 1e-15);
  CHECK(std::abs(series_eval_real(p, 0.0) - Complex(1, 0)) < 1e-15);
}
