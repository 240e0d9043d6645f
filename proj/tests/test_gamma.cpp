#include <cmath>
#include <random>
#include <stdexcept>

#include <catch2/catch_amalgamated.hpp>

#include "mlineq/gamma.hpp"
#include "oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using mlineq::gen_binom;
using mlineq::log_gamma;

TEST_CASE("log_gamma anchor values") {
  CHECK_THAT(log_gamma(1.0), WithinAbs(0.0, 1e-14));
  CHECK_THAT(log_gamma(2.0), WithinAbs(0.0, 1e-14));
  CHECK_THAT(log_gamma(0.5), WithinRel(std::log(std::sqrt(mlineq::pi)), 1e-14));
  CHECK_THAT(log_gamma(5.0), WithinRel(std::log(24.0), 1e-14));
}

TEST_CASE("log_gamma matches the extended-precision oracle on [0.5, 200]") {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> dist(0.5, 200.0);
  for (int i = 0; i < 50; ++i) {
    const double x = dist(rng);
    const double expected = static_cast<double>(oracles::log_gamma(x));
    const double tol = 1e-13 * std::max(1.0, std::abs(expected));
    CHECK_THAT(log_gamma(x), WithinAbs(expected, tol));
  }
}

TEST_CASE("log_gamma agrees with std::lgamma") {
  for (double x : {0.1, 0.37, 0.9, 1.46, 3.2, 17.0, 88.5, 140.0, 199.5}) {
    const double expected = std::lgamma(x);
    CHECK_THAT(log_gamma(x), WithinAbs(expected, 1e-13 * std::max(1.0, std::abs(expected))));
  }
}

TEST_CASE("log_gamma rejects nonpositive arguments") {
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-3.5), std::domain_error);
}

TEST_CASE("gen_binom anchor values") {
  CHECK_THAT(gen_binom(3.0, 1.0), WithinRel(3.0, 1e-13));
  CHECK_THAT(gen_binom(1.0, 0.5), WithinRel(4.0 / mlineq::pi, 1e-13));
  // Gamma(6) / Gamma(3.5)^2 with Gamma(3.5) = 1.875 sqrt(pi)
  CHECK_THAT(gen_binom(5.0, 2.5),
             WithinRel(120.0 / (1.875 * 1.875 * mlineq::pi), 1e-13));
}

TEST_CASE("gen_binom matches exact integer binomials") {
  auto exact = [](int n, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
    return v;
  };
  for (int n = 0; n <= 40; ++n) {
    for (int k = 0; k <= n; k += std::max(1, n / 5)) {
      CHECK_THAT(gen_binom(n, k), WithinRel(exact(n, k), 1e-12));
    }
  }
}

TEST_CASE("gen_binom symmetry in b <-> a - b") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> a_dist(0.0, 50.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a = a_dist(rng);
    const double b = a * unit(rng);
    CHECK_THAT(gen_binom(a, b), WithinRel(gen_binom(a, a - b), 1e-12));
  }
}

TEST_CASE("gen_binom rejects a lower index outside [0, a]") {
  CHECK_THROWS_AS(gen_binom(2.0, -0.1), std::domain_error);
  CHECK_THROWS_AS(gen_binom(2.0, 2.1), std::domain_error);
  CHECK_THROWS_AS(gen_binom(-1.0, 0.0), std::domain_error);
}

TEST_CASE("ratio Gamma(1 + a n) / Gamma(a + a n) is monotone in n") {
  auto ratio_log = [](double alpha, int n) {
    return log_gamma(1.0 + alpha * n) - log_gamma(alpha + alpha * n);
  };
  for (double alpha : {0.3, 0.5, 0.8}) {
    for (int n = 0; n < 50; ++n) {
      CHECK(ratio_log(alpha, n + 1) > ratio_log(alpha, n));
    }
  }
  for (double alpha : {1.2, 1.5, 3.0}) {
    for (int n = 0; n < 50; ++n) {
      CHECK(ratio_log(alpha, n + 1) < ratio_log(alpha, n));
    }
  }
}
