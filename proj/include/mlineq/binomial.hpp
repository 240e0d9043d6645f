#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "mlineq/common.hpp"
#include "mlineq/gamma.hpp"
#include "mlineq/quadrature.hpp"

namespace mlineq {

// The finite set { omega : omega^alpha = 1 } under the principal power,
// parametrized by integer indices j with -alpha/2 < j <= alpha/2; the root
// for index j sits at angle 2 pi j / alpha. Index 0 (the root 1) is always
// present, and indices come in +/- pairs except possibly the boundary
// index j = alpha/2 when alpha is an even integer.
struct RootSet {
  double alpha;
  std::vector<int> indices;

  std::size_t size() const { return indices.size(); }
  double angle(std::size_t i) const {
    return 2.0 * pi * indices[i] / alpha;
  }
  std::complex<double> root(std::size_t i) const {
    return std::polar(1.0, angle(i));
  }
};

inline RootSet roots(double alpha) {
  require(alpha > 0.0, "roots: alpha must be positive");
  RootSet set{alpha, {}};
  const int lo = static_cast<int>(std::floor(-alpha / 2.0)) - 1;
  const int hi = static_cast<int>(std::floor(alpha / 2.0)) + 1;
  for (int j = lo; j <= hi; ++j) {
    if (j > -alpha / 2.0 && j <= alpha / 2.0) set.indices.push_back(j);
  }
  return set;
}

namespace detail {

// sum over omega in K_alpha of (1 + lambda omega)^{alpha k}, principal
// branch, before projection to the real axis.
inline std::complex<double> root_sum_complex(double alpha, double lambda,
                                             int k) {
  require(lambda > 0.0 && lambda <= 1.0,
          "root_sum: lambda must lie in (0, 1]");
  require(k >= 0, "root_sum: k must be nonnegative");
  const RootSet set = roots(alpha);
  const double power = alpha * k;
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const std::complex<double> z = 1.0 + lambda * set.root(i);
    if (std::abs(z) == 0.0) {
      // Only reachable at lambda = 1, omega = -1 (alpha an even integer),
      // where alpha k is an integer power: 0^0 = 1, 0^positive = 0.
      if (nearly_integer(power)) {
        if (power == 0.0) sum += 1.0;
        continue;
      }
      throw std::domain_error(
          "root_sum: branch point 1 + lambda*omega = 0 with non-integer "
          "exponent");
    }
    sum += std::exp(power * std::log(z));
  }
  return sum;
}

}  // namespace detail

// Real part of the root sum; the imaginary residue left by conjugate
// pairing must be negligible, which is asserted here.
inline double root_sum(double alpha, double lambda, int k) {
  const std::complex<double> sum = detail::root_sum_complex(alpha, lambda, k);
  const double scale = std::max(std::abs(sum.real()), 1.0);
  if (std::abs(sum.imag()) > 1e-12 * scale) {
    throw std::runtime_error(
        "root_sum: conjugate pairing failed to cancel imaginary part");
  }
  return sum.real();
}

// Integrand of the correction integral:
//   F(t, lambda, k) = t^{alpha-1} (1-t)^{alpha k}
//       * ( 1 / |t^alpha - lambda^alpha e^{-i alpha pi}|^2
//         + lambda^{alpha k} / |e^{-i alpha pi} - (lambda t)^alpha|^2 ).
// Both squared moduli are expanded to the completed square
// (a - b cos)^2 + (b sin)^2, which is manifestly >= (b sin)^2.
inline double f_integrand(double alpha, double t, double lambda, int k) {
  require(alpha > 0.0, "f_integrand: alpha must be positive");
  require(t > 0.0 && t < 1.0, "f_integrand: t must lie in (0, 1)");
  require(lambda > 0.0 && lambda <= 1.0,
          "f_integrand: lambda must lie in (0, 1]");
  require(k >= 0, "f_integrand: k must be nonnegative");
  const double c = std::cos(alpha * pi);
  const double s = std::sin(alpha * pi);
  const double ta = std::pow(t, alpha);
  const double la = std::pow(lambda, alpha);
  const double d1 = (ta - la * c) * (ta - la * c) + la * la * s * s;
  const double lta = la * ta;
  const double d2 = (lta - c) * (lta - c) + s * s;
  const double lak = std::pow(lambda, alpha * k);
  return std::pow(t, alpha - 1.0) * std::pow(1.0 - t, alpha * k) *
         (1.0 / d1 + lak / d2);
}

// integral of F(t, lambda, k) over (0, 1). The substitution u = t^alpha on
// [0, 1/2] removes the t^{alpha-1} endpoint factor exactly and turns both
// denominators into polynomials in u; the rest is left to the adaptive
// engine, which bisects into the near-cancellation region around
// t ~ lambda on its own.
inline EvalResult f_integral(double alpha, double lambda, int k,
                             const QuadratureSpec& spec = {}) {
  require(alpha > 0.0, "f_integral: alpha must be positive");
  require(!nearly_integer(alpha),
          "f_integral: integer alpha is handled by the exact binomial path");
  require(lambda > 0.0 && lambda <= 1.0,
          "f_integral: lambda must lie in (0, 1]");
  require(k >= 0, "f_integral: k must be nonnegative");

  const double c = std::cos(alpha * pi);
  const double s = std::sin(alpha * pi);
  const double s2 = s * s;
  const double la = std::pow(lambda, alpha);
  const double lak = std::pow(lambda, alpha * k);
  const double ak = alpha * k;

  QuadratureSpec half = spec;
  half.abs_tol = 0.5 * spec.abs_tol;
  half.substitution = Substitution::power_alpha;

  const double u_split = std::pow(0.5, alpha);
  auto head = integrate_adaptive(
      [&](double u) {
        const double t = std::pow(u, 1.0 / alpha);
        const double d1 = (u - la * c) * (u - la * c) + la * la * s2;
        const double d2 = (la * u - c) * (la * u - c) + s2;
        return std::pow(1.0 - t, ak) * (1.0 / d1 + lak / d2);
      },
      0.0, u_split, half);
  head.value /= alpha;
  head.abs_error_estimate /= alpha;

  half.substitution = Substitution::none;
  auto rest = integrate_adaptive(
      [&](double t) {
        const double ta = std::pow(t, alpha);
        const double d1 = (ta - la * c) * (ta - la * c) + la * la * s2;
        const double lta = la * ta;
        const double d2 = (lta - c) * (lta - c) + s2;
        return std::pow(t, alpha - 1.0) * std::pow(1.0 - t, ak) *
               (1.0 / d1 + lak / d2);
      },
      0.5, 1.0, half);

  return {head.value + rest.value,
          head.abs_error_estimate + rest.abs_error_estimate,
          head.work + rest.work};
}

// sum_{j=0}^{k} genbinom(alpha k, alpha j) lambda^{alpha j}; every term is
// positive and the j = 0 term is 1.
inline double binom_sum(double alpha, int k, double lambda) {
  require(alpha > 0.0, "binom_sum: alpha must be positive");
  require(k >= 0, "binom_sum: k must be nonnegative");
  require(lambda > 0.0 && lambda <= 1.0,
          "binom_sum: lambda must lie in (0, 1]");
  const double lg_top = log_gamma(alpha * k + 1.0);
  const double ln_lambda = std::log(lambda);
  KahanSum sum;
  for (int j = 0; j <= k; ++j) {
    const double ln_term = lg_top - log_gamma(alpha * j + 1.0) -
                           log_gamma(alpha * (k - j) + 1.0) +
                           alpha * j * ln_lambda;
    sum.add(std::exp(ln_term));
  }
  return sum.value();
}

// One instance of the extended binomial identity
//   alpha * binom_sum = root_sum - (alpha lambda^alpha sin(alpha pi)/pi) * integral.
// residual is lhs - root_sum + coefficient * integral; for integer alpha the
// sine kills the integral term and the two sums are compared directly.
struct IdentityReport {
  double alpha;
  double lambda;
  int k;
  double lhs;        // alpha * binom_sum
  double root_sum;
  double integral;   // 0 when alpha is an integer
  double residual;
  double imag_residue;    // |Im| of the root sum before projection
  double integral_error;  // quadrature error estimate

  double relative_residual() const {
    return std::abs(residual) / (std::abs(lhs) + std::abs(root_sum));
  }
};

inline IdentityReport identity_check(double alpha, double lambda, int k,
                                     const QuadratureSpec& spec = {}) {
  require(lambda > 0.0 && lambda <= 1.0,
          "identity_check: lambda must lie in (0, 1]");
  const double lhs = alpha * binom_sum(alpha, k, lambda);
  const std::complex<double> rs = detail::root_sum_complex(alpha, lambda, k);
  IdentityReport report{alpha, lambda, k, lhs, rs.real(), 0.0, 0.0,
                        std::abs(rs.imag()), 0.0};
  if (nearly_integer(alpha)) {
    report.residual = lhs - report.root_sum;
    return report;
  }
  const EvalResult integral = f_integral(alpha, lambda, k, spec);
  const double coefficient =
      alpha * std::pow(lambda, alpha) * std::sin(alpha * pi) / pi;
  report.integral = integral.value;
  report.integral_error = integral.abs_error_estimate;
  report.residual = lhs - report.root_sum + coefficient * integral.value;
  return report;
}

namespace detail {

// Hypothesis shared by the closed-form integrals and the small-lambda
// expansion: alpha > 2, non-integer, with even integer part.
inline void require_even_floor(double alpha, const char* who) {
  if (!(alpha > 2.0) || nearly_integer(alpha) ||
      (static_cast<long>(std::floor(alpha)) % 2 != 0)) {
    throw std::domain_error(std::string(who) +
                            ": requires non-integer alpha > 2 with even "
                            "integer part");
  }
}

}  // namespace detail

// integral of s^alpha / (s^{2 alpha} - 2 s^alpha cos(alpha pi) + 1) over
// (0, infinity), closed form.
inline double int1_closed(double alpha) {
  detail::require_even_floor(alpha, "int1_closed");
  const double fl = std::floor(alpha);
  return pi * std::sin((fl + 1.0) * pi / alpha) /
         (alpha * std::sin(alpha * pi) * std::sin((alpha + 1.0) * pi / alpha));
}

// Same with numerator s^{alpha-1}.
inline double int2_closed(double alpha) {
  detail::require_even_floor(alpha, "int2_closed");
  return pi * (std::ceil(alpha) - alpha) / (alpha * std::sin(alpha * pi));
}

// Quadrature route for the two semi-infinite integrals. Substituting
// w = s^alpha gives rational-denominator integrands; the tail maps onto
// (0, 1) via w -> 1/w, and the leftover w^{-1/alpha} singularity of the
// first integral is absorbed by one more power substitution.
inline EvalResult int_quad(double alpha, int which,
                           const QuadratureSpec& spec = {}) {
  detail::require_even_floor(alpha, "int_quad");
  require(which == 1 || which == 2, "int_quad: which must be 1 or 2");
  const double c = std::cos(alpha * pi);
  const double s2 = std::sin(alpha * pi) * std::sin(alpha * pi);
  auto rational = [&](double w) {
    return 1.0 / ((w - c) * (w - c) + s2);
  };
  QuadratureSpec half = spec;
  half.abs_tol = 0.5 * spec.abs_tol;

  if (which == 2) {
    // Head and tail coincide after w -> 1/w.
    auto head = integrate_adaptive(rational, 0.0, 1.0, half);
    return {2.0 * head.value / alpha, 2.0 * head.abs_error_estimate / alpha,
            head.work};
  }
  auto head = integrate_adaptive(
      [&](double w) { return std::pow(w, 1.0 / alpha) * rational(w); }, 0.0,
      1.0, half);
  // Tail: w -> 1/v leaves v^{-1/alpha}; r = v^{(alpha-1)/alpha} clears it.
  const double tail_exp = alpha / (alpha - 1.0);
  auto tail = integrate_adaptive(
      [&](double r) { return rational(std::pow(r, tail_exp)); }, 0.0, 1.0,
      half);
  return {head.value / alpha + tail.value / (alpha - 1.0),
          head.abs_error_estimate / alpha +
              tail.abs_error_estimate / (alpha - 1.0),
          head.work + tail.work};
}

namespace detail {

// integral of s^{alpha-1} (1 - lambda s)^{alpha k} / ((s^alpha - c)^2 + s^2)
// over (0, 1/lambda). Split at s = 1 and fold the far piece back onto
// (lambda, 1) via s = 1/v; both pieces have the bounded completed-square
// denominator.
inline EvalResult truncated_kernel_integral(double alpha, int k, double lambda,
                                            const QuadratureSpec& spec) {
  const double c = std::cos(alpha * pi);
  const double s2 = std::sin(alpha * pi) * std::sin(alpha * pi);
  const double ak = alpha * k;
  QuadratureSpec half = spec;
  half.abs_tol = 0.5 * spec.abs_tol;

  auto near = integrate_adaptive(
      [&](double s) {
        const double sa = std::pow(s, alpha);
        return std::pow(s, alpha - 1.0) * std::pow(1.0 - lambda * s, ak) /
               ((sa - c) * (sa - c) + s2);
      },
      0.0, 1.0, half);
  auto far = integrate_adaptive(
      [&](double v) {
        const double va = std::pow(v, alpha);
        return std::pow(v, alpha - 1.0) * std::pow(1.0 - lambda / v, ak) /
               ((va - c) * (va - c) + s2);
      },
      lambda, 1.0, half);
  return {near.value + far.value,
          near.abs_error_estimate + far.abs_error_estimate,
          near.work + far.work};
}

}  // namespace detail

struct AsymptPoint {
  double lambda;
  double defect;
};

// Probes the small-lambda expansion of the truncated kernel integral:
//   integral(lambda) = int2_closed - alpha k lambda int1_closed + o(lambda).
// defect(lambda) is the remainder divided by lambda, which must shrink as
// the (decreasing) lambda sequence approaches zero.
inline std::vector<AsymptPoint> asympt_check(
    double alpha, int k, const std::vector<double>& lambdas,
    const QuadratureSpec& spec = {}) {
  detail::require_even_floor(alpha, "asympt_check");
  require(k >= 0, "asympt_check: k must be nonnegative");
  require(!lambdas.empty(), "asympt_check: lambda sequence is empty");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    require(lambdas[i] > 0.0 && lambdas[i] <= 0.1,
            "asympt_check: lambda values must lie in (0, 0.1]");
    if (i > 0) {
      require(lambdas[i] < lambdas[i - 1],
              "asympt_check: lambda sequence must decrease");
    }
  }
  const double i1 = int1_closed(alpha);
  const double i2 = int2_closed(alpha);
  std::vector<AsymptPoint> result;
  result.reserve(lambdas.size());
  for (double lambda : lambdas) {
    const EvalResult integral =
        detail::truncated_kernel_integral(alpha, k, lambda, spec);
    const double defect =
        (integral.value - i2 + alpha * k * lambda * i1) / lambda;
    result.push_back({lambda, defect});
  }
  return result;
}

}  // namespace mlineq
