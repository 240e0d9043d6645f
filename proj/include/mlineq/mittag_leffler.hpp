#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mlineq/common.hpp"
#include "mlineq/gamma.hpp"
#include "mlineq/quadrature.hpp"

namespace mlineq {

inline constexpr double default_x_max = 50.0;
inline constexpr int ml_term_cap = 20000;

namespace detail {

// Shared driver for the power series sum_k c_k(x) with log-space terms.
// TermLog(k) returns ln|term_k|; the sign alternates with k_parity when
// x < 0. Termination: three consecutive terms below 1e-17 * |partial sum|,
// but only after the term magnitude has passed its peak (mixed-sign series
// climb before they decay, so an early small term must not stop the sum).
template <typename TermLog>
EvalResult sum_series(double x, int first_k, TermLog&& term_log,
                      int parity_offset) {
  constexpr double term_eps = 1e-17;
  const double eps = std::numeric_limits<double>::epsilon();

  KahanSum sum;
  double abs_sum = 0.0;
  double peak = 0.0;
  bool past_peak = false;
  int consecutive_small = 0;
  double last_abs = 0.0;
  int k = first_k;
  for (; k <= ml_term_cap; ++k) {
    const double ln_t = term_log(k);
    double t = std::exp(ln_t);
    if (x < 0.0 && ((k + parity_offset) & 1)) t = -t;
    const double abs_t = std::abs(t);
    sum.add(t);
    abs_sum += abs_t;
    last_abs = abs_t;

    if (abs_t > peak) {
      peak = abs_t;
    } else if (abs_t < peak) {
      past_peak = true;
    }
    const double scale = std::max(std::abs(sum.value()),
                                  std::numeric_limits<double>::min());
    if (abs_t < term_eps * scale) {
      ++consecutive_small;
    } else {
      consecutive_small = 0;
    }
    if (past_peak && consecutive_small >= 3) break;
  }
  if (k > ml_term_cap) {
    throw NonConvergenceError("mittag_leffler series: term cap reached");
  }
  const double value = sum.value();
  if (!std::isfinite(value)) {
    throw NonConvergenceError("mittag_leffler series: sum overflowed");
  }
  return {value, last_abs + eps * abs_sum, k - first_k + 1};
}

inline EvalResult ml_series(double alpha, double x) {
  if (x == 0.0) return {1.0, 0.0, 1};
  const double ln_ax = std::log(std::abs(x));
  return sum_series(
      x, 0, [&](int k) { return k * ln_ax - log_gamma(alpha * k + 1.0); }, 0);
}

}  // namespace detail

// E_alpha(x) = sum_{k>=0} x^k / Gamma(alpha k + 1).
inline EvalResult ml(double alpha, double x, double x_max = default_x_max) {
  require(alpha > 0.0, "ml: alpha must be positive");
  require(std::abs(x) <= x_max, "ml: |x| exceeds configured X_max");
  return detail::ml_series(alpha, x);
}

// The composite map x -> E_alpha(x^alpha), x >= 0. The X_max guard applies
// to x itself: E_alpha(x^alpha) grows like e^x / alpha, so the powered
// series argument stays representable whenever x does.
inline EvalResult ml_power(double alpha, double x,
                           double x_max = default_x_max) {
  require(alpha > 0.0, "ml_power: alpha must be positive");
  require(x >= 0.0, "ml_power: x must be nonnegative");
  require(x <= x_max, "ml_power: x exceeds configured X_max");
  if (x == 0.0) return {1.0, 0.0, 1};
  return detail::ml_series(alpha, std::pow(x, alpha));
}

// Termwise derivative sum_{k>=1} k x^{k-1} / Gamma(alpha k + 1).
inline EvalResult ml_deriv(double alpha, double x,
                           double x_max = default_x_max) {
  require(alpha > 0.0, "ml_deriv: alpha must be positive");
  require(std::abs(x) <= x_max, "ml_deriv: |x| exceeds configured X_max");
  if (x == 0.0) return {std::exp(-log_gamma(alpha + 1.0)), 0.0, 1};
  const double ln_ax = std::log(std::abs(x));
  return detail::sum_series(
      x, 1,
      [&](int k) {
        return std::log(static_cast<double>(k)) + (k - 1) * ln_ax -
               log_gamma(alpha * k + 1.0);
      },
      1);  // sign of x^{k-1}
}

namespace detail {

// Both integral representations reduce to the same kernel on (0, infinity):
//   integral of t^{alpha-1} e^{-x t} / ((t^alpha - c)^2 + s^2) dt,
// with c = cos(alpha pi), s = sin(alpha pi). The completed-square form of
// the denominator keeps it >= s^2 exactly, so the sin^2(alpha pi) floor
// needs no separate runtime clamp. Split at t = 1; u = t^alpha regularizes
// the t^{alpha-1} endpoint factor, and t = 1/u maps the tail back onto
// (0, 1) with the same denominator shape.
inline EvalResult ml_kernel_integral(double alpha, double x,
                                     const QuadratureSpec& spec) {
  const double c = std::cos(alpha * pi);
  const double s = std::sin(alpha * pi);
  require(s != 0.0, "ml kernel integral: alpha must not be an integer");
  const double s2 = s * s;

  QuadratureSpec half = spec;
  half.abs_tol = 0.5 * spec.abs_tol;

  // t in (0, 1]: u = t^alpha, t^{alpha-1} dt = du / alpha.
  auto head = integrate_adaptive(
      [&](double u) {
        const double d = (u - c) * (u - c) + s2;
        return std::exp(-x * std::pow(u, 1.0 / alpha)) / d;
      },
      0.0, 1.0, half);
  head.value /= alpha;
  head.abs_error_estimate /= alpha;

  // t in [1, infinity): t = 1/u.
  auto tail = integrate_adaptive(
      [&](double u) {
        if (u <= 0.0) return 0.0;
        const double ua = std::pow(u, alpha);
        const double d = (ua - c) * (ua - c) + s2;
        const double v = std::pow(u, alpha - 1.0) * std::exp(-x / u);
        return v / d;
      },
      0.0, 1.0, half);

  return {head.value + tail.value,
          head.abs_error_estimate + tail.abs_error_estimate,
          head.work + tail.work};
}

}  // namespace detail

// phi_alpha(x) = (sin(alpha pi)/pi) * kernel integral, 0 < alpha < 1.
// Satisfies E_alpha(x^alpha) = e^x / alpha - phi_alpha(x).
inline EvalResult phi(double alpha, double x, const QuadratureSpec& spec = {}) {
  require(alpha > 0.0 && alpha < 1.0, "phi: alpha must lie in (0, 1)");
  require(x > 0.0, "phi: x must be positive");
  auto kernel = detail::ml_kernel_integral(alpha, x, spec);
  const double factor = std::sin(alpha * pi) / pi;
  return {factor * kernel.value, factor * kernel.abs_error_estimate,
          kernel.work};
}

// psi_alpha(x) = 1 - (alpha sin(alpha pi)/pi) e^{-x} * kernel integral,
// 1 < alpha < 2. Satisfies log E_alpha(x^alpha) = x - log alpha + log psi.
// Since sin(alpha pi) < 0 on (1, 2), psi decreases from alpha at 0+ to 1
// at infinity.
inline EvalResult psi(double alpha, double x, const QuadratureSpec& spec = {}) {
  require(alpha > 1.0 && alpha < 2.0, "psi: alpha must lie in (1, 2)");
  require(x > 0.0, "psi: x must be positive");
  auto kernel = detail::ml_kernel_integral(alpha, x, spec);
  const double factor = -alpha * std::sin(alpha * pi) / pi * std::exp(-x);
  return {1.0 + factor * kernel.value,
          std::abs(factor) * kernel.abs_error_estimate, kernel.work};
}

// The two pieces of the exponential-minus-integral representation of
// E_alpha(x^alpha): exp_term = e^x / alpha, integral_term = phi (alpha < 1)
// or psi (1 < alpha < 2).
struct ReprComponents {
  double alpha;
  double x;
  double exp_term;
  double integral_term;
};

inline ReprComponents repr_components(double alpha, double x,
                                      const QuadratureSpec& spec = {}) {
  require(x > 0.0, "repr_components: x must be positive");
  if (alpha > 0.0 && alpha < 1.0) {
    return {alpha, x, std::exp(x) / alpha, phi(alpha, x, spec).value};
  }
  if (alpha > 1.0 && alpha < 2.0) {
    return {alpha, x, std::exp(x) / alpha, psi(alpha, x, spec).value};
  }
  throw std::domain_error(
      "repr_components: alpha must lie in (0, 1) or (1, 2)");
}

}  // namespace mlineq
