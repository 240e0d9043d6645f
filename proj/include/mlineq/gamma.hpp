#pragma once

#include <cmath>
#include <stdexcept>

#include "mlineq/common.hpp"

namespace mlineq {

// Log-gamma for positive real arguments, Lanczos approximation (g = 7,
// 9 coefficients, Godfrey's fit). Relative accuracy is a few ulp across
// [0.5, 200]; arguments below 0.5 go through the reflection formula.
inline double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma: argument must be positive");
  }
  static constexpr double g = 7.0;
  static constexpr double coef[9] = {
      0.99999999999980993,
      676.5203681218851,
      -1259.1392167224028,
      771.32342877765313,
      -176.61502916214059,
      12.507343278686905,
      -0.13857109526572012,
      9.9843695780195716e-6,
      1.5056327351493116e-7,
  };
  if (x < 0.5) {
    // ln Gamma(x) = ln(pi / sin(pi x)) - ln Gamma(1 - x)
    return std::log(pi / std::sin(pi * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double a = coef[0];
  for (int i = 1; i < 9; ++i) a += coef[i] / (z + i);
  const double t = z + g + 0.5;
  static const double half_log_two_pi = 0.91893853320467274178;
  return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(a);
}

// Upper/lower index pair of a generalized binomial coefficient. The lower
// index must lie in [0, a] so that all three gamma arguments are >= 1.
struct GenBinomArgs {
  double a;
  double b;
  GenBinomArgs(double a_, double b_) : a(a_), b(b_) {
    require(a >= 0.0, "gen_binom: upper index must be nonnegative");
    require(b >= 0.0 && b <= a, "gen_binom: lower index must lie in [0, a]");
  }
};

inline double log_gen_binom(const GenBinomArgs& args) {
  return log_gamma(args.a + 1.0) - log_gamma(args.b + 1.0) -
         log_gamma(args.a - args.b + 1.0);
}

// Gamma(a+1) / (Gamma(b+1) Gamma(a-b+1)), evaluated in log space so that
// indices up to a ~ 200 stay inside double range.
inline double gen_binom(const GenBinomArgs& args) {
  return std::exp(log_gen_binom(args));
}

inline double gen_binom(double a, double b) { return gen_binom({a, b}); }

}  // namespace mlineq
