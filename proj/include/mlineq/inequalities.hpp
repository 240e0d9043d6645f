#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlineq/binomial.hpp"
#include "mlineq/common.hpp"
#include "mlineq/mittag_leffler.hpp"
#include "mlineq/parallel.hpp"

namespace mlineq {

enum class Verdict { holds, fails, inconclusive, error };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::error: return "error";
  }
  return "?";
}

// Margin trichotomy: beyond +atol the inequality holds strictly, beyond
// -atol it is violated, anything in between is numerically undecidable.
inline Verdict classify(double margin, double atol) {
  if (margin > atol) return Verdict::holds;
  if (margin < -atol) return Verdict::fails;
  return Verdict::inconclusive;
}

// One verification instance. margin is signed so that positive means the
// claimed inequality is satisfied strictly. Equality-style checks embed
// their tolerance budget into the margin and classify against atol = 0.
struct InequalityRecord {
  std::string check_id;
  std::map<std::string, double> params;
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  double margin = std::numeric_limits<double>::quiet_NaN();
  Verdict verdict = Verdict::inconclusive;
  double err_estimate = 0.0;
  std::string message;  // diagnostic, set when verdict == error
};

enum class BinomialKind { nc, cnc1, cnc2, partial_converse, conjecture };

inline const char* check_id(BinomialKind kind) {
  switch (kind) {
    case BinomialKind::nc: return "nc";
    case BinomialKind::cnc1: return "cnc1";
    case BinomialKind::cnc2: return "cnc2";
    case BinomialKind::partial_converse: return "partial_converse";
    case BinomialKind::conjecture: return "conjecture";
  }
  return "?";
}

// The five binomial-sum comparisons. Arguments are reduced to the
// (lambda, 1) form with lambda = min(x, y) / max(x, y); both sides then
// carry the common factor max(x, y)^{alpha k}, so margins scale but never
// change sign under (x, y) -> (c x, c y).
inline InequalityRecord check_binomial(BinomialKind kind, double alpha, int k,
                                       double x, double y,
                                       double atol = 1e-10) {
  switch (kind) {
    case BinomialKind::nc:
    case BinomialKind::cnc1:
      require(alpha > 0.0 && alpha < 1.0,
              "check_binomial: this kind needs alpha in (0, 1)");
      break;
    case BinomialKind::cnc2:
      require(alpha > 1.0, "check_binomial: cnc2 needs alpha > 1");
      break;
    case BinomialKind::partial_converse:
      require(alpha > 1.0 && alpha <= 2.0,
              "check_binomial: partial_converse needs alpha in (1, 2]");
      break;
    case BinomialKind::conjecture:
      require(alpha > 2.0, "check_binomial: conjecture needs alpha > 2");
      break;
  }
  require(k >= 0, "check_binomial: k must be nonnegative");
  require(x >= 0.0 && y >= 0.0 && x + y > 0.0,
          "check_binomial: x, y must be nonnegative and not both zero");

  const double big = std::max(x, y);
  const double lambda = std::min(x, y) / big;
  const double ak = alpha * k;
  if (ak * std::log(big) > 700.0 || ak * std::log1p(lambda) > 700.0) {
    throw std::domain_error("check_binomial: (x + y)^(alpha k) overflows");
  }
  const double scale = std::pow(big, ak);
  const double sum =
      (lambda == 0.0) ? 1.0 : binom_sum(alpha, k, lambda);
  const double weighted = scale * sum;
  const double rhs_pow = scale * std::pow(1.0 + lambda, ak);

  InequalityRecord rec;
  rec.check_id = check_id(kind);
  rec.params = {{"alpha", alpha},
                {"k", static_cast<double>(k)},
                {"x", x},
                {"y", y}};
  switch (kind) {
    case BinomialKind::nc:
      rec.lhs = alpha * weighted;
      rec.rhs = rhs_pow;
      rec.margin = rec.rhs - rec.lhs;
      break;
    case BinomialKind::cnc1:
      rec.lhs = weighted;
      rec.rhs = rhs_pow;
      rec.margin = rec.lhs - rec.rhs;
      break;
    case BinomialKind::cnc2:
      rec.lhs = weighted;
      rec.rhs = rhs_pow;
      rec.margin = rec.rhs - rec.lhs;
      break;
    case BinomialKind::partial_converse:
      rec.lhs = alpha * weighted;
      rec.rhs = rhs_pow;
      rec.margin = rec.lhs - rec.rhs;
      break;
    case BinomialKind::conjecture:
      rec.lhs = std::pow(2.0, alpha - 1.0) * weighted;
      rec.rhs = rhs_pow;
      rec.margin = rec.lhs - rec.rhs;
      break;
  }
  rec.verdict = classify(rec.margin, atol);
  return rec;
}

enum class MlKind { upper_ml1, lower_alpha, super_ml2 };

inline const char* check_id(MlKind kind) {
  switch (kind) {
    case MlKind::upper_ml1: return "ml1";
    case MlKind::lower_alpha: return "ml_lower";
    case MlKind::super_ml2: return "ml2";
  }
  return "?";
}

// Sub/super-multiplicativity of E_alpha(x^alpha). The series error
// estimates are propagated into the decision tolerance, so a margin inside
// the numeric noise comes back inconclusive rather than holds/fails.
inline InequalityRecord check_ml(MlKind kind, double alpha, double x, double y,
                                 double atol = 1e-10,
                                 double x_max = default_x_max) {
  switch (kind) {
    case MlKind::upper_ml1:
    case MlKind::lower_alpha:
      require(alpha > 0.0 && alpha <= 1.0,
              "check_ml: this kind needs alpha in (0, 1]");
      break;
    case MlKind::super_ml2:
      require(alpha >= 1.0, "check_ml: ml2 needs alpha >= 1");
      break;
  }
  require(x > 0.0 && y > 0.0, "check_ml: x and y must be positive");
  require(x + y <= x_max, "check_ml: x + y exceeds configured X_max");

  const EvalResult ex = ml_power(alpha, x, x_max);
  const EvalResult ey = ml_power(alpha, y, x_max);
  const EvalResult exy = ml_power(alpha, x + y, x_max);
  const double prod = ex.value * ey.value;
  const double prod_err = ex.abs_error_estimate * std::abs(ey.value) +
                          ey.abs_error_estimate * std::abs(ex.value) +
                          std::numeric_limits<double>::epsilon() * prod;

  InequalityRecord rec;
  rec.check_id = check_id(kind);
  rec.params = {{"alpha", alpha}, {"x", x}, {"y", y}};
  double err = prod_err + exy.abs_error_estimate;
  switch (kind) {
    case MlKind::upper_ml1:
      rec.lhs = exy.value;
      rec.rhs = prod;
      rec.margin = rec.rhs - rec.lhs;
      break;
    case MlKind::lower_alpha:
      rec.lhs = exy.value;
      rec.rhs = alpha * prod;
      rec.margin = rec.lhs - rec.rhs;
      err = alpha * prod_err + exy.abs_error_estimate;
      break;
    case MlKind::super_ml2:
      rec.lhs = exy.value;
      rec.rhs = prod;
      rec.margin = rec.lhs - rec.rhs;
      break;
  }
  rec.err_estimate = err;
  rec.verdict = classify(rec.margin, std::max(atol, err));
  return rec;
}

// Second central differences of log E_alpha(x^alpha): nonpositive on
// (0, 1) (log-concave), nonnegative on (1, 2] (log-convex). alpha = 4 is
// the counterexample case: the closed form of the second derivative,
// 2 sin(x) sinh(x) / (cos x + cosh x)^2, is evaluated per point and a
// trailing summary record reports whether a sign change was seen.
inline std::vector<InequalityRecord> check_log_shape(
    double alpha, const std::vector<double>& grid, double h = 1e-3,
    double atol = 1e-10) {
  require(!grid.empty(), "check_log_shape: empty grid");
  require(h > 0.0, "check_log_shape: h must be positive");
  std::vector<InequalityRecord> records;

  if (alpha == 4.0) {
    double d2_min = std::numeric_limits<double>::infinity();
    double d2_max = -std::numeric_limits<double>::infinity();
    for (double x : grid) {
      const double denom = std::cos(x) + std::cosh(x);
      const double d2 = 2.0 * std::sin(x) * std::sinh(x) / (denom * denom);
      d2_min = std::min(d2_min, d2);
      d2_max = std::max(d2_max, d2);
      InequalityRecord rec;
      rec.check_id = "logshape_e4";
      rec.params = {{"alpha", alpha}, {"x", x}};
      rec.lhs = d2;
      rec.rhs = 0.0;
      rec.margin = d2;
      rec.verdict = Verdict::inconclusive;  // no per-point claim
      records.push_back(rec);
    }
    InequalityRecord summary;
    summary.check_id = "logshape_signchange";
    summary.params = {{"alpha", alpha}};
    summary.lhs = d2_max;
    summary.rhs = d2_min;
    summary.margin = std::min(d2_max, -d2_min);  // positive iff both signs
    summary.verdict = classify(summary.margin, atol);
    records.push_back(summary);
    return records;
  }

  require(alpha > 0.0 && alpha <= 2.0,
          "check_log_shape: alpha must lie in (0, 2] (or be exactly 4)");
  require(grid.front() - h > 0.0, "check_log_shape: grid too close to 0");

  double max_log = 0.0;
  std::vector<double> d2(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double gm = std::log(ml_power(alpha, x - h).value);
    const double g0 = std::log(ml_power(alpha, x).value);
    const double gp = std::log(ml_power(alpha, x + h).value);
    d2[i] = (gp - 2.0 * g0 + gm) / (h * h);
    max_log = std::max({max_log, std::abs(gm), std::abs(g0), std::abs(gp)});
  }
  // Budget for rounding amplification of the second difference.
  const double atol2 = std::max(atol, 1e-12 / (h * h) * max_log);
  const bool concave = alpha < 1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    InequalityRecord rec;
    rec.check_id = concave ? "logshape_concave" : "logshape_convex";
    rec.params = {{"alpha", alpha}, {"x", grid[i]}, {"h", h}};
    rec.lhs = d2[i];
    rec.rhs = 0.0;
    rec.margin = concave ? -d2[i] : d2[i];
    rec.err_estimate = atol2;
    rec.verdict = classify(rec.margin, atol2);
    records.push_back(rec);
  }
  return records;
}

// Monotonicity of E'_alpha / E_alpha along an increasing grid:
// nondecreasing for alpha < 1 (log-convexity of E_alpha), nonincreasing
// for alpha > 1. Aggregated into a single record whose margin is the worst
// directed difference.
inline InequalityRecord check_logderiv_monotone(double alpha,
                                                const std::vector<double>& grid,
                                                double atol = 1e-10) {
  require(alpha > 0.0, "check_logderiv_monotone: alpha must be positive");
  require(grid.size() >= 2, "check_logderiv_monotone: need at least 2 points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    require(grid[i] > grid[i - 1],
            "check_logderiv_monotone: grid must be increasing");
  }
  if (alpha > 1.0) {
    require(grid.front() > 0.0,
            "check_logderiv_monotone: alpha > 1 requires a positive grid");
  }
  std::vector<double> ratio(grid.size());
  double err = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const EvalResult num = ml_deriv(alpha, grid[i]);
    const EvalResult den = ml(alpha, grid[i]);
    ratio[i] = num.value / den.value;
    err = std::max(err, (num.abs_error_estimate +
                         std::abs(ratio[i]) * den.abs_error_estimate) /
                            std::abs(den.value));
  }
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double diff = ratio[i + 1] - ratio[i];
    margin = std::min(margin, alpha < 1.0 ? diff : -diff);
  }
  InequalityRecord rec;
  rec.check_id = "logderiv";
  rec.params = {{"alpha", alpha}, {"x", grid.front()}, {"y", grid.back()}};
  rec.lhs = ratio.front();
  rec.rhs = ratio.back();
  rec.margin = margin;
  rec.err_estimate = err;
  rec.verdict = classify(margin, std::max(atol, 2.0 * err));
  return rec;
}

enum class CmTarget { recip_ml, phi, psi };

// Complete-monotonicity probe: (-1)^n * (forward difference)^n f / h^n must
// stay nonnegative for n = 0..n_max. One record per n; its margin is the
// worst scaled difference over the grid. For 1/E_alpha with alpha in (1, 2)
// the claim is an open question, which the check id marks as informational.
inline std::vector<InequalityRecord> check_cm_probe(
    CmTarget target, double alpha, int n_max, const std::vector<double>& grid,
    double h, double atol = 1e-10, const QuadratureSpec& qspec = {}) {
  require(n_max >= 1 && n_max <= 8, "check_cm_probe: n_max must be in [1, 8]");
  require(h > 0.0, "check_cm_probe: h must be positive");
  require(!grid.empty(), "check_cm_probe: empty grid");
  require(grid.front() - n_max * h > 0.0,
          "check_cm_probe: grid too close to 0 for the requested step");

  std::string id;
  bool informational = false;
  switch (target) {
    case CmTarget::recip_ml:
      require(alpha > 1.0, "check_cm_probe: recip_ml needs alpha > 1");
      informational = alpha < 2.0;
      id = informational ? "cm_recip_ml_open" : "cm_recip_ml";
      break;
    case CmTarget::phi:
      require(alpha > 0.0 && alpha < 1.0,
              "check_cm_probe: phi needs alpha in (0, 1)");
      id = "cm_phi";
      break;
    case CmTarget::psi:
      require(alpha > 1.0 && alpha < 2.0,
              "check_cm_probe: psi needs alpha in (1, 2)");
      id = "cm_psi";
      break;
  }

  auto f = [&](double x) -> double {
    switch (target) {
      case CmTarget::recip_ml: return 1.0 / ml(alpha, x).value;
      case CmTarget::phi: return phi(alpha, x, qspec).value;
      case CmTarget::psi: return psi(alpha, x, qspec).value;
    }
    return 0.0;
  };

  // f on the union of shifted grids, reused across difference orders.
  std::vector<std::vector<double>> values(grid.size(),
                                          std::vector<double>(n_max + 1));
  double max_f = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int j = 0; j <= n_max; ++j) {
      values[i][j] = f(grid[i] + j * h);
      max_f = std::max(max_f, std::abs(values[i][j]));
    }
  }

  std::vector<InequalityRecord> records;
  for (int n = 0; n <= n_max; ++n) {
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double diff = 0.0;
      double coef = 1.0;  // binomial(n, j), alternating
      for (int j = 0; j <= n; ++j) {
        const double sign = ((n - j) % 2 == 0) ? 1.0 : -1.0;
        diff += sign * coef * values[i][j];
        coef = coef * (n - j) / (j + 1);
      }
      const double scaled = ((n % 2 == 0) ? diff : -diff) / std::pow(h, n);
      margin = std::min(margin, scaled);
    }
    const double atol_n = std::max(atol, 1e-12 * std::pow(h, -n) * max_f);
    InequalityRecord rec;
    rec.check_id = id;
    rec.params = {{"alpha", alpha}, {"k", static_cast<double>(n)}, {"h", h}};
    rec.lhs = margin;
    rec.rhs = 0.0;
    rec.margin = margin;
    rec.err_estimate = atol_n;
    rec.verdict = classify(margin, atol_n);
    if (informational && rec.verdict == Verdict::fails) {
      // Open question: record the data without raising a failure.
      rec.verdict = Verdict::inconclusive;
      rec.message = "informational: no claim for alpha in (1, 2)";
    }
    records.push_back(rec);
  }
  return records;
}

enum class Section56Kind {
  cosine_sum,
  big_lambda,
  goal3a,
  cad_grid,
  with_sine,
  final_goal,
  goal3_monotone,
};

struct Section56Params {
  std::vector<double> alphas;
  std::vector<double> lambdas;
  std::vector<int> ks;
  int m_max = 5;                // cad_grid: M ranges over 1..m_max
  double lattice_pitch = 0.01;  // cad_grid: pitch for A and lambda
  double atol = 1e-10;
  QuadratureSpec quad;
};

namespace detail {

inline double cosine_sum_direct(double alpha, double lambda, int m) {
  KahanSum sum;
  for (int j = -m; j <= m; ++j) {
    sum.add(1.0 + 2.0 * lambda * std::cos(2.0 * j * pi / alpha) +
            lambda * lambda);
  }
  return sum.value();
}

inline double sine_quotient(double alpha) {
  return std::sin((std::floor(alpha) + 1.0) * pi / alpha) /
         std::sin((alpha + 1.0) * pi / alpha);
}

inline InequalityRecord equality_record(std::string id,
                                        std::map<std::string, double> params,
                                        double lhs, double rhs,
                                        double rel_budget) {
  InequalityRecord rec;
  rec.check_id = std::move(id);
  rec.params = std::move(params);
  rec.lhs = lhs;
  rec.rhs = rhs;
  const double budget =
      rel_budget * std::max({1.0, std::abs(lhs), std::abs(rhs)});
  rec.margin = budget - std::abs(lhs - rhs);
  rec.verdict = classify(rec.margin, 0.0);
  return rec;
}

}  // namespace detail

// Stage checks for the even-floor case: the cosine-sum identity, the two
// root-sum bounds, the lattice version of the polynomial inequality that
// the source verified by CAD, the sine-quotient bound, the small-lambda
// coefficient sign, and monotonicity of the combined expression in lambda.
inline std::vector<InequalityRecord> check_section56(
    Section56Kind kind, const Section56Params& p) {
  std::vector<InequalityRecord> records;
  switch (kind) {
    case Section56Kind::cosine_sum: {
      for (double alpha : p.alphas) {
        detail::require_even_floor(alpha, "check_section56(cosine_sum)");
        const int m = static_cast<int>(std::floor(alpha)) / 2;
        for (double lambda : p.lambdas) {
          require(lambda > 0.0 && lambda <= 1.0,
                  "check_section56: lambda must lie in (0, 1]");
          const double lhs = detail::cosine_sum_direct(alpha, lambda, m);
          const double rhs =
              std::ceil(alpha) * (1.0 + lambda * lambda) +
              2.0 * lambda *
                  (1.0 + 2.0 * std::cos((m + 1) * pi / alpha) *
                             std::sin(m * pi / alpha) / std::sin(pi / alpha));
          records.push_back(detail::equality_record(
              "s56_cosine_sum", {{"alpha", alpha}, {"lambda", lambda}}, lhs,
              rhs, 1e-12));
        }
      }
      break;
    }
    case Section56Kind::big_lambda: {
      for (double alpha : p.alphas) {
        detail::require_even_floor(alpha, "check_section56(big_lambda)");
        for (int k : p.ks) {
          require(k >= 1, "check_section56: k must be >= 1");
          for (double lambda : p.lambdas) {
            require(lambda >= 0.5 && lambda <= 1.0,
                    "check_section56: big_lambda needs lambda in [1/2, 1]");
            InequalityRecord rec;
            rec.check_id = "s56_big_lambda";
            rec.params = {{"alpha", alpha},
                          {"k", static_cast<double>(k)},
                          {"lambda", lambda}};
            rec.lhs = root_sum(alpha, lambda, k);
            rec.rhs = alpha * std::pow(1.0 + lambda, alpha * k);
            rec.margin = rec.rhs - rec.lhs;
            rec.verdict = classify(rec.margin, p.atol);
            records.push_back(rec);
          }
        }
      }
      break;
    }
    case Section56Kind::goal3a: {
      for (double alpha : p.alphas) {
        detail::require_even_floor(alpha, "check_section56(goal3a)");
        const int m = static_cast<int>(std::floor(alpha)) / 2;
        for (double lambda : p.lambdas) {
          require(lambda >= 0.5 && lambda <= 1.0,
                  "check_section56: goal3a needs lambda in [1/2, 1]");
          InequalityRecord rec;
          rec.check_id = "s56_goal3a";
          rec.params = {{"alpha", alpha}, {"lambda", lambda}};
          rec.lhs = detail::cosine_sum_direct(alpha, lambda, m);
          rec.rhs = alpha * (1.0 + lambda) * (1.0 + lambda);
          rec.margin = rec.rhs - rec.lhs;
          rec.verdict = classify(rec.margin, p.atol);
          records.push_back(rec);
        }
      }
      break;
    }
    case Section56Kind::cad_grid: {
      require(p.m_max >= 1, "check_section56: m_max must be >= 1");
      require(p.lattice_pitch > 0.0 && p.lattice_pitch < 0.5,
              "check_section56: lattice pitch out of range");
      const double pitch = p.lattice_pitch;
      for (int m = 1; m <= p.m_max; ++m) {
        const int a_steps = static_cast<int>(std::round(1.0 / pitch));
        for (int ia = 1; ia < a_steps; ++ia) {
          const double a = 2.0 * m + ia * pitch;  // open interval (2M, 2M+1)
          const int l_steps = static_cast<int>(std::round(0.5 / pitch));
          for (int il = 0; il <= l_steps; ++il) {
            const double lambda = 0.5 + il * pitch;
            const double pa = pi / a;
            const double inner =
                (-1.0 + 0.5 * std::pow((m + 1) * pa - pi, 2)) * (m * pa);
            const double denom = pa - pa * pa * pa / 6.0;
            const double lhs =
                (a + 1.0) * (1.0 + lambda * lambda) +
                2.0 * lambda * (1.0 + 2.0 * inner / denom);
            const double rhs = a * (1.0 + lambda) * (1.0 + lambda);
            InequalityRecord rec;
            rec.check_id = "s56_cad";
            rec.params = {{"x", a},
                          {"k", static_cast<double>(m)},
                          {"lambda", lambda}};
            rec.lhs = lhs;
            rec.rhs = rhs;
            rec.margin = rhs - lhs;
            rec.verdict = classify(rec.margin, p.atol);
            records.push_back(rec);
          }
        }
      }
      break;
    }
    case Section56Kind::with_sine: {
      for (double alpha : p.alphas) {
        detail::require_even_floor(alpha, "check_section56(with_sine)");
        InequalityRecord rec;
        rec.check_id = "s56_with_sine";
        rec.params = {{"alpha", alpha}};
        rec.lhs = detail::sine_quotient(alpha);
        rec.rhs = 1.0;
        rec.margin = rec.rhs - rec.lhs;
        rec.verdict = classify(rec.margin, p.atol);
        records.push_back(rec);
      }
      break;
    }
    case Section56Kind::final_goal: {
      for (double alpha : p.alphas) {
        detail::require_even_floor(alpha, "check_section56(final_goal)");
        InequalityRecord rec;
        rec.check_id = "s56_final_goal";
        rec.params = {{"alpha", alpha}};
        rec.lhs = 2.0 * std::floor(alpha / 3.0) + 1.0 - alpha +
                  detail::sine_quotient(alpha);
        rec.rhs = 0.0;
        rec.margin = -rec.lhs;
        rec.verdict = classify(rec.margin, p.atol);
        records.push_back(rec);
      }
      break;
    }
    case Section56Kind::goal3_monotone: {
      for (double alpha : p.alphas) {
        detail::require_even_floor(alpha, "check_section56(goal3_monotone)");
        const int m = static_cast<int>(std::floor(alpha)) / 2;
        for (int k : p.ks) {
          require(k >= 1, "check_section56: k must be >= 1");
          std::vector<double> values;
          for (double lambda : p.lambdas) {
            require(lambda > 0.0 && lambda < 0.5,
                    "check_section56: goal3_monotone needs lambda in (0, 1/2)");
            KahanSum lhs;
            for (int j = 1; j <= m; ++j) {
              lhs.add(2.0 * std::pow(1.0 +
                                         2.0 * lambda *
                                             std::cos(2.0 * j * pi / alpha) +
                                         lambda * lambda,
                                     alpha * k / 2.0));
            }
            lhs.add((1.0 - alpha) * std::pow(1.0 + lambda, alpha * k));
            const EvalResult integral =
                detail::truncated_kernel_integral(alpha, k, lambda, p.quad);
            lhs.add(-alpha * std::sin(alpha * pi) / pi * integral.value);
            values.push_back(lhs.value());
          }
          for (std::size_t i = 0; i + 1 < p.lambdas.size(); ++i) {
            require(p.lambdas[i] < p.lambdas[i + 1],
                    "check_section56: goal3_monotone wants ascending lambdas");
            InequalityRecord rec;
            rec.check_id = "s56_goal3_monotone";
            rec.params = {{"alpha", alpha},
                          {"k", static_cast<double>(k)},
                          {"lambda", p.lambdas[i + 1]}};
            rec.lhs = values[i];
            rec.rhs = values[i + 1];
            rec.margin = values[i] - values[i + 1];
            rec.verdict = classify(rec.margin, p.atol);
            records.push_back(rec);
          }
        }
      }
      break;
    }
  }
  return records;
}

enum class ScanCheck { nc, cnc1, cnc2, partial, conjecture, ml1, ml2, ml_lower };

inline bool is_binomial(ScanCheck c) {
  return c == ScanCheck::nc || c == ScanCheck::cnc1 || c == ScanCheck::cnc2 ||
         c == ScanCheck::partial || c == ScanCheck::conjecture;
}

struct GridSpec {
  std::vector<double> alphas;
  std::vector<int> ks;
  std::vector<double> lambdas;
  std::vector<double> xs;
  std::vector<double> ys;
  double atol = 1e-10;
};

struct VerdictCounts {
  long holds = 0;
  long fails = 0;
  long inconclusive = 0;
  long errors = 0;
};

inline VerdictCounts summarize(const std::vector<InequalityRecord>& records) {
  VerdictCounts counts;
  for (const auto& rec : records) {
    switch (rec.verdict) {
      case Verdict::holds: ++counts.holds; break;
      case Verdict::fails: ++counts.fails; break;
      case Verdict::inconclusive: ++counts.inconclusive; break;
      case Verdict::error: ++counts.errors; break;
    }
  }
  return counts;
}

namespace detail {

inline BinomialKind to_binomial(ScanCheck c) {
  switch (c) {
    case ScanCheck::nc: return BinomialKind::nc;
    case ScanCheck::cnc1: return BinomialKind::cnc1;
    case ScanCheck::cnc2: return BinomialKind::cnc2;
    case ScanCheck::partial: return BinomialKind::partial_converse;
    default: return BinomialKind::conjecture;
  }
}

inline MlKind to_ml(ScanCheck c) {
  switch (c) {
    case ScanCheck::ml1: return MlKind::upper_ml1;
    case ScanCheck::ml2: return MlKind::super_ml2;
    default: return MlKind::lower_alpha;
  }
}

}  // namespace detail

// Grid scan over the pointwise checks. Binomial kinds walk
// alpha x k x lambda with (x, y) = (lambda, 1); ML kinds walk
// alpha x xs x ys. Records come back in lexicographic grid order no matter
// how many workers run, and per-point domain errors become verdict=error
// records instead of aborting the scan.
inline std::vector<InequalityRecord> scan(const GridSpec& grid,
                                          const std::vector<ScanCheck>& checks,
                                          int jobs = 1) {
  struct Task {
    ScanCheck check;
    double alpha;
    int k = 0;
    double lambda = 0.0;
    double x = 0.0;
    double y = 0.0;
  };
  std::vector<Task> tasks;
  for (ScanCheck check : checks) {
    if (is_binomial(check)) {
      for (double alpha : grid.alphas)
        for (int k : grid.ks)
          for (double lambda : grid.lambdas)
            tasks.push_back({check, alpha, k, lambda, lambda, 1.0});
    } else {
      for (double alpha : grid.alphas)
        for (double x : grid.xs)
          for (double y : grid.ys)
            tasks.push_back({check, alpha, 0, 0.0, x, y});
    }
  }
  std::vector<InequalityRecord> records(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    try {
      if (is_binomial(t.check)) {
        records[i] = check_binomial(detail::to_binomial(t.check), t.alpha, t.k,
                                    t.x, t.y, grid.atol);
      } else {
        records[i] =
            check_ml(detail::to_ml(t.check), t.alpha, t.x, t.y, grid.atol);
      }
    } catch (const std::exception& e) {
      InequalityRecord rec;
      rec.check_id = is_binomial(t.check)
                         ? check_id(detail::to_binomial(t.check))
                         : check_id(detail::to_ml(t.check));
      rec.params = {{"alpha", t.alpha}, {"x", t.x}, {"y", t.y}};
      if (is_binomial(t.check)) {
        rec.params["k"] = t.k;
        rec.params["lambda"] = t.lambda;
      }
      rec.verdict = Verdict::error;
      rec.message = e.what();
      records[i] = rec;
    }
  });
  return records;
}

}  // namespace mlineq
