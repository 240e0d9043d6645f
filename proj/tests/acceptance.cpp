// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mlineq/binomial.hpp"
#include "mlineq/gamma.hpp"
#include "mlineq/inequalities.hpp"
#include "mlineq/mittag_leffler.hpp"
#include "mlineq/stable_mc.hpp"

using namespace mlineq;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

void criterion_1_identity_grid() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> alphas{0.3, 0.5, 0.8, 1.5, 2.5, 3.7, 4.2, 5.5};
  double worst = 0.0;
  for (double alpha : alphas) {
    for (int k = 0; k <= 10; ++k) {
      for (int i = 1; i <= 10; ++i) {
        const double lambda = 0.1 * i;
        worst = std::max(worst,
                         identity_check(alpha, lambda, k).relative_residual());
      }
    }
  }
  const double elapsed = seconds_since(start);
  report(1, "extended binomial identity grid", worst < 1e-7 && elapsed < 60.0,
         "max rel residual " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

void criterion_2_classical_reduction() {
  double worst = 0.0;
  for (int k = 0; k <= 15; ++k) {
    for (int i = 1; i <= 10; ++i) {
      const double lambda = 0.1 * i;
      const double expected = std::pow(1.0 + lambda, k);
      worst = std::max(
          worst, std::abs(binom_sum(1.0, k, lambda) - expected) / expected);
    }
  }
  report(2, "classical reduction at alpha = 1", worst < 1e-12,
         "max rel error " + fmt(worst));
}

void criterion_3_closed_form_integrals() {
  double worst = 0.0;
  for (double alpha : {2.5, 4.2, 6.8}) {
    worst = std::max(worst, std::abs(int_quad(alpha, 1).value -
                                     int1_closed(alpha)) /
                                std::abs(int1_closed(alpha)));
    worst = std::max(worst, std::abs(int_quad(alpha, 2).value -
                                     int2_closed(alpha)) /
                                std::abs(int2_closed(alpha)));
  }
  report(3, "kernel integral closed forms vs quadrature", worst < 1e-8,
         "max rel deviation " + fmt(worst));
}

void criterion_4_binomial_scans() {
  GridSpec grid;
  for (int i = 1; i <= 9; ++i) grid.alphas.push_back(0.1 * i);
  for (int k = 1; k <= 10; ++k) grid.ks.push_back(k);
  for (int i = 1; i <= 20; ++i) grid.lambdas.push_back(0.05 * i);

  GridSpec high = grid;
  high.alphas.clear();
  for (int i = 11; i <= 69; ++i) {
    if (i % 10 != 0) high.alphas.push_back(0.1 * i);
  }

  const auto low_records = scan(grid, {ScanCheck::nc, ScanCheck::cnc1});
  const auto high_records = scan(high, {ScanCheck::cnc2});

  long fails = 0, errors = 0, weak_strict = 0;
  auto inspect = [&](const std::vector<InequalityRecord>& records,
                     bool strictness) {
    for (const auto& rec : records) {
      if (rec.verdict == Verdict::fails) ++fails;
      if (rec.verdict == Verdict::error) ++errors;
      if (strictness && rec.check_id != "nc" &&
          rec.params.at("lambda") >= 0.0999 &&
          !(rec.verdict == Verdict::holds && rec.margin > 1e-10)) {
        ++weak_strict;
      }
    }
  };
  inspect(low_records, true);
  inspect(high_records, true);
  report(4, "neo-classical and converse scans",
         fails == 0 && errors == 0 && weak_strict == 0,
         std::to_string(low_records.size() + high_records.size()) +
             " records, fails " + std::to_string(fails) + ", non-strict " +
             std::to_string(weak_strict));
}

void criterion_5_conjecture_probe() {
  long fails = 0, sharp_bad = 0;
  for (double alpha : {2.2, 3.0, 4.5, 6.6}) {
    for (int k = 1; k <= 8; ++k) {
      for (int i = 1; i <= 20; ++i) {
        const double lambda = 0.05 * i;
        const auto rec =
            check_binomial(BinomialKind::conjecture, alpha, k, lambda, 1.0);
        if (rec.verdict == Verdict::fails) ++fails;
        if (k == 1 && i == 20 && rec.verdict != Verdict::inconclusive) {
          ++sharp_bad;
        }
      }
    }
  }
  report(5, "conjecture probe with sharp point", fails == 0 && sharp_bad == 0,
         "fails " + std::to_string(fails) + ", sharp misreports " +
             std::to_string(sharp_bad));
}

void criterion_6_special_values() {
  double worst = 0.0;
  auto track = [&](double got, double expected) {
    worst = std::max(worst,
                     std::abs(got - expected) / std::max(1.0, std::abs(expected)));
  };
  track(ml(0.5, 1.0).value, std::exp(1.0) * std::erfc(-1.0));
  for (double x : {0.25, 0.5, 1.0, 2.0, 3.0}) {
    track(ml_power(1.0, x).value, std::exp(x));
    track(ml_power(2.0, x).value, std::cosh(x));
    track(ml_power(4.0, x).value, 0.5 * (std::cos(x) + std::cosh(x)));
  }
  report(6, "special values against closed forms", worst < 1e-10,
         "max rel deviation " + fmt(worst));
}

void criterion_7_representations() {
  double worst = 0.0;
  const std::vector<double> xs{0.25, 0.5, 1.0, 2.0, 3.0};
  for (double alpha : {0.4, 0.6, 0.9}) {
    for (double x : xs) {
      worst = std::max(worst, std::abs(std::exp(x) / alpha -
                                       phi(alpha, x).value -
                                       ml_power(alpha, x).value));
    }
  }
  for (double alpha : {1.2, 1.5, 1.8}) {
    for (double x : xs) {
      worst = std::max(worst, std::abs(std::log(ml_power(alpha, x).value) -
                                       x + std::log(alpha) -
                                       std::log(psi(alpha, x).value)));
    }
  }
  report(7, "phi and psi representation residuals", worst <= 1e-8,
         "max residual " + fmt(worst));
}

void criterion_8_shape_theorems() {
  std::vector<double> grid;
  for (double x = 0.25; x <= 4.001; x += 0.25) grid.push_back(x);

  long fails = 0;
  for (const auto& rec : check_log_shape(0.5, grid, 1e-3)) {
    if (rec.verdict != Verdict::holds) ++fails;
  }
  for (const auto& rec : check_log_shape(1.5, grid, 1e-3)) {
    if (rec.verdict != Verdict::holds) ++fails;
  }
  const auto e4 = check_log_shape(4.0, {2.0, 4.0});
  const bool sign_change = e4[0].margin > 0.0 && e4[1].margin < 0.0 &&
                           e4.back().verdict == Verdict::holds;
  report(8, "log-concavity/convexity and the alpha = 4 sign change",
         fails == 0 && sign_change,
         "shape misses " + std::to_string(fails) + ", sign change " +
             (sign_change ? "seen" : "missed"));
}

void criterion_9_logderiv_and_cm() {
  std::vector<double> positive;
  for (double x = 0.25; x <= 4.001; x += 0.25) positive.push_back(x);

  bool ok = true;
  std::string detail;
  const auto low =
      check_logderiv_monotone(0.5, {-1.0, -0.5, 0.0, 0.5, 1.0, 2.0});
  if (low.verdict != Verdict::holds) {
    ok = false;
    detail += " logderiv(0.5)";
  }
  for (double alpha : {1.5, 3.0}) {
    if (check_logderiv_monotone(alpha, positive).verdict != Verdict::holds) {
      ok = false;
      detail += " logderiv(" + fmt(alpha) + ")";
    }
  }

  std::vector<double> cm_grid;
  for (double x = 0.5; x <= 5.001; x += 0.5) cm_grid.push_back(x);
  auto probe = [&](CmTarget target, double alpha, const char* name) {
    for (const auto& rec : check_cm_probe(target, alpha, 6, cm_grid, 0.05)) {
      if (rec.verdict != Verdict::holds) {
        ok = false;
        detail += std::string(" ") + name + " n=" +
                  std::to_string(static_cast<int>(rec.params.at("k")));
      }
    }
  };
  probe(CmTarget::recip_ml, 3.0, "1/E_3");
  probe(CmTarget::phi, 0.5, "phi_0.5");
  probe(CmTarget::psi, 1.5, "psi_1.5");
  report(9, "log-derivative monotonicity and complete monotonicity probes",
         ok, ok ? "all verdicts hold" : ("misses:" + detail));
}

void criterion_10_section56_suite() {
  bool ok = true;
  std::string detail;

  Section56Params params;
  params.alphas = {2.5, 4.2};
  for (int i = 1; i <= 10; ++i) params.lambdas.push_back(0.1 * i);
  for (const auto& rec : check_section56(Section56Kind::cosine_sum, params)) {
    if (rec.verdict != Verdict::holds) {
      ok = false;
      detail += " cosine_sum";
      break;
    }
  }

  params.alphas = {2.5, 4.2, 6.8};
  for (const auto& rec : check_section56(Section56Kind::with_sine, params)) {
    if (rec.verdict != Verdict::holds) {
      ok = false;
      detail += " with_sine";
      break;
    }
  }

  params.alphas = {2.1, 2.5, 2.9, 4.2, 4.7, 6.5, 8.4, 10.6};
  for (const auto& rec : check_section56(Section56Kind::final_goal, params)) {
    if (rec.verdict != Verdict::holds) {
      ok = false;
      detail += " final_goal(alpha=" + fmt(rec.params.at("alpha")) + ")";
    }
  }

  Section56Params cad;
  cad.lattice_pitch = 0.01;
  cad.m_max = 5;
  long cad_fails = 0;
  const auto cad_records = check_section56(Section56Kind::cad_grid, cad);
  for (const auto& rec : cad_records) {
    if (rec.verdict == Verdict::fails) ++cad_fails;
  }
  if (cad_fails != 0) {
    ok = false;
    detail += " cad(" + std::to_string(cad_fails) + ")";
  }

  for (double alpha : {2.5, 4.2}) {
    const auto points = asympt_check(alpha, 1, {0.1, 0.01, 0.001});
    if (!(std::abs(points[1].defect) < std::abs(points[0].defect) &&
          std::abs(points[2].defect) < std::abs(points[1].defect))) {
      ok = false;
      detail += " asympt(alpha=" + fmt(alpha) + ")";
    }
  }

  report(10, "stage lemmas: cosine sum, sine quotient, final goal, lattice, "
             "asymptotics",
         ok,
         ok ? std::to_string(cad_records.size()) + " lattice points clean"
            : ("misses:" + detail));
}

void criterion_11_monte_carlo() {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = 42;
  const long n = 200000;
  bool ok = true;
  std::string detail;

  for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      const MCSummary s = mc_laplace(alpha, lambda, n, seed);
      if (std::abs(s.z_score) > 4.0) {
        ok = false;
        detail += " laplace(" + fmt(alpha) + "," + fmt(lambda) + ")";
      }
    }
  }
  for (auto [alpha, x] : {std::pair{0.5, 1.0}, std::pair{0.7, 0.5}}) {
    const MCSummary s = mc_ml_estimate(alpha, x, n, seed);
    if (std::abs(s.z_score) > 4.0) {
      ok = false;
      detail += " represent(" + fmt(alpha) + "," + fmt(x) + ")";
    }
  }
  std::vector<double> t_grid;
  for (double t = 0.25; t <= 5.001; t += 0.25) t_grid.push_back(t);
  const DominanceReport dom =
      mc_superadditivity(0.5, 1.0, 1.0, n, seed, t_grid);
  if (dom.max_violation > dom.binomial_stderr_bound) {
    ok = false;
    detail += " dominance";
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 30.0) {
    ok = false;
    detail += " runtime";
  }
  report(11, "Monte Carlo: Laplace, representation, dominance", ok,
         ok ? fmt(elapsed) + " s" : ("misses:" + detail));
}

}  // namespace

int main() {
  criterion_1_identity_grid();
  criterion_2_classical_reduction();
  criterion_3_closed_form_integrals();
  criterion_4_binomial_scans();
  criterion_5_conjecture_probe();
  criterion_6_special_values();
  criterion_7_representations();
  criterion_8_shape_theorems();
  criterion_9_logderiv_and_cm();
  criterion_10_section56_suite();
  criterion_11_monte_carlo();
  std::printf("%s (%d criterion failure%s)\n",
              failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              failures, failures == 1 ? "" : "s");
  return failures == 0 ? 0 : 1;
}
