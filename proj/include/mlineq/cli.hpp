#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlineq/binomial.hpp"
#include "mlineq/inequalities.hpp"
#include "mlineq/mittag_leffler.hpp"
#include "mlineq/report.hpp"
#include "mlineq/stable_mc.hpp"

namespace mlineq::cli {

namespace detail {

inline double parse_number(const std::string& text) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw std::domain_error("malformed number: '" + text + "'");
  }
  if (pos != text.size()) {
    throw std::domain_error("malformed number: '" + text + "'");
  }
  return value;
}

// Value lists come either as comma-separated values ("0.1,0.01,0.001") or
// as start:stop[:step] ranges with inclusive stop (half-step tolerance).
inline std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(parse_number(item));
    if (values.empty()) throw std::domain_error("empty value list");
    return values;
  }
  const std::size_t c1 = text.find(':');
  if (c1 == std::string::npos) return {parse_number(text)};
  const std::size_t c2 = text.find(':', c1 + 1);
  const double start = parse_number(text.substr(0, c1));
  const double stop = parse_number(
      c2 == std::string::npos ? text.substr(c1 + 1)
                              : text.substr(c1 + 1, c2 - c1 - 1));
  const double step =
      c2 == std::string::npos ? 1.0 : parse_number(text.substr(c2 + 1));
  if (!(step > 0.0)) throw std::domain_error("range step must be positive");
  if (stop < start) throw std::domain_error("range stop is below start");
  for (double v = start; v <= stop + 0.5 * step; v += step) {
    values.push_back(std::min(v, stop));
  }
  return values;
}

inline std::vector<int> parse_int_values(const std::string& text) {
  std::vector<int> values;
  for (double v : parse_values(text)) {
    if (!nearly_integer(v, 1e-9)) {
      throw std::domain_error("expected integer values in '" + text + "'");
    }
    values.push_back(static_cast<int>(std::llround(v)));
  }
  return values;
}

inline int exit_code(const std::vector<ReportRow>& rows) {
  bool any_fails = false, any_error = false, any_holds = false;
  for (const auto& row : rows) {
    if (row.verdict == "fails") any_fails = true;
    if (row.verdict == "error") any_error = true;
    if (row.verdict == "holds") any_holds = true;
  }
  if (any_fails) return 1;
  if (any_error) return 2;
  if (any_holds) return 0;
  return 3;
}

inline ReportRow eval_row(std::string id, std::optional<double> alpha,
                          std::optional<double> k, std::optional<double> lambda,
                          std::optional<double> x, double value,
                          double err = 0.0) {
  ReportRow row;
  row.check_id = std::move(id);
  row.alpha = alpha;
  row.k = k;
  row.lambda = lambda;
  row.x = x;
  row.lhs = value;
  row.verdict = "holds";
  row.err_estimate = err;
  return row;
}

inline ReportRow equality_row(std::string id, std::optional<double> alpha,
                              double lhs, double rhs, double rel_budget,
                              double err = 0.0) {
  ReportRow row;
  row.check_id = std::move(id);
  row.alpha = alpha;
  row.lhs = lhs;
  row.rhs = rhs;
  row.margin = rel_budget - std::abs(lhs - rhs) /
                                std::max({1e-300, std::abs(lhs),
                                          std::abs(rhs)});
  row.verdict = to_string(classify(*row.margin, 0.0));
  row.err_estimate = err;
  return row;
}

}  // namespace detail

// Parses and executes one invocation. Returns the process exit code:
// 0 all holds/inconclusive with at least one holds, 1 any fails,
// 2 usage or domain error, 3 only inconclusive results.
inline int run(const std::vector<std::string>& args, std::ostream& out_stream,
               std::ostream& err_stream) {
  CLI::App app{"Numerical verification of Mittag-Leffler and generalized "
               "binomial inequalities"};
  app.name("mlineq");
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  std::string out_path;
  double atol = 1e-10;
  double quad_tol = 1e-10;
  if (const char* env = std::getenv("MLINEQ_QUAD_TOL")) {
    quad_tol = detail::parse_number(env);
  }
  std::uint64_t seed = 42;
  int jobs = 1;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--out", out_path, "Write the report to this path");
  app.add_option("--atol", atol, "Verdict tolerance");
  auto* quad_tol_opt =
      app.add_option("--quad-tol", quad_tol, "Quadrature absolute tolerance");
  app.add_option("--seed", seed, "RNG seed for Monte Carlo subcommands");
  app.add_option("--jobs", jobs, "Worker threads for scans and Monte Carlo");
  (void)quad_tol_opt;

  std::vector<ReportRow> rows;
  auto quad_spec = [&] {
    QuadratureSpec spec;
    spec.abs_tol = quad_tol;
    return spec;
  };

  // ---- eval ----------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "Evaluate one function");
  eval->require_subcommand(1);
  eval->fallthrough();
  struct {
    double alpha = 0.0, x = 0.0, lambda = 0.5;
    int k = 0;
  } ev;
  auto add_eval = [&](const char* name, const char* desc, bool with_x,
                      bool with_k, bool with_lambda, auto body) {
    auto* sub = eval->add_subcommand(name, desc);
    sub->fallthrough();
    sub->add_option("--alpha", ev.alpha, "alpha")->required();
    if (with_x) sub->add_option("--x", ev.x, "x")->required();
    if (with_k) sub->add_option("--k", ev.k, "k")->required();
    if (with_lambda) sub->add_option("--lambda", ev.lambda, "lambda")->required();
    sub->callback([&, body] { rows.push_back(body()); });
    return sub;
  };
  add_eval("ml", "E_alpha(x)", true, false, false, [&] {
    const EvalResult r = ml(ev.alpha, ev.x);
    return detail::eval_row("eval_ml", ev.alpha, std::nullopt, std::nullopt,
                            ev.x, r.value, r.abs_error_estimate);
  });
  add_eval("ml-power", "E_alpha(x^alpha)", true, false, false, [&] {
    const EvalResult r = ml_power(ev.alpha, ev.x);
    return detail::eval_row("eval_ml_power", ev.alpha, std::nullopt,
                            std::nullopt, ev.x, r.value, r.abs_error_estimate);
  });
  add_eval("ml-deriv", "E'_alpha(x)", true, false, false, [&] {
    const EvalResult r = ml_deriv(ev.alpha, ev.x);
    return detail::eval_row("eval_ml_deriv", ev.alpha, std::nullopt,
                            std::nullopt, ev.x, r.value, r.abs_error_estimate);
  });
  add_eval("phi", "phi_alpha(x)", true, false, false, [&] {
    const EvalResult r = phi(ev.alpha, ev.x, quad_spec());
    return detail::eval_row("eval_phi", ev.alpha, std::nullopt, std::nullopt,
                            ev.x, r.value, r.abs_error_estimate);
  });
  add_eval("psi", "psi_alpha(x)", true, false, false, [&] {
    const EvalResult r = psi(ev.alpha, ev.x, quad_spec());
    return detail::eval_row("eval_psi", ev.alpha, std::nullopt, std::nullopt,
                            ev.x, r.value, r.abs_error_estimate);
  });
  add_eval("binom-sum", "sum of genbinom(ak, aj) lambda^(aj)", false, true,
           true, [&] {
             return detail::eval_row("eval_binom_sum", ev.alpha, ev.k,
                                     ev.lambda, std::nullopt,
                                     binom_sum(ev.alpha, ev.k, ev.lambda));
           });
  add_eval("root-sum", "sum over K_alpha of (1 + lambda w)^(ak)", false, true,
           true, [&] {
             return detail::eval_row("eval_root_sum", ev.alpha, ev.k,
                                     ev.lambda, std::nullopt,
                                     root_sum(ev.alpha, ev.lambda, ev.k));
           });
  add_eval("int1", "closed form and quadrature of the s^alpha integral",
           false, false, false, [&] {
             const double closed = int1_closed(ev.alpha);
             const EvalResult q = int_quad(ev.alpha, 1, quad_spec());
             ReportRow row = detail::eval_row("eval_int1", ev.alpha,
                                              std::nullopt, std::nullopt,
                                              std::nullopt, closed,
                                              q.abs_error_estimate);
             row.rhs = q.value;
             return row;
           });
  add_eval("int2", "closed form and quadrature of the s^(alpha-1) integral",
           false, false, false, [&] {
             const double closed = int2_closed(ev.alpha);
             const EvalResult q = int_quad(ev.alpha, 2, quad_spec());
             ReportRow row = detail::eval_row("eval_int2", ev.alpha,
                                              std::nullopt, std::nullopt,
                                              std::nullopt, closed,
                                              q.abs_error_estimate);
             row.rhs = q.value;
             return row;
           });

  // ---- verify --------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Check identities");
  verify->require_subcommand(1);
  verify->fallthrough();
  struct {
    std::string alpha, k = "0", lambda = "0.5";
  } vf;
  auto* v_identity =
      verify->add_subcommand("identity", "Extended binomial identity");
  v_identity->fallthrough();
  v_identity->add_option("--alpha", vf.alpha, "alpha list/range")->required();
  v_identity->add_option("--k", vf.k, "k list/range");
  v_identity->add_option("--lambda", vf.lambda, "lambda list/range");
  v_identity->callback([&] {
    for (double alpha : detail::parse_values(vf.alpha))
      for (int k : detail::parse_int_values(vf.k))
        for (double lambda : detail::parse_values(vf.lambda))
          rows.push_back(to_row(identity_check(alpha, lambda, k, quad_spec())));
  });

  auto* v_integrals = verify->add_subcommand(
      "integrals", "Closed forms vs quadrature for the kernel integrals");
  v_integrals->fallthrough();
  v_integrals->add_option("--alpha", vf.alpha, "alpha list/range")->required();
  v_integrals->callback([&] {
    for (double alpha : detail::parse_values(vf.alpha)) {
      const EvalResult q1 = int_quad(alpha, 1, quad_spec());
      const EvalResult q2 = int_quad(alpha, 2, quad_spec());
      rows.push_back(detail::equality_row("int1_agree", alpha,
                                          int1_closed(alpha), q1.value, 1e-8,
                                          q1.abs_error_estimate));
      rows.push_back(detail::equality_row("int2_agree", alpha,
                                          int2_closed(alpha), q2.value, 1e-8,
                                          q2.abs_error_estimate));
    }
  });

  struct {
    std::string alpha, lambda = "0.1,0.01,0.001";
    int k = 1;
  } as;
  auto* v_asympt = verify->add_subcommand(
      "asympt", "Small-lambda expansion of the truncated kernel integral");
  v_asympt->fallthrough();
  v_asympt->add_option("--alpha", as.alpha, "alpha value")->required();
  v_asympt->add_option("--k", as.k, "k");
  v_asympt->add_option("--lambda", as.lambda, "decreasing lambda list");
  v_asympt->callback([&] {
    for (double alpha : detail::parse_values(as.alpha)) {
      const auto points =
          asympt_check(alpha, as.k, detail::parse_values(as.lambda),
                       quad_spec());
      double worst_drop = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < points.size(); ++i) {
        ReportRow row;
        row.check_id = "asympt_defect";
        row.alpha = alpha;
        row.k = as.k;
        row.lambda = points[i].lambda;
        row.lhs = points[i].defect;
        row.rhs = 0.0;
        row.verdict = "inconclusive";  // data row
        rows.push_back(row);
        if (i > 0) {
          worst_drop =
              std::min(worst_drop, std::abs(points[i - 1].defect) -
                                       std::abs(points[i].defect));
        }
      }
      ReportRow decreasing;
      decreasing.check_id = "asympt_decreasing";
      decreasing.alpha = alpha;
      decreasing.k = as.k;
      decreasing.margin = worst_drop;
      decreasing.verdict = to_string(classify(worst_drop, 0.0));
      rows.push_back(decreasing);
      ReportRow final_row;
      final_row.check_id = "asympt_final";
      final_row.alpha = alpha;
      final_row.k = as.k;
      final_row.lhs = points.back().defect;
      final_row.rhs = 0.05;
      final_row.margin = 0.05 - std::abs(points.back().defect);
      final_row.verdict = to_string(classify(*final_row.margin, 0.0));
      rows.push_back(final_row);
    }
  });

  // ---- scan ----------------------------------------------------------
  auto* scan_cmd = app.add_subcommand("scan", "Grid scans of the inequalities");
  scan_cmd->require_subcommand(1);
  scan_cmd->fallthrough();
  struct {
    std::string alpha, k = "1:10", lambda = "0.05:1:0.05";
    std::string x = "0.25:2:0.25", y = "0.25:2:0.25";
    std::string target = "recip-ml", kind = "all";
    double h = 1e-3;
    int n_max = 6;
    double pitch = 0.01;
    int m_max = 5;
  } sc;
  auto add_point_scan = [&](const char* name, const char* desc,
                            ScanCheck check) {
    auto* sub = scan_cmd->add_subcommand(name, desc);
    sub->fallthrough();
    sub->add_option("--alpha", sc.alpha, "alpha list/range")->required();
    if (is_binomial(check)) {
      sub->add_option("--k", sc.k, "k list/range");
      sub->add_option("--lambda", sc.lambda, "lambda list/range");
    } else {
      sub->add_option("--x", sc.x, "x list/range");
      sub->add_option("--y", sc.y, "y list/range");
    }
    sub->callback([&, check] {
      GridSpec grid;
      grid.alphas = detail::parse_values(sc.alpha);
      grid.atol = atol;
      if (is_binomial(check)) {
        grid.ks = detail::parse_int_values(sc.k);
        grid.lambdas = detail::parse_values(sc.lambda);
      } else {
        grid.xs = detail::parse_values(sc.x);
        grid.ys = detail::parse_values(sc.y);
      }
      for (const auto& rec : scan(grid, {check}, jobs)) {
        rows.push_back(to_row(rec));
      }
    });
  };
  add_point_scan("nc", "neo-classical inequality", ScanCheck::nc);
  add_point_scan("cnc1", "converse inequality, alpha < 1", ScanCheck::cnc1);
  add_point_scan("cnc2", "converse inequality, alpha > 1", ScanCheck::cnc2);
  add_point_scan("partial", "partial converse for alpha in (1, 2]",
                 ScanCheck::partial);
  add_point_scan("conjecture", "2^(alpha-1)-weighted lower bound",
                 ScanCheck::conjecture);
  add_point_scan("ml1", "E_alpha((x+y)^a) <= product", ScanCheck::ml1);
  add_point_scan("ml2", "E_alpha((x+y)^a) >= product", ScanCheck::ml2);
  add_point_scan("ml-lower", "alpha-weighted lower bound",
                 ScanCheck::ml_lower);

  auto* s_logshape =
      scan_cmd->add_subcommand("logshape", "log-concavity/convexity probe");
  s_logshape->fallthrough();
  s_logshape->add_option("--alpha", sc.alpha, "alpha value")->required();
  s_logshape->add_option("--x", sc.x, "x grid");
  s_logshape->add_option("--step", sc.h, "difference step");
  s_logshape->callback([&] {
    for (double alpha : detail::parse_values(sc.alpha))
      for (const auto& rec :
           check_log_shape(alpha, detail::parse_values(sc.x), sc.h, atol))
        rows.push_back(to_row(rec));
  });

  auto* s_logderiv = scan_cmd->add_subcommand(
      "logderiv", "monotonicity of E'_alpha / E_alpha");
  s_logderiv->fallthrough();
  s_logderiv->add_option("--alpha", sc.alpha, "alpha value")->required();
  s_logderiv->add_option("--x", sc.x, "x grid");
  s_logderiv->callback([&] {
    for (double alpha : detail::parse_values(sc.alpha))
      rows.push_back(to_row(
          check_logderiv_monotone(alpha, detail::parse_values(sc.x), atol)));
  });

  auto* s_cm =
      scan_cmd->add_subcommand("cm", "complete monotonicity probe");
  s_cm->fallthrough();
  s_cm->add_option("--alpha", sc.alpha, "alpha value")->required();
  s_cm->add_option("--target", sc.target, "function to probe")
      ->check(CLI::IsMember({"recip-ml", "phi", "psi"}));
  s_cm->add_option("--n-max", sc.n_max, "highest difference order");
  s_cm->add_option("--x", sc.x, "x grid");
  s_cm->add_option("--step", sc.h, "difference step");
  s_cm->callback([&] {
    const CmTarget target = sc.target == "recip-ml" ? CmTarget::recip_ml
                            : sc.target == "phi"    ? CmTarget::phi
                                                    : CmTarget::psi;
    for (double alpha : detail::parse_values(sc.alpha))
      for (const auto& rec :
           check_cm_probe(target, alpha, sc.n_max, detail::parse_values(sc.x),
                          sc.h, atol, quad_spec()))
        rows.push_back(to_row(rec));
  });

  auto* s_s56 = scan_cmd->add_subcommand(
      "section56", "even-floor stage inequalities and identities");
  s_s56->fallthrough();
  s_s56->add_option("--alpha", sc.alpha, "alpha list/range");
  s_s56->add_option("--kind", sc.kind, "which check")
      ->check(CLI::IsMember({"cosine-sum", "big-lambda", "goal3a", "cad",
                             "with-sine", "final-goal", "goal3-monotone",
                             "all"}));
  auto* s56_lambda = s_s56->add_option("--lambda", sc.lambda, "lambda grid");
  s_s56->add_option("--k", sc.k, "k list/range");
  s_s56->add_option("--pitch", sc.pitch, "cad lattice pitch");
  s_s56->add_option("--m-max", sc.m_max, "cad M upper bound");
  s_s56->callback([&] {
    Section56Params params;
    params.alphas = sc.alpha.empty() ? std::vector<double>{2.5, 4.2, 6.8}
                                     : detail::parse_values(sc.alpha);
    params.ks = detail::parse_int_values(sc.k == "1:10" ? "1:3" : sc.k);
    params.lattice_pitch = sc.pitch;
    params.m_max = sc.m_max;
    params.atol = atol;
    params.quad = quad_spec();
    const bool custom_lambda = s56_lambda->count() > 0;
    auto run_kind = [&](Section56Kind kind, const std::string& fallback) {
      params.lambdas = custom_lambda ? detail::parse_values(sc.lambda)
                                     : detail::parse_values(fallback);
      for (const auto& rec : check_section56(kind, params))
        rows.push_back(to_row(rec));
    };
    const std::string& kind = sc.kind;
    if (kind == "cosine-sum" || kind == "all")
      run_kind(Section56Kind::cosine_sum, "0.1:1:0.1");
    if (kind == "big-lambda" || kind == "all")
      run_kind(Section56Kind::big_lambda, "0.5:1:0.05");
    if (kind == "goal3a" || kind == "all")
      run_kind(Section56Kind::goal3a, "0.5:1:0.05");
    if (kind == "cad" || kind == "all")
      run_kind(Section56Kind::cad_grid, "0.5");
    if (kind == "with-sine" || kind == "all")
      run_kind(Section56Kind::with_sine, "0.5");
    if (kind == "final-goal" || kind == "all")
      run_kind(Section56Kind::final_goal, "0.5");
    if (kind == "goal3-monotone" || kind == "all")
      run_kind(Section56Kind::goal3_monotone, "0.05:0.45:0.05");
  });

  // ---- mc ------------------------------------------------------------
  auto* mc = app.add_subcommand("mc", "Monte Carlo checks");
  mc->require_subcommand(1);
  mc->fallthrough();
  struct {
    std::string alpha = "0.3,0.5,0.7,0.9", lambda = "0.5,1,2";
    double x = 1.0, y = 1.0;
    long n = 200000;
    std::string t = "0.25:5:0.25";
  } mo;
  auto* m_repr = mc->add_subcommand(
      "represent", "E_alpha(x^alpha) as the mean of exp(R_x)");
  m_repr->fallthrough();
  m_repr->add_option("--alpha", mo.alpha, "alpha value")->required();
  m_repr->add_option("--x", mo.x, "level x")->required();
  m_repr->add_option("--n", mo.n, "sample count");
  m_repr->callback([&] {
    for (double alpha : detail::parse_values(mo.alpha)) {
      const MCSummary s = mc_ml_estimate(alpha, mo.x, mo.n, seed, jobs);
      rows.push_back(to_row(s, "mc_represent", alpha, mo.x, std::nullopt));
    }
  });
  auto* m_dom = mc->add_subcommand(
      "dominance", "stochastic dominance of R_x + R~_y over R_{x+y}");
  m_dom->fallthrough();
  m_dom->add_option("--alpha", mo.alpha, "alpha value")->required();
  m_dom->add_option("--x", mo.x, "level x")->required();
  m_dom->add_option("--y", mo.y, "level y")->required();
  m_dom->add_option("--n", mo.n, "sample count");
  m_dom->add_option("--t", mo.t, "survival probe grid");
  m_dom->callback([&] {
    for (double alpha : detail::parse_values(mo.alpha)) {
      const DominanceReport report = mc_superadditivity(
          alpha, mo.x, mo.y, mo.n, seed, detail::parse_values(mo.t), jobs);
      rows.push_back(to_row(report, alpha, mo.x, mo.y));
    }
  });
  auto* m_lap = mc->add_subcommand(
      "laplace", "sampler validation through the Laplace transform");
  m_lap->fallthrough();
  m_lap->add_option("--alpha", mo.alpha, "alpha list/range");
  m_lap->add_option("--lambda", mo.lambda, "lambda list/range");
  m_lap->add_option("--n", mo.n, "sample count");
  m_lap->callback([&] {
    for (double alpha : detail::parse_values(mo.alpha))
      for (double lambda : detail::parse_values(mo.lambda)) {
        const MCSummary s = mc_laplace(alpha, lambda, mo.n, seed, jobs);
        rows.push_back(to_row(s, "mc_laplace", alpha, std::nullopt, lambda));
      }
  });

  // ---- parse and emit --------------------------------------------------
  try {
    std::vector<const char*> argv;
    argv.push_back("mlineq");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out_stream << app.help();
      return 0;
    }
    err_stream << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err_stream << "error: " << e.what() << '\n';
    return 2;
  }

  std::ofstream file;
  std::ostream* sink = &out_stream;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err_stream << "error: cannot open output file '" << out_path << "'\n";
      return 2;
    }
    sink = &file;
  }
  if (format == "csv") {
    *sink << csv_header << '\n';
    for (const auto& row : rows) write_csv_row(*sink, row);
  } else {
    for (const auto& row : rows) write_jsonl_row(*sink, row);
  }
  return detail::exit_code(rows);
}

}  // namespace mlineq::cli
