#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "mlineq/inequalities.hpp"
#include "mlineq/stable_mc.hpp"

namespace mlineq {

// Flat, schema-stable result row. The column set is fixed; parameters a
// check does not use stay empty rather than disappearing.
struct ReportRow {
  std::string check_id;
  std::optional<double> alpha, k, lambda, x, y, h;
  std::optional<double> lhs, rhs, margin;
  std::string verdict;
  std::optional<double> err_estimate;
};

inline constexpr const char* csv_header =
    "check_id,alpha,k,lambda,x,y,h,lhs,rhs,margin,verdict,err_estimate";

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

inline std::string format_cell(const std::optional<double>& v) {
  if (!v.has_value() || !std::isfinite(*v)) return "";
  return format_double(*v);
}

}  // namespace detail

inline void write_csv_row(std::ostream& os, const ReportRow& row) {
  os << row.check_id << ',' << detail::format_cell(row.alpha) << ','
     << detail::format_cell(row.k) << ',' << detail::format_cell(row.lambda)
     << ',' << detail::format_cell(row.x) << ',' << detail::format_cell(row.y)
     << ',' << detail::format_cell(row.h) << ','
     << detail::format_cell(row.lhs) << ',' << detail::format_cell(row.rhs)
     << ',' << detail::format_cell(row.margin) << ',' << row.verdict << ','
     << detail::format_cell(row.err_estimate) << '\n';
}

inline void write_jsonl_row(std::ostream& os, const ReportRow& row) {
  nlohmann::json j;
  j["check_id"] = row.check_id;
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v.has_value() && std::isfinite(*v)) {
      j[key] = *v;
    } else {
      j[key] = nullptr;
    }
  };
  put("alpha", row.alpha);
  put("k", row.k);
  put("lambda", row.lambda);
  put("x", row.x);
  put("y", row.y);
  put("h", row.h);
  put("lhs", row.lhs);
  put("rhs", row.rhs);
  put("margin", row.margin);
  j["verdict"] = row.verdict;
  put("err_estimate", row.err_estimate);
  os << j.dump() << '\n';
}

inline ReportRow to_row(const InequalityRecord& rec) {
  ReportRow row;
  row.check_id = rec.check_id;
  auto pick = [&](const char* key) -> std::optional<double> {
    auto it = rec.params.find(key);
    if (it == rec.params.end()) return std::nullopt;
    return it->second;
  };
  row.alpha = pick("alpha");
  row.k = pick("k");
  row.lambda = pick("lambda");
  row.x = pick("x");
  row.y = pick("y");
  row.h = pick("h");
  if (rec.verdict != Verdict::error) {
    row.lhs = rec.lhs;
    row.rhs = rec.rhs;
    row.margin = rec.margin;
    row.err_estimate = rec.err_estimate;
  }
  row.verdict = to_string(rec.verdict);
  return row;
}

inline ReportRow to_row(const IdentityReport& report, double rel_tol = 1e-7) {
  ReportRow row;
  row.check_id = "identity";
  row.alpha = report.alpha;
  row.k = report.k;
  row.lambda = report.lambda;
  row.lhs = report.lhs;
  const double coefficient = nearly_integer(report.alpha)
                                 ? 0.0
                                 : report.alpha *
                                       std::pow(report.lambda, report.alpha) *
                                       std::sin(report.alpha * pi) / pi;
  row.rhs = report.root_sum - coefficient * report.integral;
  row.margin = rel_tol - report.relative_residual();
  row.verdict = to_string(classify(*row.margin, 0.0));
  row.err_estimate = std::abs(coefficient) * report.integral_error;
  return row;
}

inline ReportRow to_row(const MCSummary& summary, const std::string& id,
                        std::optional<double> alpha, std::optional<double> x,
                        std::optional<double> lambda) {
  ReportRow row;
  row.check_id = id;
  row.alpha = alpha;
  row.x = x;
  row.lambda = lambda;
  row.lhs = summary.mean;
  row.rhs = summary.target;
  row.margin = 4.0 * summary.stderr_ - std::abs(summary.mean - summary.target);
  row.verdict = to_string(classify(*row.margin, 0.0));
  row.err_estimate = summary.stderr_;
  return row;
}

inline ReportRow to_row(const DominanceReport& report, double alpha, double x,
                        double y) {
  ReportRow row;
  row.check_id = "mc_dominance";
  row.alpha = alpha;
  row.x = x;
  row.y = y;
  row.lhs = report.max_violation;
  row.rhs = report.binomial_stderr_bound;
  row.margin = report.binomial_stderr_bound - report.max_violation;
  row.verdict = to_string(classify(*row.margin, 0.0));
  row.err_estimate = report.binomial_stderr_bound / 3.0;
  return row;
}

}  // namespace mlineq
