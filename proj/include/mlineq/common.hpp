#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mlineq {

inline constexpr double pi = 3.14159265358979323846;

// Thrown when an iterative scheme (series, adaptive quadrature) hits its
// work cap before reaching the requested tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed value plus an absolute error estimate and a work counter
// (series terms or quadrature node evaluations).
struct EvalResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long work = 1;
};

// Neumaier-compensated accumulator. The compensation term also catches the
// case |v| > |sum|, which plain Kahan mishandles.
class KahanSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline bool nearly_integer(double a, double tol = 1e-9) {
  return std::abs(a - std::round(a)) < tol;
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error(msg);
}

}  // namespace mlineq
