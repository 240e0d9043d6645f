#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "mlineq/common.hpp"

namespace mlineq {

// Endpoint substitution applied by an operation before handing the
// integrand to the adaptive engine. Which one is appropriate is decided per
// integral; the enum exists so a spec can record the choice.
enum class Substitution { none, power_alpha, inverse };

struct QuadratureSpec {
  double abs_tol = 1e-10;
  int max_refinements = 60;  // bisection depth limit per subinterval
  Substitution substitution = Substitution::none;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights (QUADPACK dqk15 constants).
inline constexpr double gk_nodes[8] = {
    0.9914553711208126392068546975263285,
    0.9491079123427585245261896840478513,
    0.8648644233597690727897127886409262,
    0.7415311855993944398638647732807884,
    0.5860872354676911302941448382587296,
    0.4058451513773971669066064120769615,
    0.2077849550078984676006894037732449,
    0.0,
};
inline constexpr double gk_weights_kronrod[8] = {
    0.0229353220105292249637320080589695,
    0.0630920926299785532907006631892042,
    0.1047900103222501838398763225415180,
    0.1406532597155259187451895905102379,
    0.1690047266392679028265834265985503,
    0.1903505780647854099132564024210137,
    0.2044329400752988924141619992346491,
    0.2094821410847278280129991748917143,
};
inline constexpr double gk_weights_gauss[4] = {
    0.1294849661688696932706114326790820,
    0.2797053914892766679014677714237796,
    0.3818300505051189449503697754889751,
    0.4179591836734693877551020408163265,
};

struct Segment {
  double a, b;
  double integral;
  double error;
  double abs_integral;
  int depth;
};

template <typename F>
Segment gk15(const F& f, double a, double b, int depth) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const double f_mid = f(mid);
  double kronrod = gk_weights_kronrod[7] * f_mid;
  double gauss = gk_weights_gauss[3] * f_mid;
  double abs_sum = gk_weights_kronrod[7] * std::abs(f_mid);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * gk_nodes[i];
    const double f_lo = f(mid - dx);
    const double f_hi = f(mid + dx);
    kronrod += gk_weights_kronrod[i] * (f_lo + f_hi);
    abs_sum += gk_weights_kronrod[i] * (std::abs(f_lo) + std::abs(f_hi));
    if (i % 2 == 1) gauss += gk_weights_gauss[i / 2] * (f_lo + f_hi);
  }
  Segment s;
  s.a = a;
  s.b = b;
  s.integral = kronrod * half;
  s.abs_integral = abs_sum * std::abs(half);
  s.error = std::abs((kronrod - gauss) * half);
  s.depth = depth;
  return s;
}

inline bool worse(const Segment& x, const Segment& y) {
  return x.error < y.error;
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration on [a, b]. The segment with
// the largest error estimate is bisected until the summed estimate drops
// below max(abs_tol, rounding floor), where the floor is 16 eps times the
// L1 norm of the integrand; without it, tolerances far below the attainable
// precision of large integrals would spin forever.
template <typename F>
EvalResult integrate_adaptive(F&& f, double a, double b,
                              const QuadratureSpec& spec = {}) {
  require(spec.abs_tol > 0.0, "integrate_adaptive: abs_tol must be positive");
  require(spec.max_refinements >= 1,
          "integrate_adaptive: max_refinements must be >= 1");
  constexpr std::size_t max_segments = 200000;
  const double eps = std::numeric_limits<double>::epsilon();

  long evals = 15;
  std::vector<detail::Segment> heap;
  heap.push_back(detail::gk15(f, a, b, 0));
  std::vector<detail::Segment> frozen;

  double err_sum = heap.front().error;
  double l1 = heap.front().abs_integral;
  double frozen_err = 0.0;

  auto tolerance = [&] { return std::max(spec.abs_tol, 16.0 * eps * l1); };

  while (err_sum + frozen_err > tolerance() && !heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), detail::worse);
    detail::Segment seg = heap.back();
    heap.pop_back();
    err_sum -= seg.error;
    l1 -= seg.abs_integral;

    const double mid = 0.5 * (seg.a + seg.b);
    const bool degenerate = !(mid > seg.a && mid < seg.b);
    if (seg.depth >= spec.max_refinements || degenerate) {
      frozen.push_back(seg);
      frozen_err += seg.error;
      l1 += seg.abs_integral;
      continue;
    }
    detail::Segment left = detail::gk15(f, seg.a, mid, seg.depth + 1);
    detail::Segment right = detail::gk15(f, mid, seg.b, seg.depth + 1);
    evals += 30;
    for (auto& child : {left, right}) {
      heap.push_back(child);
      std::push_heap(heap.begin(), heap.end(), detail::worse);
      err_sum += child.error;
      l1 += child.abs_integral;
    }
    if (heap.size() + frozen.size() > max_segments) {
      throw NonConvergenceError(
          "integrate_adaptive: segment budget exhausted");
    }
  }

  const double total_err = err_sum + frozen_err;
  if (total_err > tolerance()) {
    throw NonConvergenceError(
        "integrate_adaptive: refinement limit reached before tolerance");
  }

  KahanSum total;
  for (const auto& seg : heap) total.add(seg.integral);
  for (const auto& seg : frozen) total.add(seg.integral);
  return {total.value(), std::max(total_err, eps * l1), evals};
}

}  // namespace mlineq
