#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mlineq/common.hpp"
#include "mlineq/gamma.hpp"
#include "mlineq/mittag_leffler.hpp"
#include "mlineq/parallel.hpp"

namespace mlineq {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Maps to the open interval (0, 1); the +0.5 keeps 0 and 1 unreachable.
inline double to_open_unit(std::uint64_t bits) {
  return ((bits >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

}  // namespace detail

// Counter-based RNG: every draw derives its uniforms from
// (seed, stream, counter) alone, so draw i is the same number whether the
// run is serial or split across workers, and independent streams are just
// distinct stream ids.
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t counter = 0;

  // Two fresh uniforms in (0, 1) for the current counter value.
  void next_pair(double& u1, double& u2) {
    std::uint64_t state = seed;
    state ^= detail::splitmix64(state) + stream * 0x9e3779b97f4a7c15ULL;
    state ^= detail::splitmix64(state) + counter;
    u1 = detail::to_open_unit(detail::splitmix64(state));
    u2 = detail::to_open_unit(detail::splitmix64(state));
    ++counter;
  }
};

// One draw of the standard positive alpha-stable law, normalized so that
// E[exp(-lambda Z)] = exp(-lambda^alpha). Kanter's transform: with
// theta ~ U(0, pi) and E ~ Exp(1),
//   A(theta) = sin((1-alpha) theta) sin(alpha theta)^{alpha/(1-alpha)}
//              / sin(theta)^{1/(1-alpha)},
//   Z = (A / E)^{(1-alpha)/alpha}.
// A is computed in log space; for alpha near 1 the exponents blow up and
// the direct product would overflow long before the draw itself does.
inline double sample_positive_stable(double alpha, RngState& rng) {
  require(alpha > 0.0 && alpha < 1.0,
          "sample_positive_stable: alpha must lie in (0, 1)");
  double u1, u2;
  rng.next_pair(u1, u2);
  const double theta = pi * u1;
  const double e = -std::log(u2);
  const double log_a =
      std::log(std::sin((1.0 - alpha) * theta)) +
      alpha / (1.0 - alpha) * std::log(std::sin(alpha * theta)) -
      1.0 / (1.0 - alpha) * std::log(std::sin(theta));
  return std::exp((1.0 - alpha) / alpha * (log_a - std::log(e)));
}

// First-passage time of the subordinator over level x. From the scaling
// Z_t =d t^{1/alpha} Z_1: P(R_x > t) = P(Z_1 <= x t^{-1/alpha})
// = P((x/Z_1)^alpha >= t), so R_x =d (x / Z_1)^alpha. x = 0 degenerates to
// the exact hitting time 0.
inline double sample_hitting_time(double alpha, double x, RngState& rng) {
  require(x >= 0.0, "sample_hitting_time: x must be nonnegative");
  if (x == 0.0) {
    double u1, u2;
    rng.next_pair(u1, u2);  // keep the counter advancing uniformly
    return 0.0;
  }
  const double z = sample_positive_stable(alpha, rng);
  return std::pow(x / z, alpha);
}

struct MCSummary {
  long n = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  double target = 0.0;
  double z_score = 0.0;
  std::uint64_t seed = 0;
  bool variance_warning = false;
};

namespace detail {

// Chunked mean/variance accumulation with a fixed chunk size, so the
// reduction order (and hence the result, bit for bit) does not depend on
// the worker count.
template <typename Draw>
MCSummary mc_mean(long n, std::uint64_t seed, double target, int jobs,
                  Draw&& draw) {
  constexpr long chunk_size = 4096;
  const long chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<double> sums(chunks), sq_sums(chunks);
  parallel_for(static_cast<std::size_t>(chunks), jobs, [&](std::size_t c) {
    const long lo = static_cast<long>(c) * chunk_size;
    const long hi = std::min(n, lo + chunk_size);
    KahanSum s, s2;
    for (long i = lo; i < hi; ++i) {
      const double v = draw(static_cast<std::uint64_t>(i));
      s.add(v);
      s2.add(v * v);
    }
    sums[c] = s.value();
    sq_sums[c] = s2.value();
  });
  KahanSum total, total_sq;
  for (long c = 0; c < chunks; ++c) {
    total.add(sums[c]);
    total_sq.add(sq_sums[c]);
  }
  MCSummary out;
  out.n = n;
  out.seed = seed;
  out.target = target;
  out.mean = total.value() / n;
  const double var =
      std::max(0.0, (total_sq.value() / n - out.mean * out.mean)) *
      (n > 1 ? static_cast<double>(n) / (n - 1) : 1.0);
  out.stderr_ = std::sqrt(var / n);
  out.z_score = out.stderr_ > 0.0 ? (out.mean - out.target) / out.stderr_ : 0.0;
  return out;
}

}  // namespace detail

// Validates the sampler through its Laplace transform:
// mean of exp(-lambda Z) against exp(-lambda^alpha).
inline MCSummary mc_laplace(double alpha, double lambda, long n,
                            std::uint64_t seed, int jobs = 1) {
  require(n >= 1, "mc_laplace: n must be positive");
  require(lambda > 0.0, "mc_laplace: lambda must be positive");
  const double target = std::exp(-std::pow(lambda, alpha));
  return detail::mc_mean(n, seed, target, jobs, [&](std::uint64_t i) {
    RngState rng{seed, 0, i};
    return std::exp(-lambda * sample_positive_stable(alpha, rng));
  });
}

// Estimates E_alpha(x^alpha) = E[exp(R_x)] and compares against the series
// value. The guard region keeps the estimator variance at desk scale: the
// right tail of exp(R_x) fattens quickly as x grows.
inline MCSummary mc_ml_estimate(double alpha, double x, long n,
                                std::uint64_t seed, int jobs = 1) {
  require(alpha > 0.0 && alpha < 1.0,
          "mc_ml_estimate: alpha must lie in (0, 1)");
  require(x >= 0.0, "mc_ml_estimate: x must be nonnegative");
  require(!(alpha <= 0.7 && x > 1.5),
          "mc_ml_estimate: x > 1.5 is outside the variance guard for "
          "alpha <= 0.7");
  require(n >= 1, "mc_ml_estimate: n must be positive");
  const double target = ml_power(alpha, x).value;
  MCSummary out = detail::mc_mean(n, seed, target, jobs, [&](std::uint64_t i) {
    RngState rng{seed, 0, i};
    return std::exp(sample_hitting_time(alpha, x, rng));
  });
  out.variance_warning = out.mean != 0.0 && out.stderr_ / out.mean > 0.05;
  return out;
}

struct DominanceReport {
  std::vector<double> t_grid;
  std::vector<double> survival_sum;     // P(R_x + R~_y > t)
  std::vector<double> survival_direct;  // P(R_{x+y} > t)
  double max_violation = 0.0;           // worst survival_direct - survival_sum
  double binomial_stderr_bound = 0.0;   // 3 * largest combined stderr
  long n = 0;
  std::uint64_t seed = 0;
};

// Empirical check of R_x + R~_y >=st R_{x+y}: at every probe point the
// survival probability of the independent sum must not fall below the
// direct one by more than Monte Carlo noise. Streams 1, 2, 3 keep the three
// sample sets independent.
inline DominanceReport mc_superadditivity(double alpha, double x, double y,
                                          long n, std::uint64_t seed,
                                          const std::vector<double>& t_grid,
                                          int jobs = 1) {
  require(alpha > 0.0 && alpha < 1.0,
          "mc_superadditivity: alpha must lie in (0, 1)");
  require(x > 0.0 && y >= 0.0, "mc_superadditivity: need x > 0 and y >= 0");
  require(n >= 1, "mc_superadditivity: n must be positive");
  require(!t_grid.empty(), "mc_superadditivity: empty t grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    require(t_grid[i] > t_grid[i - 1],
            "mc_superadditivity: t grid must be increasing");
  }

  const std::size_t nt = t_grid.size();
  constexpr long chunk_size = 4096;
  const long chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<std::vector<long>> count_sum(chunks, std::vector<long>(nt, 0));
  std::vector<std::vector<long>> count_direct(chunks,
                                              std::vector<long>(nt, 0));
  parallel_for(static_cast<std::size_t>(chunks), jobs, [&](std::size_t c) {
    const long lo = static_cast<long>(c) * chunk_size;
    const long hi = std::min(n, lo + chunk_size);
    for (long i = lo; i < hi; ++i) {
      RngState rng_x{seed, 1, static_cast<std::uint64_t>(i)};
      RngState rng_y{seed, 2, static_cast<std::uint64_t>(i)};
      RngState rng_xy{seed, 3, static_cast<std::uint64_t>(i)};
      const double sum = sample_hitting_time(alpha, x, rng_x) +
                         sample_hitting_time(alpha, y, rng_y);
      const double direct = sample_hitting_time(alpha, x + y, rng_xy);
      for (std::size_t t = 0; t < nt; ++t) {
        if (sum > t_grid[t]) ++count_sum[c][t];
        if (direct > t_grid[t]) ++count_direct[c][t];
      }
    }
  });

  DominanceReport report;
  report.t_grid = t_grid;
  report.n = n;
  report.seed = seed;
  report.survival_sum.resize(nt);
  report.survival_direct.resize(nt);
  double worst = -std::numeric_limits<double>::infinity();
  double bound = 0.0;
  for (std::size_t t = 0; t < nt; ++t) {
    long cs = 0, cd = 0;
    for (long c = 0; c < chunks; ++c) {
      cs += count_sum[c][t];
      cd += count_direct[c][t];
    }
    const double p1 = static_cast<double>(cs) / n;
    const double p2 = static_cast<double>(cd) / n;
    report.survival_sum[t] = p1;
    report.survival_direct[t] = p2;
    const double se =
        std::sqrt((p1 * (1.0 - p1) + p2 * (1.0 - p2)) / n);
    worst = std::max(worst, p2 - p1);
    bound = std::max(bound, 3.0 * se);
  }
  report.max_violation = worst;
  report.binomial_stderr_bound = bound;
  return report;
}

}  // namespace mlineq
