// Empirical validation: draw Gaussian coefficient vectors, count real
// roots in an interval (exactly, via Sturm sequences on the dyadic
// rationals the doubles are), and aggregate statistics.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "core/quadrature.hpp"
#include "core/support_set.hpp"

namespace kacz {

enum class CountMethod { ExactSturm, GridSignChange };

struct TrialConfig {
  std::uint64_t seed = 0;
  std::uint64_t trials = 10'000;
  OpenInterval interval{};
  std::uint32_t degree_cap = 2048;
  CountMethod method = CountMethod::ExactSturm;
};

struct MCReport {
  double mean = 0.0;
  double sample_variance = 0.0;   // unbiased (n - 1 denominator)
  double ci95_halfwidth = 0.0;    // 1.96 sqrt(variance / trials)
  std::map<std::uint32_t, std::uint64_t> histogram;
  std::uint64_t trials_run = 0;
};

// |S| i.i.d. standard normal coefficients, reproducible per (seed, trial).
std::vector<double> sample_polynomial(const SupportSet& s, std::uint64_t seed,
                                      std::uint64_t trial_index);

// Exact count of distinct real roots of sum coeffs[i] x^{e_i} in the open
// interval.  Coefficients are converted to rationals without rounding; an
// endpoint that happens to be a root is excluded by nudging the endpoint
// inward (the event has probability zero under the sampling model).
int count_real_roots_interval(std::span<const double> coeffs, const SupportSet& s,
                              const OpenInterval& interval);

// Heuristic lower bound: sign changes of f over a geometric grid of
// 4096 |S| points concentrated near 1, each bracket confirmed by bisection.
int count_roots_grid(std::span<const double> coeffs, const SupportSet& s,
                     const OpenInterval& interval);

MCReport estimate_expected_zeros(const SupportSet& s, const TrialConfig& config);

}  // namespace kacz
