// Adaptive integration of the zero density: z_S^I over subintervals of
// (0, 1), over the whole real line via reflection, and the closed-form
// arctan mass of the cross term on monotone panels.
#pragma once

#include <cstdint>
#include <vector>

#include "core/errors.hpp"
#include "core/support_set.hpp"

namespace kacz {

// Canonical integration domain; other intervals are mapped here first.
struct OpenInterval {
  double lo = 0.0;
  double hi = 1.0;

  OpenInterval() = default;
  OpenInterval(double lo, double hi);
};

struct QuadratureResult {
  double value = 0.0;                // expected zero count
  double abs_error_estimate = 0.0;
  std::uint64_t evaluations = 0;     // density evaluations consumed
  std::vector<double> breakpoints;   // pre-split points used, sorted
};

struct QuadratureOptions {
  // <= 0 selects the default: 1e-8 for |S| <= 64 with exponents below
  // 2^20, 1e-6 for the large-exponent regime.
  double abs_tol = 0.0;
  std::uint64_t max_evaluations = 1'000'000;
  // 0 runs in double; otherwise evaluation runs in MPFR with this many
  // decimal digits.  Needed when boundary layers are narrower than the
  // double-precision panel tolerance can resolve (exponents ~2^32).
  unsigned precision_digits = 0;
};

double resolve_abs_tol(const SupportSet& s, const QuadratureOptions& opts);

// z_S^I: (1/2pi) Integral_I sqrt(I(g_S)).  The set is normalized
// internally; the integrand is the sum-of-squares form; panels are
// pre-split at 1 - 1/(2e) for each exponent e >= 1 so every monomial's
// boundary layer is resolved.  Throws NumericalError (with the best
// estimate attached) if the evaluation budget is exhausted first.
QuadratureResult expected_zeros(const SupportSet& s, const OpenInterval& interval,
                                const QuadratureOptions& opts = {});

// z_S over all of R: 2 * (z_S^(0,1) + z_{S'}^(0,1)) with S' the reflection
// of S through its degree.
QuadratureResult expected_zeros_real(const SupportSet& s,
                                     const QuadratureOptions& opts = {});

// z_S over (0, 1 - epsilon); empty interval yields zero.
QuadratureResult tail_mass(const SupportSet& s, double epsilon,
                           const QuadratureOptions& opts = {});

// Exact value of Integral sqrt(W) over (alpha, beta) for a disjoint pair
// whose ratio g_{S1}/g_{S2} is monotone there:
//   2 |arctan sqrt(g1(beta)/g2(beta)) - arctan sqrt(g1(alpha)/g2(alpha))|.
// alpha = 0 uses the one-sided limit of the ratio.
double arctan_mass(const SupportSet& s1, const SupportSet& s2, double alpha,
                   double beta, unsigned precision_digits = 0);

// Direct quadrature of sqrt(W)/(2pi) over (lo, hi); the numerical
// counterpart of arctan_mass / (2pi) used by cross-checks.
QuadratureResult cross_term_mass(const SupportSet& s1, const SupportSet& s2,
                                 const OpenInterval& interval,
                                 const QuadratureOptions& opts = {});

}  // namespace kacz
