// Numerical verification of the square-root growth machinery on the
// double-exponential family {0,1} u {2^(2^i)}: per-step boundary-layer
// masses, tail leakage, and the growth table of expected zero counts.
#pragma once

#include <vector>

#include "core/support_set.hpp"

namespace kacz {

struct StepReport {
  int k = 0;
  double scale_exponent = 0.0;   // a = 2^(2^k), the monomial being appended
  double boundary_mass = 0.0;    // integral of sqrt(W) over (1 - 1/(2a), 1), / 2pi
  double tail_leak = 0.0;        // integral of the base density over the layer
  double tail_leak_bound = 0.0;  // closed bound |S| max(S) / (pi 2a)
  double g_at_boundary = 0.0;    // g_S(1 - 1/(2a))
  double step_gain = 0.0;        // boundary_mass - tail_leak
};

// Step k appends a = 2^(2^k) to the base set S = {0,1} u {2^(2^i) : i < k}
// (so |S| = k + 1).  The boundary mass is evaluated by the closed arctan
// form; g at the layer edge is evaluated in extended precision.
//
// tail_leak is the actual density mass of the base set over the layer
// (which is what makes the gain strictly positive at every desk-scale k);
// the closed bound that dominates it is reported alongside.  At k <= 2 the
// closed bound exceeds the boundary mass, so the gain would only turn
// positive asymptotically if the bound itself were subtracted.
StepReport step_report(int k, unsigned precision_digits = 0);

struct GrowthRow {
  int k = 0;
  double z = 0.0;               // expected zeros of the family set on (0, 1)
  double abs_error = 0.0;
  double z_over_sqrt_k = 0.0;
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  bool strictly_increasing = false;
};

// z for the family sets k = 1..k_max via quadrature (extended precision is
// engaged automatically at k = 5 where the top exponent is 2^32).
GrowthTable verify_growth(int k_max, double abs_tol = 0.0,
                          unsigned precision_digits = 0);

}  // namespace kacz
