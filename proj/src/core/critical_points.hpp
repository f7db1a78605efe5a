// Critical points of the ratio g_{S1}/g_{S2} on (0, 1) at which the
// derivative changes sign: the sign-change roots of
//   h(t) = g_{S2} g'_{S1} - g_{S1} g'_{S2}
//        = sum over (e, f) in S1 x S2 of 2 (e - f) t^{2(e+f)-1},
// isolated exactly in rational arithmetic.
#pragma once

#include <vector>

#include "core/sparse_poly.hpp"
#include "core/support_set.hpp"

namespace kacz {

struct CriticalPoint {
  BigRat lo, hi;       // isolating interval, width <= 1e-12; lo == hi exact
  int sign_before = 0; // exact sign of h at the flanking probe below
  int sign_after = 0;  // ... and above; sign_before != sign_after always
  BigRat probe_lo, probe_hi;
  double midpoint() const;
};

struct CriticalPointList {
  std::vector<CriticalPoint> points;  // sorted, pairwise disjoint
};

// Sign-change (odd multiplicity) critical points of g_{S1}/g_{S2} in (0, 1).
// Requires disjoint sets with max exponent <= 2^20; beyond that the exact
// integer evaluations are no longer desk-scale.  The parity certificates
// (probe points and signs) are re-verified with pure integer arithmetic.
CriticalPointList critical_points_odd(const SupportSet& s1, const SupportSet& s2);

// The numerator polynomial h itself; exposed for cross-checks.
SparsePoly ratio_derivative_numerator(const SupportSet& s1, const SupportSet& s2);

}  // namespace kacz
