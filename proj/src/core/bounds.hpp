// Closed-form bounds on expected real zero counts, and the certified
// set-sum / set-union bound calculus built on exact critical-point
// isolation.
#pragma once

#include <cstdint>
#include <vector>

#include "core/critical_points.hpp"
#include "core/support_set.hpp"

namespace kacz {

// (2/pi) sqrt(k - 1) for |S| = k >= 1.
double sqrt_bound(std::uint64_t k);

// 1/4 + (2/pi)(sqrt(k - 1) - 1) for k >= 2; never exceeds sqrt_bound(k).
double refined_sqrt_bound(std::uint64_t k);

// (1/pi) sqrt(k) ln(k) for k >= 2.
double bet_bound(std::uint64_t k);

// (1/2pi)(ln(2/eps) + 4/sqrt(eps) - 4) for eps in (0, 1]; bounds the mass
// on (0, 1 - eps) uniformly in the support.
double tail_bound(double epsilon);

// Dense-support asymptotic over R: (2/pi) ln(n) + C1 + 2/(n pi) with
// C1 = 0.6257358072.
double kac_dense_asymptotic(std::uint64_t n);

// (1/pi) arctan(1/sqrt(k)): the certified increase when a monomial above
// the degree is appended to a support of size k.
double increment_bound(std::uint64_t k);

// z1 + z2: valid for collision-free set sums (caller certifies the flag
// from sum_sets).
double sum_bound(double z1, double z2);

// Certified bound for {0..n} built exactly as the induction runs: pairs
// give 1/4; odd n splits off {0, (n+1)/2}; even n unions the top monomial.
// Stays below (3/4) log2(n) for n >= 2.
double dense_bound_recursive(std::uint64_t n);

struct UnionBoundReport {
  double fine_value = 0.0;    // z1 + z2 + R/pi from the arctan partition
  double coarse_value = 0.0;  // z1 + z2 + (m + 1)/2
  std::size_t critical_point_count = 0;
  std::vector<double> critical_points;  // interval midpoints, ascending
  bool swapped = false;  // inputs were reordered to make the ratio increase at 0
};

// Bound for z_{S1 u S2} given certified values (or bounds) z1, z2 for the
// parts.  The pair is oriented so g_{S1}/g_{S2} increases at 0 (the set
// with the larger minimum exponent plays S1); the arctan total R is
// assembled from the odd critical points with gamma evaluated at the
// refined interval midpoints.
UnionBoundReport union_bound(const SupportSet& s1, const SupportSet& s2,
                             double z1, double z2);

}  // namespace kacz
