// Sparse integer polynomials with exact sign evaluation at rationals, and
// isolation of their sign-change roots in (0, 1).
//
// Isolation walks the derivative recursion: the sign-change roots of p'
// (computed recursively; the derivative of a polynomial with a nonzero
// constant term has one fewer term, so the recursion bottoms out) cut
// (0, 1) into pieces on which p is weakly monotone.  Each piece holds at
// most one sign crossing, found by exact-sign bisection.  Multiplicity
// never needs to be counted: a root is reported exactly when the sign of
// p, probed at rationals flanking the isolating interval, genuinely flips.
#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace kacz {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

class SparsePoly {
public:
  SparsePoly() = default;
  // Merges duplicate degrees and drops zero coefficients.
  static SparsePoly from_terms(std::vector<std::pair<std::uint64_t, BigInt>> terms);

  bool is_zero() const { return degrees_.empty(); }
  std::size_t term_count() const { return degrees_.size(); }
  std::uint64_t degree() const { return degrees_.back(); }
  std::uint64_t min_degree() const { return degrees_.front(); }
  const std::vector<std::uint64_t>& degrees() const { return degrees_; }
  const std::vector<BigInt>& coefficients() const { return coefficients_; }

  // p / t^{min_degree}: a positive factor on (0, 1), so sign-equivalent.
  SparsePoly shifted_to_constant() const;
  SparsePoly derivative() const;
  bool all_coefficients_same_sign() const;

  // Exact sign at x in [0, 1].  Decided by a certified double filter, then
  // escalating MPFR precision, then exact integer arithmetic; a zero
  // result means x is exactly a root.
  int sign_at(const BigRat& x) const;

  // Pure big-integer evaluation path (no floating-point filters); used for
  // the final parity certificates.
  int sign_at_exact(const BigRat& x) const;

private:
  std::vector<std::uint64_t> degrees_;      // strictly ascending
  std::vector<BigInt> coefficients_;        // nonzero, aligned with degrees_
};

// A sign-change root of p in (0, 1).  lo == hi marks an exact rational
// root.  probe_lo/probe_hi are rationals flanking the root at which p has
// the recorded nonzero signs; for a non-degenerate interval they are the
// interval ends themselves.
struct SignChangeRoot {
  BigRat lo, hi;
  int sign_left = 0;
  int sign_right = 0;
  BigRat probe_lo, probe_hi;
};

// All sign-change roots of p in the open interval (0, 1), sorted, with
// pairwise disjoint isolating intervals refined to width <= width_target.
//
// Roots at which p touches zero without changing sign are deliberately not
// reported.  A pair of crossings squeezed closer than ~2^-212 around a
// stationary point of p is indistinguishable from such a tangency without
// a dense gcd and is likewise dropped; at that separation the pair's
// effect on any downstream arctan total is far below 1e-30.
std::vector<SignChangeRoot> isolate_sign_changes(const SparsePoly& p,
                                                 const BigRat& width_target);

}  // namespace kacz
