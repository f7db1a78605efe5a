// Exact counting of distinct real roots of a dense integer polynomial in
// a half-open rational interval via Sturm sequences.
#pragma once

#include <vector>

#include "core/sparse_poly.hpp"  // BigInt / BigRat aliases

namespace kacz {

// Coefficients ascending by degree; trailing zeros allowed.
class SturmChain {
public:
  explicit SturmChain(std::vector<BigInt> coefficients);

  // Distinct roots in (lo, hi].
  int count_roots(const BigRat& lo, const BigRat& hi) const;

  // Sign variations of the chain at x.
  int variations_at(const BigRat& x) const;

  bool constant() const { return chain_.size() <= 1; }

private:
  std::vector<std::vector<BigInt>> chain_;  // dense, ascending degree
};

}  // namespace kacz
