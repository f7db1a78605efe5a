// Exact algebra on exponent sets: the supports S of sparse polynomials
// f_S = sum a_i x^{e_i}.  Sets are immutable, stored sorted ascending
// without duplicates; exponents live in 64 unsigned bits.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kacz {

class SupportSet {
public:
  // Sorts and deduplicates; throws DomainError on an empty input.
  explicit SupportSet(std::vector<std::uint64_t> exponents);

  // Accepts "0,1,4,16" and the dense shorthand "0..64"; items may be mixed
  // ("0,8..12").  Throws ParseError on malformed text.
  static SupportSet parse(std::string_view text);

  const std::vector<std::uint64_t>& exponents() const { return exponents_; }
  std::size_t size() const { return exponents_.size(); }
  std::uint64_t min() const { return exponents_.front(); }
  std::uint64_t max() const { return exponents_.back(); }
  bool contains(std::uint64_t e) const;
  bool normalized() const { return exponents_.front() == 0; }

  std::string to_string() const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

private:
  std::vector<std::uint64_t> exponents_;  // strictly ascending, nonempty
};

// {e - min(S) : e in S}; idempotent.
SupportSet normalize(const SupportSet& s);

struct SumSetsResult {
  SupportSet set;
  bool collision_free;  // |S1 + S2| == |S1| * |S2|
};

// Minkowski sum {a + b}.  Throws DomainError if any a + b overflows 64 bits.
SumSetsResult sum_sets(const SupportSet& s1, const SupportSet& s2);

// Sorted merge; throws DomainError naming the colliding exponent if the
// sets intersect.
SupportSet disjoint_union(const SupportSet& s1, const SupportSet& s2);

// {n - e : e in S}; requires n >= max(S).
SupportSet reflect(const SupportSet& s, std::uint64_t n);

// {0,1} together with the double-exponential tower 2^(2^i) for 1 <= i <= k.
// Cardinality k + 2.  Supported for 1 <= k <= 5 so the top exponent 2^32
// stays comfortably inside 64 bits.
SupportSet lower_bound_family(int k);

}  // namespace kacz
