#include "core/support_set.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "core/errors.hpp"

namespace kacz {

SupportSet::SupportSet(std::vector<std::uint64_t> exponents)
    : exponents_(std::move(exponents)) {
  if (exponents_.empty()) throw DomainError("support set must be nonempty");
  std::sort(exponents_.begin(), exponents_.end());
  exponents_.erase(std::unique(exponents_.begin(), exponents_.end()),
                   exponents_.end());
}

bool SupportSet::contains(std::uint64_t e) const {
  return std::binary_search(exponents_.begin(), exponents_.end(), e);
}

namespace {

std::uint64_t parse_u64(std::string_view tok) {
  std::uint64_t v = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw ParseError("invalid exponent '" + std::string(tok) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

SupportSet SupportSet::parse(std::string_view text) {
  std::vector<std::uint64_t> exps;
  std::string_view rest = trim(text);
  if (rest.empty()) throw ParseError("empty set specification");
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{}
                                           : rest.substr(comma + 1);
    if (item.empty()) throw ParseError("empty item in set specification");
    auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      exps.push_back(parse_u64(item));
    } else {
      std::uint64_t lo = parse_u64(trim(item.substr(0, dots)));
      std::uint64_t hi = parse_u64(trim(item.substr(dots + 2)));
      if (hi < lo) throw ParseError("descending range in set specification");
      if (hi - lo > 5'000'000)
        throw ParseError("range too large in set specification");
      for (std::uint64_t e = lo;; ++e) {
        exps.push_back(e);
        if (e == hi) break;
      }
    }
  }
  return SupportSet(std::move(exps));
}

std::string SupportSet::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i) out << ',';
    out << exponents_[i];
  }
  return out.str();
}

SupportSet normalize(const SupportSet& s) {
  const std::uint64_t m = s.min();
  if (m == 0) return s;
  std::vector<std::uint64_t> exps;
  exps.reserve(s.size());
  for (auto e : s.exponents()) exps.push_back(e - m);
  return SupportSet(std::move(exps));
}

SumSetsResult sum_sets(const SupportSet& s1, const SupportSet& s2) {
  std::vector<std::uint64_t> sums;
  sums.reserve(s1.size() * s2.size());
  for (auto a : s1.exponents()) {
    for (auto b : s2.exponents()) {
      if (a > std::numeric_limits<std::uint64_t>::max() - b)
        throw DomainError("exponent overflow in set sum");
      sums.push_back(a + b);
    }
  }
  const std::size_t all = sums.size();
  SupportSet result(std::move(sums));
  return SumSetsResult{result, result.size() == all};
}

SupportSet disjoint_union(const SupportSet& s1, const SupportSet& s2) {
  for (auto e : s1.exponents())
    if (s2.contains(e))
      throw DomainError("sets are not disjoint: both contain " + std::to_string(e));
  std::vector<std::uint64_t> merged;
  merged.reserve(s1.size() + s2.size());
  std::merge(s1.exponents().begin(), s1.exponents().end(),
             s2.exponents().begin(), s2.exponents().end(),
             std::back_inserter(merged));
  return SupportSet(std::move(merged));
}

SupportSet reflect(const SupportSet& s, std::uint64_t n) {
  if (n < s.max())
    throw DomainError("reflection degree " + std::to_string(n) +
                      " is below max exponent " + std::to_string(s.max()));
  std::vector<std::uint64_t> exps;
  exps.reserve(s.size());
  for (auto e : s.exponents()) exps.push_back(n - e);
  return SupportSet(std::move(exps));
}

SupportSet lower_bound_family(int k) {
  if (k < 1 || k > 5)
    throw DomainError("lower-bound family is supported for 1 <= k <= 5");
  std::vector<std::uint64_t> exps = {0, 1};
  for (int i = 1; i <= k; ++i)
    exps.push_back(std::uint64_t{1} << (std::uint64_t{1} << i));
  return SupportSet(std::move(exps));
}

}  // namespace kacz
