#include "core/sturm.hpp"

#include "core/errors.hpp"

namespace kacz {

namespace {

void strip_leading_zeros(std::vector<BigInt>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void divide_by_content(std::vector<BigInt>& p) {
  BigInt g = 0;
  for (const auto& c : p) g = boost::multiprecision::gcd(g, c);
  if (g == 0 || g == 1) return;
  for (auto& c : p) c /= g;
}

std::vector<BigInt> derivative(const std::vector<BigInt>& p) {
  std::vector<BigInt> d;
  for (std::size_t j = 1; j < p.size(); ++j) d.push_back(p[j] * BigInt(j));
  strip_leading_zeros(d);
  return d;
}

// Remainder of a by b up to a positive factor: every elimination step
// multiplies through by |lc(b)|, so the Sturm sign pattern is preserved.
std::vector<BigInt> positive_prem(std::vector<BigInt> r,
                                  const std::vector<BigInt>& b) {
  const BigInt c = b.back();
  const BigInt cabs = abs(c);
  const int csign = c > 0 ? 1 : -1;
  while (r.size() >= b.size() && !r.empty()) {
    const BigInt a = r.back();
    const std::size_t shift = r.size() - b.size();
    for (auto& coef : r) coef *= cabs;
    for (std::size_t j = 0; j < b.size(); ++j) {
      BigInt sub = a * b[j];
      if (csign < 0) sub = -sub;
      r[shift + j] -= sub;
    }
    strip_leading_zeros(r);
    divide_by_content(r);
  }
  return r;
}

int sign_of(const BigInt& v) { return v == 0 ? 0 : (v > 0 ? 1 : -1); }

int variations(const std::vector<int>& signs) {
  int count = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

}  // namespace

SturmChain::SturmChain(std::vector<BigInt> coefficients) {
  strip_leading_zeros(coefficients);
  if (coefficients.empty())
    throw DomainError("Sturm chain of the zero polynomial");
  divide_by_content(coefficients);
  chain_.push_back(std::move(coefficients));
  if (chain_[0].size() == 1) return;
  chain_.push_back(derivative(chain_[0]));
  divide_by_content(chain_[1]);
  while (chain_.back().size() > 1) {
    auto rem = positive_prem(chain_[chain_.size() - 2], chain_.back());
    if (rem.empty()) break;
    for (auto& c : rem) c = -c;
    chain_.push_back(std::move(rem));
  }
}

int SturmChain::variations_at(const BigRat& x) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  if (x == 0) {
    for (const auto& p : chain_) signs.push_back(sign_of(p.front()));
    return variations(signs);
  }
  if (x == 1) {
    for (const auto& p : chain_) {
      BigInt sum = 0;
      for (const auto& c : p) sum += c;
      signs.push_back(sign_of(sum));
    }
    return variations(signs);
  }
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  std::size_t max_deg = 0;
  for (const auto& p : chain_) max_deg = std::max(max_deg, p.size() - 1);
  std::vector<BigInt> num_pow(max_deg + 1), den_pow(max_deg + 1);
  num_pow[0] = 1;
  den_pow[0] = 1;
  for (std::size_t j = 1; j <= max_deg; ++j) {
    num_pow[j] = num_pow[j - 1] * num;
    den_pow[j] = den_pow[j - 1] * den;
  }
  for (const auto& p : chain_) {
    const std::size_t d = p.size() - 1;
    BigInt v = 0;
    for (std::size_t j = 0; j < p.size(); ++j)
      v += p[j] * num_pow[j] * den_pow[d - j];
    signs.push_back(sign_of(v));
  }
  return variations(signs);
}

int SturmChain::count_roots(const BigRat& lo, const BigRat& hi) const {
  if (!(lo < hi)) throw DomainError("empty Sturm interval");
  if (constant()) return 0;
  return variations_at(lo) - variations_at(hi);
}

}  // namespace kacz
