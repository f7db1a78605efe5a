#include "core/critical_points.hpp"

#include "core/errors.hpp"

namespace kacz {

namespace {

constexpr std::uint64_t kMaxExactExponent = std::uint64_t{1} << 20;

void ensure_disjoint(const SupportSet& s1, const SupportSet& s2) {
  for (auto e : s1.exponents())
    if (s2.contains(e))
      throw DomainError("sets are not disjoint: both contain " + std::to_string(e));
}

}  // namespace

double CriticalPoint::midpoint() const {
  return ((lo + hi) / 2).convert_to<double>();
}

SparsePoly ratio_derivative_numerator(const SupportSet& s1,
                                      const SupportSet& s2) {
  ensure_disjoint(s1, s2);
  std::vector<std::pair<std::uint64_t, BigInt>> terms;
  terms.reserve(s1.size() * s2.size());
  for (auto e : s1.exponents()) {
    for (auto f : s2.exponents()) {
      if (e == f) continue;
      const std::uint64_t deg = 2 * (e + f) - 1;
      const BigInt coef = 2 * (BigInt(e) - BigInt(f));
      terms.emplace_back(deg, coef);
    }
  }
  return SparsePoly::from_terms(std::move(terms));
}

CriticalPointList critical_points_odd(const SupportSet& s1,
                                      const SupportSet& s2) {
  ensure_disjoint(s1, s2);
  if (s1.max() > kMaxExactExponent || s2.max() > kMaxExactExponent)
    throw UnsupportedScaleError(
        "exact critical-point isolation supports exponents up to 2^20");

  const SparsePoly h = ratio_derivative_numerator(s1, s2);
  if (h.is_zero())
    throw Error("ratio derivative numerator vanished for disjoint sets");

  CriticalPointList out;
  if (h.all_coefficients_same_sign()) return out;  // monotone ratio

  const BigRat width_target(BigInt(1), BigInt(1'000'000'000'000));  // 1e-12
  for (const auto& root : isolate_sign_changes(h, width_target)) {
    CriticalPoint cp;
    cp.lo = root.lo;
    cp.hi = root.hi;
    cp.sign_before = root.sign_left;
    cp.sign_after = root.sign_right;
    cp.probe_lo = root.probe_lo;
    cp.probe_hi = root.probe_hi;
    // Parity certificate: pure integer evaluation at the flanking probes.
    const int exact_lo = h.sign_at_exact(cp.probe_lo);
    const int exact_hi = h.sign_at_exact(cp.probe_hi);
    if (exact_lo == 0 || exact_hi == 0 || exact_lo == exact_hi)
      throw Error("parity certificate failed for an isolated critical point");
    cp.sign_before = exact_lo;
    cp.sign_after = exact_hi;
    out.points.push_back(std::move(cp));
  }
  return out;
}

}  // namespace kacz
