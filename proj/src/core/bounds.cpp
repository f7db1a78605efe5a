#include "core/bounds.hpp"

#include <cmath>

#include "core/density.hpp"
#include "core/errors.hpp"
#include "core/scalar.hpp"

namespace kacz {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kKacC1 = 0.6257358072;
}  // namespace

double sqrt_bound(std::uint64_t k) {
  if (k < 1) throw DomainError("sqrt bound needs k >= 1");
  return (2.0 / kPi) * std::sqrt(static_cast<double>(k - 1));
}

double refined_sqrt_bound(std::uint64_t k) {
  if (k < 2) throw DomainError("refined sqrt bound needs k >= 2");
  return 0.25 + (2.0 / kPi) * (std::sqrt(static_cast<double>(k - 1)) - 1.0);
}

double bet_bound(std::uint64_t k) {
  if (k < 2) throw DomainError("sqrt-log bound needs k >= 2");
  const double kd = static_cast<double>(k);
  return std::sqrt(kd) * std::log(kd) / kPi;
}

double tail_bound(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon <= 1.0))
    throw DomainError("epsilon must lie in (0, 1]");
  return (std::log(2.0 / epsilon) + 4.0 / std::sqrt(epsilon) - 4.0) / (2.0 * kPi);
}

double kac_dense_asymptotic(std::uint64_t n) {
  if (n < 2) throw DomainError("dense asymptotic needs n >= 2");
  const double nd = static_cast<double>(n);
  return (2.0 / kPi) * std::log(nd) + kKacC1 + 2.0 / (nd * kPi);
}

double increment_bound(std::uint64_t k) {
  if (k < 1) throw DomainError("increment bound needs k >= 1");
  return std::atan(1.0 / std::sqrt(static_cast<double>(k))) / kPi;
}

double sum_bound(double z1, double z2) {
  if (z1 < 0.0 || z2 < 0.0) throw DomainError("zero counts cannot be negative");
  return z1 + z2;
}

double dense_bound_recursive(std::uint64_t n) {
  if (n < 1) throw DomainError("dense recursion needs n >= 1");
  if (n == 1) return 0.25;                              // pair {0, 1}
  if (n % 2 == 1) return dense_bound_recursive(n / 2) + 0.25;  // {0..a} + {0, a+1}
  return dense_bound_recursive(n - 1) + 0.5;            // union with top monomial
}

UnionBoundReport union_bound(const SupportSet& s1_in, const SupportSet& s2_in,
                             double z1_in, double z2_in) {
  if (z1_in < 0.0 || z2_in < 0.0)
    throw DomainError("zero counts cannot be negative");

  // Orient so the ratio increases at 0: the lowest-order term of
  // g2 g1' - g1 g2' has coefficient 2 (min(S1) - min(S2)).
  const bool swap = s1_in.min() < s2_in.min();
  const SupportSet& s1 = swap ? s2_in : s1_in;
  const SupportSet& s2 = swap ? s1_in : s2_in;
  const double z1 = swap ? z2_in : z1_in;
  const double z2 = swap ? z1_in : z2_in;

  const CriticalPointList cps = critical_points_odd(s1, s2);
  const std::size_t m = cps.points.size();

  const DensityEvaluator<double> e1(s1), e2(s2);
  auto gamma_at = [&](double t) {
    const auto g1 = e1.log_g(t);
    const auto g2 = e2.log_g(t);
    return std::exp((g1.log_magnitude - g2.log_magnitude) / 2.0);
  };

  // gamma at the panel ends c_0 = 0, c_1..c_m, c_{m+1} = 1.
  std::vector<double> gamma(m + 2);
  gamma[0] = 0.0;  // min(S1) > min(S2) makes the ratio vanish at 0
  for (std::size_t i = 0; i < m; ++i)
    gamma[i + 1] = gamma_at(cps.points[i].midpoint());
  gamma[m + 1] = std::sqrt(static_cast<double>(s1.size()) /
                           static_cast<double>(s2.size()));

  double r_total = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    double t_i;
    if (i % 2 == 0) {
      t_i = std::atan(gamma[i + 1]) - std::atan(gamma[i]);
    } else {
      const double inv_hi = gamma[i + 1] == 0.0 ? kPi / 2 : std::atan(1.0 / gamma[i + 1]);
      const double inv_lo = gamma[i] == 0.0 ? kPi / 2 : std::atan(1.0 / gamma[i]);
      t_i = inv_hi - inv_lo;
    }
    // Panels are monotone by construction, so each increment is
    // nonnegative up to rounding; anything visibly negative means the
    // critical-point list is inconsistent.
    if (t_i < -1e-9)
      throw Error("arctan partition produced a negative panel increment");
    if (t_i < 0.0) t_i = 0.0;
    r_total += t_i;
  }

  UnionBoundReport report;
  report.fine_value = z1 + z2 + r_total / kPi;
  report.coarse_value = z1 + z2 + (static_cast<double>(m) + 1.0) / 2.0;
  report.critical_point_count = m;
  report.critical_points.reserve(m);
  for (const auto& cp : cps.points) report.critical_points.push_back(cp.midpoint());
  report.swapped = swap;
  return report;
}

}  // namespace kacz
