#include "core/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/sturm.hpp"

namespace kacz {

std::vector<double> sample_polynomial(const SupportSet& s, std::uint64_t seed,
                                      std::uint64_t trial_index) {
  TrialStream stream(seed, trial_index);
  std::vector<double> coeffs(s.size());
  for (auto& c : coeffs) c = stream.next_normal();
  return coeffs;
}

namespace {

// Endpoint evaluation is exact, so a zero value is detected reliably; the
// nudge below moves the endpoint into the interval by 2^-60 (and shrinking)
// until the polynomial is nonzero there.
BigRat nudge_until_nonzero(const SturmChain& chain, const std::vector<BigInt>& poly,
                           BigRat x, int direction) {
  (void)chain;
  auto value_at = [&poly](const BigRat& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    BigInt v = 0;
    BigInt npow = 1;
    std::vector<BigInt> dpow(poly.size());
    dpow[poly.size() - 1] = 1;
    for (std::size_t j = poly.size() - 1; j-- > 0;)
      dpow[j] = dpow[j + 1] * den;
    for (std::size_t j = 0; j < poly.size(); ++j) {
      v += poly[j] * npow * dpow[j];
      npow *= num;
    }
    return v;
  };
  int bits = 60;
  while (value_at(x) == 0) {
    x += BigRat(BigInt(direction), BigInt(1) << bits);
    bits += 7;
    if (bits > 500) throw Error("could not displace an endpoint off a root");
  }
  return x;
}

std::vector<BigInt> dense_integer_poly(std::span<const double> coeffs,
                                       const SupportSet& s) {
  if (coeffs.size() != s.size())
    throw DomainError("coefficient count does not match the support size");
  // Exact dyadic representation: scale all coefficients by the largest
  // power of two among the denominators.
  std::vector<BigRat> exact;
  exact.reserve(coeffs.size());
  bool all_zero = true;
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw DomainError("coefficients must be finite");
    if (c != 0.0) all_zero = false;
    exact.emplace_back(c);
  }
  if (all_zero) throw DomainError("zero polynomial has no root count");
  BigInt common_den = 1;
  for (const auto& q : exact)
    common_den = boost::multiprecision::lcm(
        common_den, boost::multiprecision::denominator(q));

  // Drop the lowest present exponent: x^m factors out and contributes no
  // roots inside (0, 1).
  std::uint64_t min_exp = 0;
  bool have_min = false;
  const auto& exps = s.exponents();
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (coeffs[i] == 0.0) continue;
    if (!have_min) {
      min_exp = exps[i];
      have_min = true;
    }
  }
  std::vector<BigInt> dense;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (coeffs[i] == 0.0) continue;
    const std::uint64_t deg = exps[i] - min_exp;
    if (dense.size() <= deg) dense.resize(deg + 1);
    dense[deg] = boost::multiprecision::numerator(exact[i]) *
                 (common_den / boost::multiprecision::denominator(exact[i]));
  }
  return dense;
}

}  // namespace

int count_real_roots_interval(std::span<const double> coeffs, const SupportSet& s,
                              const OpenInterval& interval) {
  std::vector<BigInt> dense = dense_integer_poly(coeffs, s);
  if (dense.size() == 1) return 0;  // constant after factoring x^m
  SturmChain chain(dense);

  BigRat lo(interval.lo), hi(interval.hi);
  lo = nudge_until_nonzero(chain, dense, lo, +1);
  hi = nudge_until_nonzero(chain, dense, hi, -1);
  if (!(lo < hi)) return 0;
  return chain.count_roots(lo, hi);
}

int count_roots_grid(std::span<const double> coeffs, const SupportSet& s,
                     const OpenInterval& interval) {
  if (coeffs.size() != s.size())
    throw DomainError("coefficient count does not match the support size");
  const auto& exps = s.exponents();

  // Signed evaluation with a crude error bound; samples too close to zero
  // are treated as sign-unknown so rounding noise cannot fake a crossing.
  auto eval_sign = [&](double t) -> int {
    const double lt = std::log(t);
    double sum = 0.0, sum_abs = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const double term =
          coeffs[i] * std::exp(static_cast<double>(exps[i]) * lt);
      sum += term;
      sum_abs += std::fabs(term);
    }
    if (std::fabs(sum) <= 64.0 * 2.22e-16 * sum_abs * double(coeffs.size()))
      return 0;
    return sum > 0.0 ? 1 : -1;
  };

  const std::size_t n = 4096 * s.size();
  const double delta_max = 1.0 - interval.lo;
  double delta_min = 1.0 - interval.hi;
  const double max_exp = static_cast<double>(s.max());
  if (max_exp >= 1.0) delta_min = std::max(delta_min, 1.0 / (4.0 * max_exp));
  if (delta_min <= 0.0) delta_min = delta_max * 1e-12;
  if (delta_min >= delta_max) delta_min = delta_max / 2.0;
  const double ratio = std::pow(delta_min / delta_max,
                                1.0 / static_cast<double>(n - 1));

  int crossings = 0;
  int prev_sign = 0;
  double prev_t = 0.0;
  double delta = delta_max;
  for (std::size_t j = 0; j < n; ++j, delta *= ratio) {
    const double t = 1.0 - delta;
    if (!(t > interval.lo && t < interval.hi)) continue;
    const int sgn = eval_sign(t);
    if (sgn == 0) continue;
    if (prev_sign != 0 && sgn != prev_sign) {
      // Confirm the bracket by bisection before counting it.
      double a = prev_t, b = t;
      int sa = prev_sign;
      for (int step = 0; step < 40; ++step) {
        const double m = 0.5 * (a + b);
        const int sm = eval_sign(m);
        if (sm == 0) break;
        if (sm == sa)
          a = m;
        else
          b = m;
      }
      ++crossings;
    }
    prev_sign = sgn;
    prev_t = t;
  }
  return crossings;
}

MCReport estimate_expected_zeros(const SupportSet& s, const TrialConfig& config) {
  if (config.trials < 1) throw DomainError("at least one trial is required");
  if (config.method == CountMethod::ExactSturm && s.max() > config.degree_cap)
    throw UnsupportedScaleError(
        "degree " + std::to_string(s.max()) + " exceeds the exact-count cap " +
        std::to_string(config.degree_cap) + "; use the grid method");

  MCReport report;
  double sum = 0.0;
  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    const std::vector<double> coeffs = sample_polynomial(s, config.seed, trial);
    int count = 0;
    if (config.method == CountMethod::ExactSturm)
      count = count_real_roots_interval(coeffs, s, config.interval);
    else
      count = count_roots_grid(coeffs, s, config.interval);
    sum += static_cast<double>(count);
    ++report.histogram[static_cast<std::uint32_t>(count)];
  }
  report.trials_run = config.trials;
  report.mean = sum / static_cast<double>(config.trials);

  double ss = 0.0;
  for (const auto& [count, freq] : report.histogram) {
    const double d = static_cast<double>(count) - report.mean;
    ss += d * d * static_cast<double>(freq);
  }
  report.sample_variance =
      config.trials > 1 ? ss / static_cast<double>(config.trials - 1) : 0.0;
  report.ci95_halfwidth =
      1.96 * std::sqrt(report.sample_variance / static_cast<double>(config.trials));
  return report;
}

}  // namespace kacz
