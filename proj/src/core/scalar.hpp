// Floating-point scalar support.  Numeric kernels are templated on the
// scalar type: plain double by default, MPFR-backed BigFloat when an
// extended-precision run is requested (boundary layers of width ~2^-33
// need headroom beyond double for the strict per-panel tolerance rule).
#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>

namespace kacz {

using BigFloat = boost::multiprecision::mpfr_float;  // runtime-set precision

inline constexpr unsigned kDefaultPrecisionDigits = 40;

// Scoped override of the working decimal precision for BigFloat.
class PrecisionGuard {
public:
  explicit PrecisionGuard(unsigned digits)
      : saved_(BigFloat::default_precision()) {
    BigFloat::default_precision(digits ? digits : kDefaultPrecisionDigits);
  }
  ~PrecisionGuard() { BigFloat::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
  unsigned saved_;
};

inline double to_double(double x) { return x; }
inline double to_double(const BigFloat& x) { return x.convert_to<double>(); }

// log t with full relative accuracy near t = 1: for t > 0.9 the delta
// 1 - t is exact (Sterbenz) and log1p(-delta) avoids the cancellation a
// direct log(t) suffers when t = 1 - 1/(2e) with e as large as 2^32.
template <class Real>
Real stable_log(const Real& t) {
  using std::log;
  using std::log1p;
  if (t > Real(0.9)) return log1p(-(Real(1) - t));
  return log(t);
}

// Terms smaller than exp(-threshold) relative to the max are dropped from
// log-sum accumulations; the slack keeps the omission below one ulp of the
// working precision even for ~10^6-term sums.
template <class Real>
double log_sum_drop_threshold();

template <>
inline double log_sum_drop_threshold<double>() { return 55.0; }

template <>
inline double log_sum_drop_threshold<BigFloat>() {
  return 2.3026 * BigFloat::default_precision() + 35.0;
}

template <class Real>
Real pi_value();

template <>
inline double pi_value<double>() { return 3.14159265358979323846264338327950288; }

template <>
inline BigFloat pi_value<BigFloat>() {
  using std::atan;
  return 4 * atan(BigFloat(1));
}

}  // namespace kacz
