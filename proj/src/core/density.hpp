// Evaluation of g_S(t) = sum t^{2e} and of the zero density
// rho_S(t) = sqrt(I(g_S(t))) / (2 pi) in three equivalent formulations:
//
//   NormForm          sqrt(g * ||v'||^2 - (v.v')^2) / (pi * g)
//   LogDerivForm      I(g) = (g'/g)' + g'/(t g), rho = sqrt(I)/(2 pi)
//   SumOfSquaresForm  I(g) = 4/g^2 * sum_{i<j} ((e_i - e_j) t^{e_i+e_j-1})^2
//
// All sums run in the log domain with max-shifted accumulation so that
// exponents up to 2^32 and t within 1e-10 of 1 stay finite.  The sum-of-
// squares form is the authoritative one: it is a ratio of nonnegative
// sums and never cancels, unlike the other two which subtract (g'/g)^2.
#pragma once

#include <cstdint>
#include <vector>

#include "core/errors.hpp"
#include "core/scalar.hpp"
#include "core/support_set.hpp"

namespace kacz {

enum class DensityForm { NormForm, LogDerivForm, SumOfSquaresForm };

// A nonnegative quantity held as its natural log, with an explicit zero.
template <class Real>
struct LogValue {
  Real log_magnitude{};
  bool is_zero = false;

  static LogValue zero() { return LogValue{Real(0), true}; }
  static LogValue from_log(Real lg) { return LogValue{std::move(lg), false}; }
  Real value() const {
    using std::exp;
    return is_zero ? Real(0) : exp(log_magnitude);
  }
};

// log(exp(a) + exp(b))
template <class Real>
LogValue<Real> log_add(const LogValue<Real>& a, const LogValue<Real>& b) {
  using std::log1p;
  using std::exp;
  if (a.is_zero) return b;
  if (b.is_zero) return a;
  const Real& hi = a.log_magnitude >= b.log_magnitude ? a.log_magnitude : b.log_magnitude;
  const Real& lo = a.log_magnitude >= b.log_magnitude ? b.log_magnitude : a.log_magnitude;
  return LogValue<Real>::from_log(hi + log1p(exp(lo - hi)));
}

// log(exp(a) - exp(b)); clamps to zero if rounding drives the difference
// nonpositive.
template <class Real>
LogValue<Real> log_sub(const LogValue<Real>& a, const LogValue<Real>& b) {
  using std::log1p;
  using std::exp;
  if (b.is_zero) return a;
  if (a.is_zero || a.log_magnitude <= b.log_magnitude) return LogValue<Real>::zero();
  const Real d = exp(b.log_magnitude - a.log_magnitude);
  if (d >= Real(1)) return LogValue<Real>::zero();
  return LogValue<Real>::from_log(a.log_magnitude + log1p(-d));
}

// sum_i exp(log_coef_i + degree_i * log t), evaluated by max shift.
template <class Real>
struct LogPolySum {
  std::vector<Real> log_coef;
  std::vector<Real> degree;

  bool empty() const { return log_coef.empty(); }

  LogValue<Real> eval_log(const Real& log_t) const {
    using std::exp;
    using std::log;
    const std::size_t n = log_coef.size();
    if (n == 0) return LogValue<Real>::zero();
    Real max_term = log_coef[0] + degree[0] * log_t;
    for (std::size_t i = 1; i < n; ++i) {
      Real term = log_coef[i] + degree[i] * log_t;
      if (term > max_term) max_term = term;
    }
    const Real cutoff = max_term - Real(log_sum_drop_threshold<Real>());
    Real sum(0);
    for (std::size_t i = 0; i < n; ++i) {
      Real term = log_coef[i] + degree[i] * log_t;
      if (term >= cutoff) sum += exp(term - max_term);
    }
    return LogValue<Real>::from_log(max_term + log(sum));
  }
};

template <class Real>
class DensityEvaluator {
public:
  explicit DensityEvaluator(const SupportSet& s);

  const SupportSet& support() const { return set_; }

  // log of g_S(t) for the original (un-normalized) set; t in (0, 1].
  LogValue<Real> log_g(const Real& t) const;

  // log of I(g_S(t)) via the sum-of-squares form; exact zero for singletons.
  // Shift-invariant, so evaluated on the normalized set.
  LogValue<Real> log_integrand(const Real& t) const;

  // rho_S(t) for t in (0, 1).
  Real density(const Real& t, DensityForm form) const;

private:
  void check_open01(const Real& t) const;

  SupportSet set_;
  LogPolySum<Real> g_terms_;        // t^{2e}, original set
  LogPolySum<Real> g_norm_terms_;   // t^{2e}, normalized set
  LogPolySum<Real> gp_terms_;       // g' = sum 2e t^{2e-1}, normalized
  LogPolySum<Real> gpp_terms_;      // g'' = sum 2e(2e-1) t^{2e-2}, normalized
  LogPolySum<Real> vp_terms_;       // ||v'||^2 = sum e^2 t^{2e-2}, normalized
  LogPolySum<Real> pair_terms_;     // sum-of-squares pairs, normalized
};

// g_S(t) as a log value; t in (0, 1].
LogValue<double> eval_g(const SupportSet& s, double t);
LogValue<BigFloat> eval_g_extended(const SupportSet& s, const BigFloat& t,
                                   unsigned precision_digits);

// rho_S(t) for t in (0, 1).
double eval_density(const SupportSet& s, double t, DensityForm form);

// (|S| + 1) * max(S) / pi, a pointwise upper bound for rho_S on (0, 1).
// Requires 0 in S.  The k + 1 factor follows the coarse pair-count bound
// #pairs <= (k + 1)^2 used with g >= 1; it is not tight.
double density_pointwise_cap(const SupportSet& s);

// The three summands of I(g_{S1 u S2}) at t: the g1- and g2-weighted
// integrands and the nonnegative cross term
//   W = (1/(g1 g2)) * ((g2 g1' - g1 g2') / (g1 + g2))^2.
struct UnionIntegrandParts {
  double weighted_i1;
  double weighted_i2;
  double cross;
};
UnionIntegrandParts decompose_union_integrand(const SupportSet& s1,
                                              const SupportSet& s2, double t);

// Evaluates sqrt(W) for a disjoint pair; used for the arctan identity
// cross-checks and the boundary-layer mass.
template <class Real>
class CrossTermEvaluator {
public:
  CrossTermEvaluator(const SupportSet& s1, const SupportSet& s2);

  // sqrt(W(t)), t in (0, 1).
  Real sqrt_cross(const Real& t) const;

  // All three parts of I(g_{S1 u S2})(t).
  void parts(const Real& t, Real& w1, Real& w2, Real& cross) const;

private:
  DensityEvaluator<Real> e1_, e2_;
  LogPolySum<Real> h_pos_, h_neg_;  // g2 g1' - g1 g2', split by coefficient sign
};

extern template class DensityEvaluator<double>;
extern template class DensityEvaluator<BigFloat>;
extern template class CrossTermEvaluator<double>;
extern template class CrossTermEvaluator<BigFloat>;

}  // namespace kacz
