#include "core/density.hpp"

#include <cmath>

namespace kacz {

namespace {

void ensure_disjoint(const SupportSet& s1, const SupportSet& s2) {
  for (auto e : s1.exponents())
    if (s2.contains(e))
      throw DomainError("sets are not disjoint: both contain " + std::to_string(e));
}

template <class Real>
Real log_of_u64(std::uint64_t v) {
  using std::log;
  return log(Real(static_cast<double>(v)));
}

}  // namespace

template <class Real>
DensityEvaluator<Real>::DensityEvaluator(const SupportSet& s) : set_(s) {
  const SupportSet norm = normalize(s);

  for (auto e : set_.exponents()) {
    g_terms_.log_coef.push_back(Real(0));
    g_terms_.degree.push_back(Real(2.0 * static_cast<double>(e)));
  }

  for (auto e : norm.exponents()) {
    const double ed = static_cast<double>(e);
    g_norm_terms_.log_coef.push_back(Real(0));
    g_norm_terms_.degree.push_back(Real(2.0 * ed));
    if (e == 0) continue;
    // 2e and 2e - 1 are below 2^53, so the log arguments are exact.
    gp_terms_.log_coef.push_back(log_of_u64<Real>(2 * e));
    gp_terms_.degree.push_back(Real(2.0 * ed - 1.0));
    gpp_terms_.log_coef.push_back(log_of_u64<Real>(2 * e) + log_of_u64<Real>(2 * e - 1));
    gpp_terms_.degree.push_back(Real(2.0 * ed - 2.0));
    vp_terms_.log_coef.push_back(2 * log_of_u64<Real>(e));
    vp_terms_.degree.push_back(Real(2.0 * ed - 2.0));
  }

  const auto& exps = norm.exponents();
  for (std::size_t i = 0; i < exps.size(); ++i) {
    for (std::size_t j = i + 1; j < exps.size(); ++j) {
      const std::uint64_t diff = exps[j] - exps[i];
      pair_terms_.log_coef.push_back(2 * log_of_u64<Real>(diff));
      pair_terms_.degree.push_back(
          Real(2.0 * (static_cast<double>(exps[i]) + static_cast<double>(exps[j]) - 1.0)));
    }
  }
}

template <class Real>
void DensityEvaluator<Real>::check_open01(const Real& t) const {
  if (!(t > Real(0)) || !(t < Real(1)))
    throw DomainError("density is defined on the open interval (0, 1)");
}

template <class Real>
LogValue<Real> DensityEvaluator<Real>::log_g(const Real& t) const {
  if (!(t > Real(0)) || !(t <= Real(1)))
    throw DomainError("g_S is evaluated on (0, 1]");
  return g_terms_.eval_log(stable_log(t));
}

template <class Real>
LogValue<Real> DensityEvaluator<Real>::log_integrand(const Real& t) const {
  using std::log;
  check_open01(t);
  if (set_.size() == 1) return LogValue<Real>::zero();
  const Real lt = stable_log(t);
  const LogValue<Real> num = pair_terms_.eval_log(lt);
  const LogValue<Real> g = g_norm_terms_.eval_log(lt);
  if (num.is_zero) return LogValue<Real>::zero();
  return LogValue<Real>::from_log(log(Real(4)) + num.log_magnitude -
                                  2 * g.log_magnitude);
}

template <class Real>
Real DensityEvaluator<Real>::density(const Real& t, DensityForm form) const {
  using std::exp;
  using std::log;
  using std::sqrt;
  check_open01(t);
  if (set_.size() == 1) return Real(0);

  const Real two_pi = 2 * pi_value<Real>();
  const Real lt = stable_log(t);
  const LogValue<Real> g = g_norm_terms_.eval_log(lt);

  switch (form) {
    case DensityForm::SumOfSquaresForm: {
      const LogValue<Real> num = pair_terms_.eval_log(lt);
      if (num.is_zero) return Real(0);
      const Real log_i = log(Real(4)) + num.log_magnitude - 2 * g.log_magnitude;
      return exp(log_i / 2) / two_pi;
    }
    case DensityForm::LogDerivForm: {
      // I = g''/g - (g'/g)^2 + g'/(t g), factored as
      // (g''/g) * (1 - g'^2/(g g'') + g/(t g'')) so the result survives in
      // the log domain even where I itself would underflow as a double.
      const LogValue<Real> gp = gp_terms_.eval_log(lt);
      const LogValue<Real> gpp = gpp_terms_.eval_log(lt);
      const Real u = exp(2 * gp.log_magnitude - gpp.log_magnitude -
                         g.log_magnitude);
      const Real v = exp(gp.log_magnitude - gpp.log_magnitude) / t;
      const Real rest = Real(1) - u + v;
      if (rest <= Real(0)) return Real(0);
      const Real log_i = gpp.log_magnitude - g.log_magnitude + log(rest);
      return exp(log_i / 2) / two_pi;
    }
    case DensityForm::NormForm: {
      const LogValue<Real> p = vp_terms_.eval_log(lt);
      const LogValue<Real> gp = gp_terms_.eval_log(lt);
      // v.v' = g'/2
      const LogValue<Real> q2 = LogValue<Real>::from_log(
          2 * (gp.log_magnitude - log(Real(2))));
      const LogValue<Real> a = log_sub(
          LogValue<Real>::from_log(g.log_magnitude + p.log_magnitude), q2);
      if (a.is_zero) return Real(0);
      return exp(a.log_magnitude / 2 - g.log_magnitude) / pi_value<Real>();
    }
  }
  throw DomainError("unknown density form");
}

template <class Real>
CrossTermEvaluator<Real>::CrossTermEvaluator(const SupportSet& s1,
                                             const SupportSet& s2)
    : e1_(s1), e2_(s2) {
  ensure_disjoint(s1, s2);
  // g2 g1' - g1 g2' = sum over (e, f) in S1 x S2 of 2 (e - f) t^{2(e+f)-1}
  for (auto e : s1.exponents()) {
    for (auto f : s2.exponents()) {
      const Real deg(2.0 * (static_cast<double>(e) + static_cast<double>(f)) - 1.0);
      if (e > f) {
        h_pos_.log_coef.push_back(log_of_u64<Real>(2 * (e - f)));
        h_pos_.degree.push_back(deg);
      } else {
        h_neg_.log_coef.push_back(log_of_u64<Real>(2 * (f - e)));
        h_neg_.degree.push_back(deg);
      }
    }
  }
}

template <class Real>
void CrossTermEvaluator<Real>::parts(const Real& t, Real& w1, Real& w2,
                                     Real& cross) const {
  using std::exp;
  const Real lt = stable_log(t);
  const LogValue<Real> g1 = e1_.log_g(t);
  const LogValue<Real> g2 = e2_.log_g(t);
  const LogValue<Real> gsum = log_add(g1, g2);
  const LogValue<Real> i1 = e1_.log_integrand(t);
  const LogValue<Real> i2 = e2_.log_integrand(t);

  w1 = i1.is_zero ? Real(0)
                  : exp(g1.log_magnitude - gsum.log_magnitude + i1.log_magnitude);
  w2 = i2.is_zero ? Real(0)
                  : exp(g2.log_magnitude - gsum.log_magnitude + i2.log_magnitude);

  const LogValue<Real> pos = h_pos_.eval_log(lt);
  const LogValue<Real> neg = h_neg_.eval_log(lt);
  const LogValue<Real> habs =
      (pos.is_zero || (!neg.is_zero && neg.log_magnitude > pos.log_magnitude))
          ? log_sub(neg, pos)
          : log_sub(pos, neg);
  cross = habs.is_zero
              ? Real(0)
              : exp(2 * habs.log_magnitude - g1.log_magnitude -
                    g2.log_magnitude - 2 * gsum.log_magnitude);
}

template <class Real>
Real CrossTermEvaluator<Real>::sqrt_cross(const Real& t) const {
  using std::exp;
  const Real lt = stable_log(t);
  const LogValue<Real> g1 = e1_.log_g(t);
  const LogValue<Real> g2 = e2_.log_g(t);
  const LogValue<Real> gsum = log_add(g1, g2);
  const LogValue<Real> pos = h_pos_.eval_log(lt);
  const LogValue<Real> neg = h_neg_.eval_log(lt);
  const LogValue<Real> habs =
      (pos.is_zero || (!neg.is_zero && neg.log_magnitude > pos.log_magnitude))
          ? log_sub(neg, pos)
          : log_sub(pos, neg);
  if (habs.is_zero) return Real(0);
  return exp(habs.log_magnitude -
             (g1.log_magnitude + g2.log_magnitude) / 2 - gsum.log_magnitude);
}

LogValue<double> eval_g(const SupportSet& s, double t) {
  return DensityEvaluator<double>(s).log_g(t);
}

LogValue<BigFloat> eval_g_extended(const SupportSet& s, const BigFloat& t,
                                   unsigned precision_digits) {
  PrecisionGuard guard(precision_digits);
  return DensityEvaluator<BigFloat>(s).log_g(t);
}

double eval_density(const SupportSet& s, double t, DensityForm form) {
  return DensityEvaluator<double>(s).density(t, form);
}

double density_pointwise_cap(const SupportSet& s) {
  if (!s.normalized())
    throw DomainError("density cap requires 0 in S");
  const double k = static_cast<double>(s.size());
  return (k + 1.0) * static_cast<double>(s.max()) / pi_value<double>();
}

UnionIntegrandParts decompose_union_integrand(const SupportSet& s1,
                                              const SupportSet& s2, double t) {
  if (!(t > 0.0) || !(t < 1.0))
    throw DomainError("union integrand is defined on the open interval (0, 1)");
  CrossTermEvaluator<double> eval(s1, s2);
  UnionIntegrandParts out{};
  eval.parts(t, out.weighted_i1, out.weighted_i2, out.cross);
  return out;
}

template class DensityEvaluator<double>;
template class DensityEvaluator<BigFloat>;
template class CrossTermEvaluator<double>;
template class CrossTermEvaluator<BigFloat>;

}  // namespace kacz
