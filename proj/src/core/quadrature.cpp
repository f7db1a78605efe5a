#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "core/density.hpp"
#include "core/gauss_kronrod.hpp"
#include "core/scalar.hpp"

namespace kacz {

OpenInterval::OpenInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo >= 0.0) || !(lo < hi) || !(hi <= 1.0))
    throw DomainError("interval must satisfy 0 <= lo < hi <= 1");
}

double resolve_abs_tol(const SupportSet& s, const QuadratureOptions& opts) {
  if (opts.abs_tol > 0.0) return opts.abs_tol;
  const bool desk_scale = s.size() <= 64 && s.max() <= (std::uint64_t{1} << 20);
  return desk_scale ? 1e-8 : 1e-6;
}

namespace {

template <class Real>
Real working_epsilon();

template <>
double working_epsilon<double>() { return 2.220446049250313e-16; }

template <>
BigFloat working_epsilon<BigFloat>() {
  using std::pow;
  const long digits = static_cast<long>(BigFloat::default_precision());
  return pow(BigFloat(10), 1 - digits);
}

template <class Real>
struct PanelRecord {
  Real lo;
  Real value;
  Real err;
  bool converged;
};

template <class Real>
struct AdaptiveOutcome {
  Real value{};
  Real err{};
  std::uint64_t evaluations = 0;
  bool converged = true;
};

// Bisection-based driver around the nested 15/7 rule.  A panel is accepted
// when |K15 - G7| <= abs_tol * width, so the accepted error totals at most
// abs_tol * |interval|.  Panels that cannot be split further (width at the
// precision floor, or evaluation budget exhausted) are kept with their
// error attached and flag the outcome as unconverged.
template <class Real, class F>
AdaptiveOutcome<Real> integrate_adaptive(const F& f, const Real& lo,
                                         const Real& hi,
                                         const std::vector<Real>& inner_breaks,
                                         double abs_tol,
                                         std::uint64_t max_evaluations) {
  using std::abs;
  const GaussKronrod15<Real> rule;
  const Real tol(abs_tol);
  const Real width_floor = 1024 * working_epsilon<Real>();

  struct Panel {
    Real lo, hi;
  };
  std::vector<Panel> stack;
  {
    Real prev = lo;
    for (const Real& b : inner_breaks) {
      stack.push_back({prev, b});
      prev = b;
    }
    stack.push_back({prev, hi});
    std::reverse(stack.begin(), stack.end());
  }

  std::vector<PanelRecord<Real>> done;
  std::uint64_t evals = 0;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    if (evals + 15 > max_evaluations) {
      done.push_back({p.lo, Real(0), Real(0), false});
      continue;
    }
    Real k15, g7;
    rule.apply(f, p.lo, p.hi, k15, g7);
    evals += 15;
    const Real width = p.hi - p.lo;
    const Real err = abs(k15 - g7);
    const bool accepted = err <= tol * width;
    const bool splittable = width > width_floor * (abs(p.lo) + abs(p.hi) + Real(1)) &&
                            evals + 30 <= max_evaluations;
    if (accepted || !splittable) {
      done.push_back({p.lo, k15, err, accepted});
    } else {
      const Real mid = (p.lo + p.hi) / 2;
      stack.push_back({mid, p.hi});
      stack.push_back({p.lo, mid});
    }
  }

  // Deterministic totals: accumulate in left-to-right panel order.
  std::sort(done.begin(), done.end(),
            [](const PanelRecord<Real>& a, const PanelRecord<Real>& b) {
              return a.lo < b.lo;
            });
  AdaptiveOutcome<Real> out;
  out.evaluations = evals;
  for (const auto& rec : done) {
    out.value += rec.value;
    out.err += rec.err;
    out.converged = out.converged && rec.converged;
  }
  return out;
}

// One split per monomial scale at 1 - 1/(2e), plus a dyadic ladder
// 1 - 2^-j reaching below the finest scale.  The ladder keeps consecutive
// panels within a factor two of each other, so a boundary layer is always
// visible from the nodes of the panel to its left; without it a single
// huge exponent hides its entire mass between the last quadrature node
// and the panel edge and the error estimate never notices.
template <class Real>
std::vector<Real> breakpoints_inside_impl(const SupportSet& s, const Real& lo,
                                          const Real& hi) {
  std::vector<Real> breaks;
  std::uint64_t max_exp = 0;
  for (auto e : s.exponents()) {
    if (e == 0) continue;
    max_exp = std::max(max_exp, e);
    const Real b = Real(1) - Real(1) / (2 * Real(static_cast<double>(e)));
    if (b > lo && b < hi) breaks.push_back(b);
  }
  if (max_exp >= 1) {
    Real scale(0.5);
    for (int j = 1; j < 1100; ++j, scale /= 2) {
      const Real b = Real(1) - scale;
      if (b > lo && b < hi) breaks.push_back(b);
      if (scale < Real(1) / (8 * Real(static_cast<double>(max_exp)))) break;
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

std::vector<double> breakpoints_inside(const SupportSet& s, double lo, double hi) {
  return breakpoints_inside_impl<double>(s, lo, hi);
}

// Keeps quadrature nodes strictly inside (0, 1) even when a panel touches
// the endpoints at the working precision.
template <class Real>
Real just_below_one() {
  Real candidate = Real(1) - working_epsilon<Real>() / 1024;
  if (!(candidate < Real(1)))  // rounded back to 1 at this precision
    candidate = Real(1) - working_epsilon<Real>();
  return candidate;
}

template <class Real>
class ClampedDensity {
public:
  explicit ClampedDensity(const SupportSet& s)
      : eval_(s), floor_(working_epsilon<Real>() / 1024),
        ceil_(just_below_one<Real>()) {}

  Real operator()(const Real& t) const {
    Real x = t;
    if (x <= floor_) x = floor_;
    if (x >= ceil_) x = ceil_;
    return eval_.density(x, DensityForm::SumOfSquaresForm);
  }

private:
  DensityEvaluator<Real> eval_;
  Real floor_, ceil_;
};

template <class Real>
class ClampedSqrtCross {
public:
  ClampedSqrtCross(const SupportSet& s1, const SupportSet& s2)
      : eval_(s1, s2), floor_(working_epsilon<Real>() / 1024),
        ceil_(just_below_one<Real>()) {}

  Real operator()(const Real& t) const {
    Real x = t;
    if (x <= floor_) x = floor_;
    if (x >= ceil_) x = ceil_;
    return eval_.sqrt_cross(x) / (2 * pi_value<Real>());
  }

private:
  CrossTermEvaluator<Real> eval_;
  Real floor_, ceil_;
};

constexpr std::uint64_t kDoubleExponentCap = std::uint64_t{1} << 44;

template <class MakeIntegrand>
QuadratureResult run_quadrature(const SupportSet& breakpoint_set,
                                std::uint64_t max_exponent,
                                const OpenInterval& interval, double abs_tol,
                                const QuadratureOptions& opts,
                                const MakeIntegrand& make_integrand) {
  QuadratureResult result;
  result.breakpoints = breakpoints_inside(breakpoint_set, interval.lo, interval.hi);

  if (opts.precision_digits == 0) {
    if (max_exponent > kDoubleExponentCap)
      throw UnsupportedScaleError(
          "exponents above 2^44 need precision_digits > 0: the boundary "
          "layer at 1 - 1/(2e) is not resolvable in double");
    auto f = make_integrand(double{});
    std::vector<double> breaks(result.breakpoints.begin(), result.breakpoints.end());
    auto out = integrate_adaptive<double>(f, interval.lo, interval.hi, breaks,
                                          abs_tol, opts.max_evaluations);
    result.value = out.value;
    result.abs_error_estimate = out.err;
    result.evaluations = out.evaluations;
    if (!out.converged)
      throw NumericalError("quadrature failed to reach the requested tolerance "
                           "within the evaluation budget",
                           result.value, result.abs_error_estimate);
  } else {
    PrecisionGuard guard(opts.precision_digits);
    auto f = make_integrand(BigFloat{});
    const BigFloat lo(interval.lo), hi(interval.hi);
    auto breaks = breakpoints_inside_impl<BigFloat>(breakpoint_set, lo, hi);
    auto out = integrate_adaptive<BigFloat>(f, lo, hi, breaks, abs_tol,
                                            opts.max_evaluations);
    result.value = to_double(out.value);
    result.abs_error_estimate = to_double(out.err);
    result.evaluations = out.evaluations;
    if (!out.converged)
      throw NumericalError("quadrature failed to reach the requested tolerance "
                           "within the evaluation budget",
                           result.value, result.abs_error_estimate);
  }
  return result;
}

}  // namespace

QuadratureResult expected_zeros(const SupportSet& s, const OpenInterval& interval,
                                const QuadratureOptions& opts) {
  const SupportSet sn = normalize(s);
  const double abs_tol = resolve_abs_tol(sn, opts);

  if (sn.size() == 1) {
    // Constant polynomial: the density vanishes identically.
    QuadratureResult result;
    result.breakpoints = {};
    return result;
  }

  return run_quadrature(
      sn, sn.max(), interval, abs_tol, opts, [&sn](auto tag) {
        using Real = decltype(tag);
        return ClampedDensity<Real>(sn);
      });
}

QuadratureResult expected_zeros_real(const SupportSet& s,
                                     const QuadratureOptions& opts) {
  const SupportSet sn = normalize(s);
  const OpenInterval unit(0.0, 1.0);
  QuadratureResult inner = expected_zeros(sn, unit, opts);
  QuadratureResult outer = expected_zeros(reflect(sn, sn.max()), unit, opts);

  QuadratureResult result;
  result.value = 2.0 * (inner.value + outer.value);
  result.abs_error_estimate =
      2.0 * (inner.abs_error_estimate + outer.abs_error_estimate);
  result.evaluations = inner.evaluations + outer.evaluations;
  result.breakpoints = inner.breakpoints;
  result.breakpoints.insert(result.breakpoints.end(), outer.breakpoints.begin(),
                            outer.breakpoints.end());
  std::sort(result.breakpoints.begin(), result.breakpoints.end());
  result.breakpoints.erase(
      std::unique(result.breakpoints.begin(), result.breakpoints.end()),
      result.breakpoints.end());
  return result;
}

QuadratureResult tail_mass(const SupportSet& s, double epsilon,
                           const QuadratureOptions& opts) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw DomainError("epsilon must lie in (0, 1)");
  return expected_zeros(s, OpenInterval(0.0, 1.0 - epsilon), opts);
}

namespace {

template <class Real>
double arctan_mass_impl(const SupportSet& s1, const SupportSet& s2, double alpha,
                        double beta) {
  using std::atan;
  using std::exp;
  using std::abs;
  const DensityEvaluator<Real> e1(s1), e2(s2);
  const Real half_pi = pi_value<Real>() / 2;

  auto atan_gamma = [&](double x) -> Real {
    if (x == 0.0) {
      // One-sided limit of sqrt(g1/g2) at 0: the smaller minimum wins.
      if (s1.min() > s2.min()) return Real(0);
      return half_pi;
    }
    const LogValue<Real> g1 = e1.log_g(Real(x));
    const LogValue<Real> g2 = e2.log_g(Real(x));
    return atan(exp((g1.log_magnitude - g2.log_magnitude) / 2));
  };

  const Real lo = atan_gamma(alpha);
  const Real hi = atan_gamma(beta);
  return to_double(2 * abs(hi - lo));
}

}  // namespace

double arctan_mass(const SupportSet& s1, const SupportSet& s2, double alpha,
                   double beta, unsigned precision_digits) {
  for (auto e : s1.exponents())
    if (s2.contains(e))
      throw DomainError("sets are not disjoint: both contain " + std::to_string(e));
  if (!(alpha >= 0.0) || !(alpha <= beta) || !(beta <= 1.0))
    throw DomainError("panel must satisfy 0 <= alpha <= beta <= 1");
  if (alpha == beta) return 0.0;
  if (s1.min() == s2.min())
    throw DomainError("disjoint sets cannot share their minimum");

  if (precision_digits == 0)
    return arctan_mass_impl<double>(s1, s2, alpha, beta);
  PrecisionGuard guard(precision_digits);
  return arctan_mass_impl<BigFloat>(s1, s2, alpha, beta);
}

QuadratureResult cross_term_mass(const SupportSet& s1, const SupportSet& s2,
                                 const OpenInterval& interval,
                                 const QuadratureOptions& opts) {
  const SupportSet merged = disjoint_union(s1, s2);
  const double abs_tol = resolve_abs_tol(merged, opts);
  return run_quadrature(
      merged, merged.max(), interval, abs_tol, opts, [&s1, &s2](auto tag) {
        using Real = decltype(tag);
        return ClampedSqrtCross<Real>(s1, s2);
      });
}

}  // namespace kacz
