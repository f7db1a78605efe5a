#include "core/lowerbound.hpp"

#include <cmath>

#include "core/density.hpp"
#include "core/errors.hpp"
#include "core/quadrature.hpp"
#include "core/scalar.hpp"

namespace kacz {

StepReport step_report(int k, unsigned precision_digits) {
  if (k < 1 || k > 5) throw DomainError("step reports cover 1 <= k <= 5");
  const unsigned digits =
      precision_digits ? precision_digits : kDefaultPrecisionDigits;

  const SupportSet family = lower_bound_family(k);
  // Split off the top monomial: S is the base, a the appended scale.
  std::vector<std::uint64_t> base(family.exponents().begin(),
                                  family.exponents().end() - 1);
  const SupportSet s(std::move(base));
  const std::uint64_t a = family.max();
  const SupportSet top({a});

  StepReport report;
  report.k = k;
  report.scale_exponent = static_cast<double>(a);

  const double layer_lo = 1.0 - 1.0 / (2.0 * static_cast<double>(a));
  report.boundary_mass =
      arctan_mass(top, s, layer_lo, 1.0, digits) / (2.0 * pi_value<double>());
  report.tail_leak_bound = static_cast<double>(s.size()) *
                           static_cast<double>(s.max()) /
                           (pi_value<double>() * 2.0 * static_cast<double>(a));
  {
    QuadratureOptions opts;
    opts.precision_digits = k == 5 ? digits : 0;
    report.tail_leak =
        expected_zeros(s, OpenInterval(layer_lo, 1.0), opts).value;
  }
  {
    PrecisionGuard guard(digits);
    const BigFloat t = BigFloat(1) - BigFloat(1) / (2 * BigFloat(static_cast<double>(a)));
    report.g_at_boundary = to_double(eval_g_extended(s, t, digits).value());
  }
  report.step_gain = report.boundary_mass - report.tail_leak;
  return report;
}

GrowthTable verify_growth(int k_max, double abs_tol, unsigned precision_digits) {
  if (k_max < 2 || k_max > 5)
    throw DomainError("growth verification covers 2 <= k_max <= 5");
  const unsigned digits =
      precision_digits ? precision_digits : kDefaultPrecisionDigits;

  GrowthTable table;
  table.strictly_increasing = true;
  double prev = -1.0;
  for (int k = 1; k <= k_max; ++k) {
    const SupportSet family = lower_bound_family(k);
    QuadratureOptions opts;
    opts.abs_tol = abs_tol;
    // The top exponent 2^32 at k = 5 puts the last boundary layer beyond
    // what double-precision panels can resolve.
    opts.precision_digits = k == 5 ? digits : 0;
    const QuadratureResult q = expected_zeros(family, OpenInterval(0.0, 1.0), opts);

    GrowthRow row;
    row.k = k;
    row.z = q.value;
    row.abs_error = q.abs_error_estimate;
    row.z_over_sqrt_k = q.value / std::sqrt(static_cast<double>(k));
    if (row.z <= prev) table.strictly_increasing = false;
    prev = row.z;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace kacz
