// Implementation of the public C interface on top of the C++ core.  All
// exceptions are converted to status codes here; nothing may throw across
// the library boundary.
#include "kacz/kacz.h"

#include <cstring>
#include <string>

#include "core/bounds.hpp"
#include "core/critical_points.hpp"
#include "core/density.hpp"
#include "core/errors.hpp"
#include "core/lowerbound.hpp"
#include "core/montecarlo.hpp"
#include "core/quadrature.hpp"
#include "core/support_set.hpp"
#include "core/version.hpp"

struct kacz_set {
  kacz::SupportSet set;
};

struct kacz_mc_report {
  kacz::MCReport report;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> histogram_entries;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <class Fn>
kacz_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const kacz::ParseError& e) {
    set_error(e.what());
    return KACZ_ERR_ARGUMENT;
  } catch (const kacz::UnsupportedScaleError& e) {
    set_error(e.what());
    return KACZ_ERR_UNSUPPORTED_SCALE;
  } catch (const kacz::NumericalError& e) {
    set_error(e.what());
    return KACZ_ERR_NUMERICAL;
  } catch (const kacz::DomainError& e) {
    set_error(e.what());
    return KACZ_ERR_DOMAIN;
  } catch (const std::exception& e) {
    set_error(e.what());
    return KACZ_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return KACZ_ERR_INTERNAL;
  }
}

kacz_status require(bool ok, const char* message) {
  if (ok) return KACZ_OK;
  set_error(message);
  return KACZ_ERR_ARGUMENT;
}

kacz::QuadratureOptions to_core(const kacz_quad_options* opts) {
  kacz::QuadratureOptions core;
  if (opts) {
    if (opts->abs_tol > 0.0) core.abs_tol = opts->abs_tol;
    if (opts->max_evaluations > 0) core.max_evaluations = opts->max_evaluations;
    core.precision_digits = opts->precision_digits;
  }
  return core;
}

void fill(kacz_quad_result* out, const kacz::QuadratureResult& r) {
  out->value = r.value;
  out->abs_error_estimate = r.abs_error_estimate;
  out->evaluations = r.evaluations;
}

}  // namespace

extern "C" {

const char* kacz_version(void) { return kacz::kVersion; }

const char* kacz_last_error(void) { return g_last_error.c_str(); }

kacz_status kacz_set_parse(const char* text, kacz_set** out) {
  if (auto s = require(text && out, "null argument")) return s;
  return guarded([&] {
    *out = new kacz_set{kacz::SupportSet::parse(text)};
    return KACZ_OK;
  });
}

kacz_status kacz_set_create(const uint64_t* exponents, size_t count,
                            kacz_set** out) {
  if (auto s = require(exponents && out && count > 0, "null or empty input"))
    return s;
  return guarded([&] {
    *out = new kacz_set{
        kacz::SupportSet(std::vector<std::uint64_t>(exponents, exponents + count))};
    return KACZ_OK;
  });
}

void kacz_set_free(kacz_set* set) { delete set; }

size_t kacz_set_size(const kacz_set* set) { return set ? set->set.size() : 0; }

kacz_status kacz_set_exponents(const kacz_set* set, uint64_t* buffer,
                               size_t capacity) {
  if (auto s = require(set && buffer, "null argument")) return s;
  if (auto s = require(capacity >= set->set.size(), "buffer too small")) return s;
  const auto& exps = set->set.exponents();
  std::memcpy(buffer, exps.data(), exps.size() * sizeof(uint64_t));
  return KACZ_OK;
}

kacz_status kacz_set_to_text(const kacz_set* set, char* buffer, size_t capacity) {
  if (auto s = require(set && buffer, "null argument")) return s;
  const std::string text = set->set.to_string();
  if (auto s = require(capacity > text.size(), "buffer too small")) return s;
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return KACZ_OK;
}

kacz_status kacz_set_normalize(const kacz_set* set, kacz_set** out) {
  if (auto s = require(set && out, "null argument")) return s;
  return guarded([&] {
    *out = new kacz_set{kacz::normalize(set->set)};
    return KACZ_OK;
  });
}

kacz_status kacz_set_sum(const kacz_set* a, const kacz_set* b, kacz_set** out,
                         int* collision_free) {
  if (auto s = require(a && b && out, "null argument")) return s;
  return guarded([&] {
    auto result = kacz::sum_sets(a->set, b->set);
    *out = new kacz_set{std::move(result.set)};
    if (collision_free) *collision_free = result.collision_free ? 1 : 0;
    return KACZ_OK;
  });
}

kacz_status kacz_set_disjoint_union(const kacz_set* a, const kacz_set* b,
                                    kacz_set** out) {
  if (auto s = require(a && b && out, "null argument")) return s;
  return guarded([&] {
    *out = new kacz_set{kacz::disjoint_union(a->set, b->set)};
    return KACZ_OK;
  });
}

kacz_status kacz_set_reflect(const kacz_set* set, uint64_t degree, kacz_set** out) {
  if (auto s = require(set && out, "null argument")) return s;
  return guarded([&] {
    *out = new kacz_set{kacz::reflect(set->set, degree)};
    return KACZ_OK;
  });
}

kacz_status kacz_set_lower_bound_family(int k, kacz_set** out) {
  if (auto s = require(out != nullptr, "null argument")) return s;
  return guarded([&] {
    *out = new kacz_set{kacz::lower_bound_family(k)};
    return KACZ_OK;
  });
}

kacz_status kacz_eval_g_log(const kacz_set* set, double t, double* log_value) {
  if (auto s = require(set && log_value, "null argument")) return s;
  return guarded([&] {
    const auto g = kacz::eval_g(set->set, t);
    *log_value = g.is_zero ? -1.0 / 0.0 : g.log_magnitude;
    return KACZ_OK;
  });
}

kacz_status kacz_eval_density(const kacz_set* set, double t,
                              kacz_density_form form, double* rho) {
  if (auto s = require(set && rho, "null argument")) return s;
  return guarded([&] {
    kacz::DensityForm core_form;
    switch (form) {
      case KACZ_FORM_NORM: core_form = kacz::DensityForm::NormForm; break;
      case KACZ_FORM_LOG_DERIV: core_form = kacz::DensityForm::LogDerivForm; break;
      case KACZ_FORM_SUM_OF_SQUARES:
        core_form = kacz::DensityForm::SumOfSquaresForm;
        break;
      default:
        set_error("unknown density form");
        return KACZ_ERR_ARGUMENT;
    }
    *rho = kacz::eval_density(set->set, t, core_form);
    return KACZ_OK;
  });
}

kacz_status kacz_density_cap(const kacz_set* set, double* cap) {
  if (auto s = require(set && cap, "null argument")) return s;
  return guarded([&] {
    *cap = kacz::density_pointwise_cap(set->set);
    return KACZ_OK;
  });
}

void kacz_quad_options_init(kacz_quad_options* opts) {
  if (!opts) return;
  opts->abs_tol = 0.0;
  opts->max_evaluations = 0;
  opts->precision_digits = 0;
}

kacz_status kacz_expected_zeros(const kacz_set* set, double lo, double hi,
                                const kacz_quad_options* opts,
                                kacz_quad_result* result) {
  if (auto s = require(set && result, "null argument")) return s;
  return guarded([&] {
    try {
      fill(result, kacz::expected_zeros(set->set, kacz::OpenInterval(lo, hi),
                                        to_core(opts)));
      return KACZ_OK;
    } catch (const kacz::NumericalError& e) {
      result->value = e.best_estimate;
      result->abs_error_estimate = e.error_bound;
      throw;
    }
  });
}

kacz_status kacz_expected_zeros_real(const kacz_set* set,
                                     const kacz_quad_options* opts,
                                     kacz_quad_result* result) {
  if (auto s = require(set && result, "null argument")) return s;
  return guarded([&] {
    try {
      fill(result, kacz::expected_zeros_real(set->set, to_core(opts)));
      return KACZ_OK;
    } catch (const kacz::NumericalError& e) {
      result->value = e.best_estimate;
      result->abs_error_estimate = e.error_bound;
      throw;
    }
  });
}

kacz_status kacz_tail_mass(const kacz_set* set, double epsilon,
                           const kacz_quad_options* opts,
                           kacz_quad_result* result) {
  if (auto s = require(set && result, "null argument")) return s;
  return guarded([&] {
    fill(result, kacz::tail_mass(set->set, epsilon, to_core(opts)));
    return KACZ_OK;
  });
}

kacz_status kacz_arctan_mass(const kacz_set* s1, const kacz_set* s2, double alpha,
                             double beta, unsigned precision_digits,
                             double* value) {
  if (auto s = require(s1 && s2 && value, "null argument")) return s;
  return guarded([&] {
    *value = kacz::arctan_mass(s1->set, s2->set, alpha, beta, precision_digits);
    return KACZ_OK;
  });
}

#define KACZ_BOUND_IMPL(name, call)                        \
  kacz_status name {                                       \
    if (auto s = require(value != nullptr, "null output")) \
      return s;                                            \
    return guarded([&] {                                   \
      *value = call;                                       \
      return KACZ_OK;                                      \
    });                                                    \
  }

KACZ_BOUND_IMPL(kacz_bound_sqrt(uint64_t k, double* value), kacz::sqrt_bound(k))
KACZ_BOUND_IMPL(kacz_bound_refined_sqrt(uint64_t k, double* value),
                kacz::refined_sqrt_bound(k))
KACZ_BOUND_IMPL(kacz_bound_bet(uint64_t k, double* value), kacz::bet_bound(k))
KACZ_BOUND_IMPL(kacz_bound_tail(double epsilon, double* value),
                kacz::tail_bound(epsilon))
KACZ_BOUND_IMPL(kacz_bound_kac_dense(uint64_t n, double* value),
                kacz::kac_dense_asymptotic(n))
KACZ_BOUND_IMPL(kacz_bound_increment(uint64_t k, double* value),
                kacz::increment_bound(k))
KACZ_BOUND_IMPL(kacz_bound_sum(double z1, double z2, double* value),
                kacz::sum_bound(z1, z2))
KACZ_BOUND_IMPL(kacz_bound_dense_recursive(uint64_t n, double* value),
                kacz::dense_bound_recursive(n))

#undef KACZ_BOUND_IMPL

kacz_status kacz_bound_union(const kacz_set* s1, const kacz_set* s2, double z1,
                             double z2, kacz_union_bound_report* report) {
  if (auto s = require(s1 && s2 && report, "null argument")) return s;
  return guarded([&] {
    const auto r = kacz::union_bound(s1->set, s2->set, z1, z2);
    report->fine_value = r.fine_value;
    report->coarse_value = r.coarse_value;
    report->critical_point_count = r.critical_point_count;
    report->swapped = r.swapped ? 1 : 0;
    return KACZ_OK;
  });
}

kacz_status kacz_critical_points(const kacz_set* s1, const kacz_set* s2,
                                 double* midpoints, size_t capacity,
                                 size_t* count) {
  if (auto s = require(s1 && s2 && count, "null argument")) return s;
  return guarded([&] {
    const auto cps = kacz::critical_points_odd(s1->set, s2->set);
    *count = cps.points.size();
    if (midpoints) {
      if (capacity < cps.points.size()) {
        set_error("buffer too small");
        return KACZ_ERR_ARGUMENT;
      }
      for (std::size_t i = 0; i < cps.points.size(); ++i)
        midpoints[i] = cps.points[i].midpoint();
    }
    return KACZ_OK;
  });
}

void kacz_mc_config_init(kacz_mc_config* config) {
  if (!config) return;
  config->seed = 0;
  config->trials = 0;
  config->lo = 0.0;
  config->hi = 1.0;
  config->degree_cap = 0;
  config->method = KACZ_MC_EXACT_STURM;
}

kacz_status kacz_mc_run(const kacz_set* set, const kacz_mc_config* config,
                        kacz_mc_report** report) {
  if (auto s = require(set && report, "null argument")) return s;
  return guarded([&] {
    kacz::TrialConfig core;
    if (config) {
      core.seed = config->seed;
      if (config->trials > 0) core.trials = config->trials;
      core.interval = kacz::OpenInterval(config->lo, config->hi);
      if (config->degree_cap > 0) core.degree_cap = config->degree_cap;
      core.method = config->method == KACZ_MC_GRID_SIGN_CHANGE
                        ? kacz::CountMethod::GridSignChange
                        : kacz::CountMethod::ExactSturm;
    }
    auto result = kacz::estimate_expected_zeros(set->set, core);
    auto* out = new kacz_mc_report{std::move(result), {}};
    out->histogram_entries.assign(out->report.histogram.begin(),
                                  out->report.histogram.end());
    *report = out;
    return KACZ_OK;
  });
}

void kacz_mc_report_free(kacz_mc_report* report) { delete report; }

double kacz_mc_report_mean(const kacz_mc_report* r) { return r ? r->report.mean : 0; }
double kacz_mc_report_sample_variance(const kacz_mc_report* r) {
  return r ? r->report.sample_variance : 0;
}
double kacz_mc_report_ci95_halfwidth(const kacz_mc_report* r) {
  return r ? r->report.ci95_halfwidth : 0;
}
uint64_t kacz_mc_report_trials(const kacz_mc_report* r) {
  return r ? r->report.trials_run : 0;
}
size_t kacz_mc_report_histogram_size(const kacz_mc_report* r) {
  return r ? r->histogram_entries.size() : 0;
}

kacz_status kacz_mc_report_histogram_entry(const kacz_mc_report* report,
                                           size_t index, uint32_t* zero_count,
                                           uint64_t* frequency) {
  if (auto s = require(report && zero_count && frequency, "null argument"))
    return s;
  if (auto s = require(index < report->histogram_entries.size(),
                       "histogram index out of range"))
    return s;
  *zero_count = report->histogram_entries[index].first;
  *frequency = report->histogram_entries[index].second;
  return KACZ_OK;
}

kacz_status kacz_lowerbound_step(int k, unsigned precision_digits,
                                 kacz_lb_step* step) {
  if (auto s = require(step != nullptr, "null argument")) return s;
  return guarded([&] {
    const auto r = kacz::step_report(k, precision_digits);
    step->k = r.k;
    step->scale_exponent = r.scale_exponent;
    step->boundary_mass = r.boundary_mass;
    step->tail_leak = r.tail_leak;
    step->tail_leak_bound = r.tail_leak_bound;
    step->g_at_boundary = r.g_at_boundary;
    step->step_gain = r.step_gain;
    return KACZ_OK;
  });
}

kacz_status kacz_lowerbound_growth(int k_max, double abs_tol,
                                   unsigned precision_digits,
                                   kacz_lb_growth_row* rows, size_t capacity,
                                   size_t* count, int* strictly_increasing) {
  if (auto s = require(count != nullptr, "null argument")) return s;
  return guarded([&] {
    const auto table = kacz::verify_growth(k_max, abs_tol, precision_digits);
    *count = table.rows.size();
    if (strictly_increasing)
      *strictly_increasing = table.strictly_increasing ? 1 : 0;
    if (rows) {
      if (capacity < table.rows.size()) {
        set_error("buffer too small");
        return KACZ_ERR_ARGUMENT;
      }
      for (std::size_t i = 0; i < table.rows.size(); ++i) {
        rows[i].k = table.rows[i].k;
        rows[i].z = table.rows[i].z;
        rows[i].abs_error = table.rows[i].abs_error;
        rows[i].z_over_sqrt_k = table.rows[i].z_over_sqrt_k;
      }
    }
    return KACZ_OK;
  });
}

}  // extern "C"
