/*
 * kacz -- expected real zeros of random sparse polynomials.
 *
 * C interface to the shared library.  All functions return a kacz_status;
 * results come back through out-parameters.  Objects handed out as opaque
 * pointers are owned by the caller and released with the matching _free.
 * On any failure a thread-local message is available via kacz_last_error().
 */
#ifndef KACZ_H
#define KACZ_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define KACZ_API __attribute__((visibility("default")))

typedef enum kacz_status {
  KACZ_OK = 0,
  KACZ_ERR_ARGUMENT = 1,          /* null pointers, unparsable text, bad intervals */
  KACZ_ERR_DOMAIN = 2,            /* structurally valid input outside an operation's domain */
  KACZ_ERR_NUMERICAL = 3,         /* tolerance not met within the evaluation budget */
  KACZ_ERR_UNSUPPORTED_SCALE = 4, /* beyond an exactness or precision cap */
  KACZ_ERR_INTERNAL = 5
} kacz_status;

KACZ_API const char* kacz_version(void);
/* Message for the most recent failure on this thread; never NULL. */
KACZ_API const char* kacz_last_error(void);

/* ---- support sets -------------------------------------------------- */

typedef struct kacz_set kacz_set;

/* "0,1,4,16" or dense shorthand "0..64"; items may mix ("0,8..12"). */
KACZ_API kacz_status kacz_set_parse(const char* text, kacz_set** out);
KACZ_API kacz_status kacz_set_create(const uint64_t* exponents, size_t count,
                                     kacz_set** out);
KACZ_API void kacz_set_free(kacz_set* set);

KACZ_API size_t kacz_set_size(const kacz_set* set);
/* Copies the ascending exponents; capacity must be >= kacz_set_size. */
KACZ_API kacz_status kacz_set_exponents(const kacz_set* set, uint64_t* buffer,
                                        size_t capacity);
/* Comma-separated ascending text form.  Fails if capacity is too small. */
KACZ_API kacz_status kacz_set_to_text(const kacz_set* set, char* buffer,
                                      size_t capacity);

KACZ_API kacz_status kacz_set_normalize(const kacz_set* set, kacz_set** out);
KACZ_API kacz_status kacz_set_sum(const kacz_set* a, const kacz_set* b,
                                  kacz_set** out, int* collision_free);
KACZ_API kacz_status kacz_set_disjoint_union(const kacz_set* a, const kacz_set* b,
                                             kacz_set** out);
KACZ_API kacz_status kacz_set_reflect(const kacz_set* set, uint64_t degree,
                                      kacz_set** out);
/* {0,1} plus the tower 2^(2^i), i = 1..k; supported for 1 <= k <= 5. */
KACZ_API kacz_status kacz_set_lower_bound_family(int k, kacz_set** out);

/* ---- density ------------------------------------------------------- */

typedef enum kacz_density_form {
  KACZ_FORM_NORM = 0,
  KACZ_FORM_LOG_DERIV = 1,
  KACZ_FORM_SUM_OF_SQUARES = 2
} kacz_density_form;

/* log of g_S(t) = sum t^{2e}; t in (0, 1]. */
KACZ_API kacz_status kacz_eval_g_log(const kacz_set* set, double t,
                                     double* log_value);
/* Zero density rho_S(t); t in (0, 1). */
KACZ_API kacz_status kacz_eval_density(const kacz_set* set, double t,
                                       kacz_density_form form, double* rho);
/* Pointwise bound (|S|+1) max(S)/pi; requires 0 in S. */
KACZ_API kacz_status kacz_density_cap(const kacz_set* set, double* cap);

/* ---- quadrature ---------------------------------------------------- */

typedef struct kacz_quad_options {
  double abs_tol;            /* <= 0 selects the per-set default */
  uint64_t max_evaluations;  /* 0 selects the default 10^6 */
  unsigned precision_digits; /* 0 runs in double */
} kacz_quad_options;

typedef struct kacz_quad_result {
  double value;
  double abs_error_estimate;
  uint64_t evaluations;
} kacz_quad_result;

KACZ_API void kacz_quad_options_init(kacz_quad_options* opts);

/* z_S over the open interval (lo, hi), 0 <= lo < hi <= 1.  On
 * KACZ_ERR_NUMERICAL the result still carries the best estimate. */
KACZ_API kacz_status kacz_expected_zeros(const kacz_set* set, double lo, double hi,
                                         const kacz_quad_options* opts,
                                         kacz_quad_result* result);
/* z_S over the whole real line (reflection composition). */
KACZ_API kacz_status kacz_expected_zeros_real(const kacz_set* set,
                                              const kacz_quad_options* opts,
                                              kacz_quad_result* result);
/* z_S over (0, 1 - epsilon). */
KACZ_API kacz_status kacz_tail_mass(const kacz_set* set, double epsilon,
                                    const kacz_quad_options* opts,
                                    kacz_quad_result* result);
/* Closed-form integral of sqrt(W) over a monotone panel (alpha, beta). */
KACZ_API kacz_status kacz_arctan_mass(const kacz_set* s1, const kacz_set* s2,
                                      double alpha, double beta,
                                      unsigned precision_digits, double* value);

/* ---- closed-form bounds -------------------------------------------- */

KACZ_API kacz_status kacz_bound_sqrt(uint64_t k, double* value);
KACZ_API kacz_status kacz_bound_refined_sqrt(uint64_t k, double* value);
KACZ_API kacz_status kacz_bound_bet(uint64_t k, double* value);
KACZ_API kacz_status kacz_bound_tail(double epsilon, double* value);
KACZ_API kacz_status kacz_bound_kac_dense(uint64_t n, double* value);
KACZ_API kacz_status kacz_bound_increment(uint64_t k, double* value);
KACZ_API kacz_status kacz_bound_sum(double z1, double z2, double* value);
KACZ_API kacz_status kacz_bound_dense_recursive(uint64_t n, double* value);

typedef struct kacz_union_bound_report {
  double fine_value;            /* z1 + z2 + R/pi */
  double coarse_value;          /* z1 + z2 + (m+1)/2 */
  size_t critical_point_count;  /* m */
  int swapped;                  /* inputs reordered for the sign convention */
} kacz_union_bound_report;

KACZ_API kacz_status kacz_bound_union(const kacz_set* s1, const kacz_set* s2,
                                      double z1, double z2,
                                      kacz_union_bound_report* report);
/* Midpoints of the isolating intervals of the odd critical points of
 * g_{S1}/g_{S2} in (0, 1), ascending.  count receives the total. */
KACZ_API kacz_status kacz_critical_points(const kacz_set* s1, const kacz_set* s2,
                                          double* midpoints, size_t capacity,
                                          size_t* count);

/* ---- Monte Carlo ---------------------------------------------------- */

typedef enum kacz_mc_method {
  KACZ_MC_EXACT_STURM = 0,
  KACZ_MC_GRID_SIGN_CHANGE = 1
} kacz_mc_method;

typedef struct kacz_mc_config {
  uint64_t seed;
  uint64_t trials;      /* 0 selects the default 10^4 */
  double lo, hi;        /* target interval, default (0, 1) */
  uint32_t degree_cap;  /* 0 selects the default 2048 */
  kacz_mc_method method;
} kacz_mc_config;

typedef struct kacz_mc_report kacz_mc_report;

KACZ_API void kacz_mc_config_init(kacz_mc_config* config);
KACZ_API kacz_status kacz_mc_run(const kacz_set* set, const kacz_mc_config* config,
                                 kacz_mc_report** report);
KACZ_API void kacz_mc_report_free(kacz_mc_report* report);

KACZ_API double kacz_mc_report_mean(const kacz_mc_report* report);
KACZ_API double kacz_mc_report_sample_variance(const kacz_mc_report* report);
KACZ_API double kacz_mc_report_ci95_halfwidth(const kacz_mc_report* report);
KACZ_API uint64_t kacz_mc_report_trials(const kacz_mc_report* report);
KACZ_API size_t kacz_mc_report_histogram_size(const kacz_mc_report* report);
KACZ_API kacz_status kacz_mc_report_histogram_entry(const kacz_mc_report* report,
                                                    size_t index,
                                                    uint32_t* zero_count,
                                                    uint64_t* frequency);

/* ---- lower-bound family diagnostics --------------------------------- */

typedef struct kacz_lb_step {
  int k;
  double scale_exponent;
  double boundary_mass;
  double tail_leak;
  double tail_leak_bound;
  double g_at_boundary;
  double step_gain;
} kacz_lb_step;

KACZ_API kacz_status kacz_lowerbound_step(int k, unsigned precision_digits,
                                          kacz_lb_step* step);

typedef struct kacz_lb_growth_row {
  int k;
  double z;
  double abs_error;
  double z_over_sqrt_k;
} kacz_lb_growth_row;

/* Fills up to capacity rows for k = 1..k_max (2 <= k_max <= 5); count
 * receives the row total and strictly_increasing the monotonicity flag. */
KACZ_API kacz_status kacz_lowerbound_growth(int k_max, double abs_tol,
                                            unsigned precision_digits,
                                            kacz_lb_growth_row* rows,
                                            size_t capacity, size_t* count,
                                            int* strictly_increasing);

#ifdef __cplusplus
}
#endif

#endif /* KACZ_H */
