// Command-line front end.  Talks to the library exclusively through the
// public C interface; emits JSON (scalars, reports) or CSV (curves) on
// stdout and diagnostics on stderr.
//
// Exit codes: 0 success, 1 usage, 2 numerical failure, 3 domain or
// unsupported-scale error.
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kacz/kacz.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitDomain = 3;

int exit_code_for(kacz_status status) {
  switch (status) {
    case KACZ_OK: return kExitOk;
    case KACZ_ERR_ARGUMENT: return kExitUsage;
    case KACZ_ERR_NUMERICAL: return kExitNumerical;
    case KACZ_ERR_DOMAIN:
    case KACZ_ERR_UNSUPPORTED_SCALE: return kExitDomain;
    default: return kExitNumerical;
  }
}

[[noreturn]] void fail(kacz_status status) {
  std::fprintf(stderr, "kacz: %s\n", kacz_last_error());
  std::exit(exit_code_for(status));
}

[[noreturn]] void usage_error(const std::string& message) {
  std::fprintf(stderr, "kacz: %s\n", message.c_str());
  std::exit(kExitUsage);
}

struct SetHandle {
  kacz_set* ptr = nullptr;
  ~SetHandle() { kacz_set_free(ptr); }
};

void parse_set(const std::string& spec, SetHandle& out) {
  if (kacz_status s = kacz_set_parse(spec.c_str(), &out.ptr)) fail(s);
}

struct Interval {
  bool real_line = false;
  double lo = 0.0, hi = 1.0;
  std::string text = "unit";
};

Interval parse_interval(const std::string& text, bool allow_real) {
  Interval iv;
  iv.text = text;
  if (text == "unit") return iv;
  if (text == "real") {
    if (!allow_real) usage_error("interval 'real' is not valid here");
    iv.real_line = true;
    return iv;
  }
  double lo = 0.0, hi = 0.0;
  char trailing = 0;
  if (std::sscanf(text.c_str(), " ( %lf , %lf %c", &lo, &hi, &trailing) != 3 ||
      trailing != ')')
    usage_error("interval must be 'unit', 'real' or '(lo,hi)'");
  if (!(lo >= 0.0) || !(lo < hi) || !(hi > 0.0) || !(hi <= 1.0))
    usage_error("interval must satisfy 0 <= lo < hi <= 1");
  iv.lo = lo;
  iv.hi = hi;
  return iv;
}

std::string iso8601_now() {
  if (const char* fixed = std::getenv("KACZ_TIMESTAMP")) return fixed;
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

json make_manifest(const std::string& command,
                   const std::map<std::string, std::string>& arguments,
                   std::optional<std::uint64_t> seed) {
  json manifest;
  manifest["command"] = command;
  manifest["arguments"] = arguments;
  manifest["tool_version"] = kacz_version();
  if (seed)
    manifest["seed"] = *seed;
  else
    manifest["seed"] = nullptr;
  manifest["timestamp"] = iso8601_now();
  return manifest;
}

void emit(const json& payload) { std::printf("%s\n", payload.dump(2).c_str()); }

double env_or(const char* name, double fallback) {
  if (const char* v = std::getenv(name)) {
    char* end = nullptr;
    const double parsed = std::strtod(v, &end);
    if (end && *end == '\0' && parsed > 0.0) return parsed;
  }
  return fallback;
}

// Shared defaults: flags override environment overrides built-ins.
struct Defaults {
  double tol = env_or("KACZ_TOL", 0.0);  // 0 lets the library pick per set
  std::uint64_t trials =
      static_cast<std::uint64_t>(env_or("KACZ_TRIALS", 10000.0));
  unsigned precision_digits =
      static_cast<unsigned>(env_or("KACZ_PRECISION_DIGITS", 0.0));
};

int run_zeros(const std::string& set_spec, const std::string& interval_text,
              double tol, unsigned digits, std::uint64_t max_evals,
              const std::string& format) {
  if (format != "json" && format != "csv")
    usage_error("--format must be json or csv");
  SetHandle set;
  parse_set(set_spec, set);
  const Interval iv = parse_interval(interval_text, true);

  kacz_quad_options opts;
  kacz_quad_options_init(&opts);
  opts.abs_tol = tol;
  opts.precision_digits = digits;
  if (max_evals > 0) opts.max_evaluations = max_evals;

  kacz_quad_result result{};
  kacz_status status = iv.real_line
                           ? kacz_expected_zeros_real(set.ptr, &opts, &result)
                           : kacz_expected_zeros(set.ptr, iv.lo, iv.hi, &opts,
                                                 &result);
  if (status != KACZ_OK) fail(status);

  if (format == "csv") {
    std::printf("value,abs_error_estimate,evaluations\n");
    std::printf("%.17g,%.17g,%llu\n", result.value, result.abs_error_estimate,
                static_cast<unsigned long long>(result.evaluations));
    return kExitOk;
  }

  json payload;
  payload["manifest"] = make_manifest(
      "zeros",
      {{"set", set_spec},
       {"interval", iv.text},
       {"tol", std::to_string(tol)},
       {"precision_digits", std::to_string(digits)}},
      std::nullopt);
  payload["result"] = {{"set", set_spec},
                       {"interval", iv.text},
                       {"value", result.value},
                       {"abs_error_estimate", result.abs_error_estimate},
                       {"evaluations", result.evaluations}};
  emit(payload);
  return kExitOk;
}

int run_bound(const std::string& kind, std::uint64_t k, std::uint64_t n,
              double eps, const std::string& s1_spec, const std::string& s2_spec,
              double z1, double z2) {
  json result;
  result["kind"] = kind;
  double value = 0.0;
  kacz_status status = KACZ_OK;

  if (kind == "sqrt") {
    status = kacz_bound_sqrt(k, &value);
    result["name"] = "sqrt_bound";
    result["assumptions"] = "any support of size k";
    result["formula"] = "(2/pi) sqrt(k-1)";
    result["k"] = k;
  } else if (kind == "refined") {
    status = kacz_bound_refined_sqrt(k, &value);
    result["name"] = "refined_sqrt_bound";
    result["assumptions"] = "any support of size k >= 2";
    result["formula"] = "1/4 + (2/pi)(sqrt(k-1) - 1)";
    result["k"] = k;
  } else if (kind == "bet") {
    status = kacz_bound_bet(k, &value);
    result["name"] = "sqrt_log_bound";
    result["assumptions"] = "any support of size k >= 2";
    result["formula"] = "(1/pi) sqrt(k) ln(k)";
    result["k"] = k;
  } else if (kind == "tail") {
    status = kacz_bound_tail(eps, &value);
    result["name"] = "tail_bound";
    result["assumptions"] = "mass on (0, 1-eps), any support";
    result["formula"] = "(1/2pi)(ln(2/eps) + 4/sqrt(eps) - 4)";
    result["eps"] = eps;
  } else if (kind == "kac") {
    status = kacz_bound_kac_dense(n, &value);
    result["name"] = "dense_asymptotic";
    result["assumptions"] = "support {0..n} over the real line";
    result["formula"] = "(2/pi) ln(n) + 0.6257358072 + 2/(n pi)";
    result["n"] = n;
  } else if (kind == "increment") {
    status = kacz_bound_increment(k, &value);
    result["name"] = "increment_bound";
    result["assumptions"] = "appending a monomial above the degree, |S| = k";
    result["formula"] = "(1/pi) arctan(1/sqrt(k))";
    result["k"] = k;
  } else if (kind == "sum") {
    status = kacz_bound_sum(z1, z2, &value);
    result["name"] = "sum_bound";
    result["assumptions"] = "collision-free set sum";
    result["formula"] = "z1 + z2";
  } else if (kind == "dense-recursive") {
    status = kacz_bound_dense_recursive(n, &value);
    result["name"] = "dense_bound_recursive";
    result["assumptions"] = "support {0..n}; stays below (3/4) log2(n)";
    result["formula"] = "recursive split/union certificate";
    result["n"] = n;
  } else if (kind == "union") {
    if (s1_spec.empty() || s2_spec.empty())
      usage_error("--kind union needs --s1 and --s2");
    SetHandle s1, s2;
    parse_set(s1_spec, s1);
    parse_set(s2_spec, s2);
    kacz_union_bound_report report{};
    status = kacz_bound_union(s1.ptr, s2.ptr, z1, z2, &report);
    if (status != KACZ_OK) fail(status);
    std::size_t count = 0;
    if (kacz_status s = kacz_critical_points(s1.ptr, s2.ptr, nullptr, 0, &count))
      fail(s);
    std::vector<double> midpoints(count);
    if (count > 0)
      if (kacz_status s = kacz_critical_points(s1.ptr, s2.ptr, midpoints.data(),
                                               midpoints.size(), &count))
        fail(s);
    value = report.fine_value;
    result["name"] = "union_bound";
    result["assumptions"] = "disjoint supports; z1, z2 certified for the parts";
    result["formula"] = "z1 + z2 + R/pi, coarse z1 + z2 + (m+1)/2";
    result["fine_value"] = report.fine_value;
    result["coarse_value"] = report.coarse_value;
    result["critical_point_count"] = report.critical_point_count;
    result["critical_points"] = midpoints;
    result["swapped"] = report.swapped != 0;
    result["s1"] = s1_spec;
    result["s2"] = s2_spec;
    result["z1"] = z1;
    result["z2"] = z2;
  } else {
    usage_error("unknown bound kind '" + kind + "'");
  }
  if (status != KACZ_OK) fail(status);
  result["value"] = value;

  json payload;
  payload["manifest"] = make_manifest("bound", {{"kind", kind}}, std::nullopt);
  payload["result"] = result;
  emit(payload);
  return kExitOk;
}

int run_mc(const std::string& set_spec, const std::string& interval_text,
           std::uint64_t trials, std::uint64_t seed, const std::string& method,
           std::uint32_t degree_cap) {
  SetHandle set;
  parse_set(set_spec, set);
  const Interval iv = parse_interval(interval_text, false);

  kacz_mc_config config;
  kacz_mc_config_init(&config);
  config.seed = seed;
  config.trials = trials;
  config.lo = iv.lo;
  config.hi = iv.hi;
  config.degree_cap = degree_cap;
  if (method == "exact")
    config.method = KACZ_MC_EXACT_STURM;
  else if (method == "grid")
    config.method = KACZ_MC_GRID_SIGN_CHANGE;
  else
    usage_error("--method must be 'exact' or 'grid'");

  kacz_mc_report* report = nullptr;
  if (kacz_status s = kacz_mc_run(set.ptr, &config, &report)) fail(s);
  std::unique_ptr<kacz_mc_report, void (*)(kacz_mc_report*)> guard(
      report, kacz_mc_report_free);

  json histogram = json::object();
  for (std::size_t i = 0; i < kacz_mc_report_histogram_size(report); ++i) {
    std::uint32_t count = 0;
    std::uint64_t freq = 0;
    kacz_mc_report_histogram_entry(report, i, &count, &freq);
    histogram[std::to_string(count)] = freq;
  }

  json payload;
  payload["manifest"] = make_manifest(
      "mc",
      {{"set", set_spec},
       {"interval", iv.text},
       {"trials", std::to_string(trials)},
       {"method", method}},
      seed);
  payload["result"] = {{"set", set_spec},
                       {"interval", iv.text},
                       {"method", method},
                       {"seed", seed},
                       {"trials", kacz_mc_report_trials(report)},
                       {"mean", kacz_mc_report_mean(report)},
                       {"sample_variance", kacz_mc_report_sample_variance(report)},
                       {"ci95_halfwidth", kacz_mc_report_ci95_halfwidth(report)},
                       {"histogram", histogram}};
  emit(payload);
  return kExitOk;
}

int run_density_curve(const std::string& set_spec, std::uint64_t samples,
                      const std::string& form, double t_min, double t_max,
                      const std::string& format) {
  if (samples == 0) usage_error("--samples must be positive");
  if (!(t_min > 0.0) || !(t_min < t_max) || !(t_max < 1.0))
    usage_error("need 0 < t-min < t-max < 1");
  SetHandle set;
  parse_set(set_spec, set);

  std::vector<kacz_density_form> forms;
  std::vector<std::string> columns = {"t"};
  if (form == "all") {
    forms = {KACZ_FORM_NORM, KACZ_FORM_LOG_DERIV, KACZ_FORM_SUM_OF_SQUARES};
    columns.insert(columns.end(), {"rho_norm", "rho_logderiv", "rho_sos"});
  } else if (form == "norm") {
    forms = {KACZ_FORM_NORM};
    columns.push_back("rho");
  } else if (form == "logderiv") {
    forms = {KACZ_FORM_LOG_DERIV};
    columns.push_back("rho");
  } else if (form == "sos") {
    forms = {KACZ_FORM_SUM_OF_SQUARES};
    columns.push_back("rho");
  } else {
    usage_error("--form must be norm, logderiv, sos or all");
  }

  std::vector<std::vector<double>> rows;
  rows.reserve(samples);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double t =
        samples == 1
            ? t_min
            : t_min + (t_max - t_min) * static_cast<double>(i) /
                          static_cast<double>(samples - 1);
    std::vector<double> row{t};
    for (auto f : forms) {
      double rho = 0.0;
      if (kacz_status s = kacz_eval_density(set.ptr, t, f, &rho)) fail(s);
      row.push_back(rho);
    }
    rows.push_back(std::move(row));
  }

  if (format == "csv") {
    for (std::size_t c = 0; c < columns.size(); ++c)
      std::printf("%s%s", c ? "," : "", columns[c].c_str());
    std::printf("\n");
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c)
        std::printf("%s%.17g", c ? "," : "", row[c]);
      std::printf("\n");
    }
  } else if (format == "json") {
    json payload;
    payload["manifest"] = make_manifest(
        "density-curve",
        {{"set", set_spec}, {"samples", std::to_string(samples)}, {"form", form}},
        std::nullopt);
    payload["result"] = {{"set", set_spec}, {"columns", columns}, {"rows", rows}};
    emit(payload);
  } else {
    usage_error("--format must be csv or json");
  }
  return kExitOk;
}

int run_lowerbound(int k_max, double tol, unsigned digits) {
  std::size_t count = 0;
  int increasing = 0;
  std::vector<kacz_lb_growth_row> rows(8);
  if (kacz_status s = kacz_lowerbound_growth(k_max, tol, digits, rows.data(),
                                             rows.size(), &count, &increasing))
    fail(s);
  rows.resize(count);

  json growth = json::array();
  for (const auto& row : rows)
    growth.push_back({{"k", row.k},
                      {"z", row.z},
                      {"abs_error", row.abs_error},
                      {"z_over_sqrt_k", row.z_over_sqrt_k}});

  json steps = json::array();
  for (int k = 1; k <= k_max; ++k) {
    kacz_lb_step step{};
    if (kacz_status s = kacz_lowerbound_step(k, digits, &step)) fail(s);
    steps.push_back({{"k", step.k},
                     {"scale_exponent", step.scale_exponent},
                     {"boundary_mass", step.boundary_mass},
                     {"tail_leak", step.tail_leak},
                     {"tail_leak_bound", step.tail_leak_bound},
                     {"g_at_boundary", step.g_at_boundary},
                     {"step_gain", step.step_gain}});
  }

  json payload;
  payload["manifest"] = make_manifest(
      "lowerbound",
      {{"kmax", std::to_string(k_max)},
       {"precision_digits", std::to_string(digits)}},
      std::nullopt);
  payload["result"] = {{"growth", growth},
                       {"steps", steps},
                       {"strictly_increasing", increasing != 0}};
  emit(payload);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Defaults defaults;
  CLI::App app{"expected real zeros of random sparse polynomials"};
  app.require_subcommand(1);

  // zeros
  std::string z_set, z_interval = "unit", z_format = "json";
  double z_tol = defaults.tol;
  unsigned z_digits = defaults.precision_digits;
  std::uint64_t z_max_evals = 0;
  auto* zeros = app.add_subcommand("zeros", "expected zero count by quadrature");
  zeros->add_option("--set", z_set, "support set, e.g. 0,1,4 or 0..64")->required();
  zeros->add_option("--interval", z_interval, "unit, real or (lo,hi)");
  zeros->add_option("--tol", z_tol, "absolute tolerance (0 = per-set default)");
  zeros->add_option("--precision-digits", z_digits, "extended-precision digits");
  zeros->add_option("--max-evaluations", z_max_evals, "evaluation budget");
  zeros->add_option("--format", z_format, "json or csv");

  // bound
  std::string b_kind, b_s1, b_s2;
  std::uint64_t b_k = 0, b_n = 0;
  double b_eps = 0.0, b_z1 = 0.0, b_z2 = 0.0;
  auto* bound = app.add_subcommand("bound", "closed-form and certified bounds");
  bound->add_option("--kind", b_kind,
                    "sqrt refined bet tail kac increment union sum dense-recursive")
      ->required();
  bound->add_option("--k", b_k, "support size");
  bound->add_option("--n", b_n, "dense degree");
  bound->add_option("--eps", b_eps, "tail parameter");
  bound->add_option("--s1", b_s1, "first support (union)");
  bound->add_option("--s2", b_s2, "second support (union)");
  bound->add_option("--z1", b_z1, "certified value for S1");
  bound->add_option("--z2", b_z2, "certified value for S2");

  // mc
  std::string m_set, m_interval = "unit", m_method = "exact";
  std::uint64_t m_trials = defaults.trials, m_seed = 0;
  std::uint32_t m_cap = 2048;
  auto* mc = app.add_subcommand("mc", "Monte Carlo zero-count estimate");
  mc->add_option("--set", m_set, "support set")->required();
  mc->add_option("--interval", m_interval, "unit or (lo,hi)");
  mc->add_option("--trials", m_trials, "number of trials");
  mc->add_option("--seed", m_seed, "random seed");
  mc->add_option("--method", m_method, "exact or grid");
  mc->add_option("--degree-cap", m_cap, "max degree for exact counting");

  // density-curve
  std::string d_set, d_form = "sos", d_format = "csv";
  std::uint64_t d_samples = 256;
  double d_tmin = 0.001, d_tmax = 0.999;
  auto* curve = app.add_subcommand("density-curve", "sample the zero density");
  curve->add_option("--set", d_set, "support set")->required();
  curve->add_option("--samples", d_samples, "number of samples");
  curve->add_option("--form", d_form, "norm, logderiv, sos or all");
  curve->add_option("--t-min", d_tmin, "left end of the sample range");
  curve->add_option("--t-max", d_tmax, "right end of the sample range");
  curve->add_option("--format", d_format, "csv or json");

  // lowerbound
  int l_kmax = 3;
  double l_tol = defaults.tol;
  unsigned l_digits = defaults.precision_digits;
  auto* lower = app.add_subcommand("lowerbound", "double-exponential family checks");
  lower->add_option("--kmax", l_kmax, "largest family index (2..5)");
  lower->add_option("--tol", l_tol, "absolute tolerance");
  lower->add_option("--precision-digits", l_digits, "extended-precision digits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::fprintf(stderr, "kacz: %s\n", e.what());
    return kExitUsage;
  }

  try {
    if (zeros->parsed())
      return run_zeros(z_set, z_interval, z_tol, z_digits, z_max_evals, z_format);
    if (bound->parsed())
      return run_bound(b_kind, b_k, b_n, b_eps, b_s1, b_s2, b_z1, b_z2);
    if (mc->parsed())
      return run_mc(m_set, m_interval, m_trials, m_seed, m_method, m_cap);
    if (curve->parsed())
      return run_density_curve(d_set, d_samples, d_form, d_tmin, d_tmax, d_format);
    if (lower->parsed()) return run_lowerbound(l_kmax, l_tol, l_digits);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "kacz: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitUsage;
}
