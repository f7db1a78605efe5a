#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "core/bounds.hpp"
#include "core/density.hpp"
#include "core/errors.hpp"
#include "core/quadrature.hpp"
#include "core/support_set.hpp"

using namespace kacz;

namespace {

// Reference values computed independently with adaptive QUADPACK-style
// integration at tolerance 1e-13 (frozen).
constexpr double kZ012 = 0.32425589353290;
constexpr double kZ0123 = 0.37318992686138;
constexpr double kZ0123Left = 0.25437425585100;   // (0, 0.7)
constexpr double kZ0123Right = 0.11881567101039;  // (0.7, 1)
constexpr double kZReal64 = 3.283175852680;
constexpr double kTail0_1_4_16 = 0.150082833740;  // eps = 0.5

// Composite midpoint rule; the brute-force counterpart of the adaptive
// scheme, kept free of any shared code path beyond the density itself.
double riemann_midpoint(const SupportSet& s, double lo, double hi, int panels) {
  DensityEvaluator<double> eval(s);
  const double h = (hi - lo) / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i)
    sum += eval.density(lo + (i + 0.5) * h, DensityForm::SumOfSquaresForm);
  return sum * h;
}

}  // namespace

TEST_CASE("every pair integrates to 1/4") {
  for (std::uint64_t a : {1, 2, 3, 10, 100, 1000}) {
    const auto r = expected_zeros(SupportSet({0, a}), OpenInterval(0, 1));
    CHECK(std::fabs(r.value - 0.25) <= 1e-6);
    CHECK(r.abs_error_estimate <= 1e-6);
  }
}

TEST_CASE("singletons integrate to exactly zero") {
  const auto r = expected_zeros(SupportSet({5}), OpenInterval(0, 1));
  CHECK(r.value == 0.0);
  CHECK(r.evaluations == 0);
}

TEST_CASE("normalization happens internally") {
  const auto a = expected_zeros(SupportSet({3, 4, 8}), OpenInterval(0, 1));
  const auto b = expected_zeros(SupportSet({0, 1, 5}), OpenInterval(0, 1));
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
}

TEST_CASE("dense triple matches the brute-force Riemann oracle") {
  const auto r = expected_zeros(SupportSet({0, 1, 2}), OpenInterval(0, 1));
  CHECK(std::fabs(r.value - riemann_midpoint(SupportSet({0, 1, 2}), 0, 1, 1000000)) <=
        1e-6);
  CHECK(r.value == doctest::Approx(kZ012).epsilon(1e-10));
}

TEST_CASE("interval additivity") {
  const auto whole = expected_zeros(SupportSet({0, 1, 2, 3}), OpenInterval(0, 1));
  const auto left = expected_zeros(SupportSet({0, 1, 2, 3}), OpenInterval(0, 0.7));
  const auto right = expected_zeros(SupportSet({0, 1, 2, 3}), OpenInterval(0.7, 1));
  CHECK(std::fabs(whole.value - left.value - right.value) <=
        whole.abs_error_estimate + left.abs_error_estimate +
            right.abs_error_estimate + 1e-12);
  CHECK(whole.value == doctest::Approx(kZ0123).epsilon(1e-10));
  CHECK(left.value == doctest::Approx(kZ0123Left).epsilon(1e-9));
  CHECK(right.value == doctest::Approx(kZ0123Right).epsilon(1e-9));
}

TEST_CASE("interval monotonicity") {
  const SupportSet s({0, 2, 9, 27});
  const auto inner = expected_zeros(s, OpenInterval(0.1, 0.8));
  const auto outer = expected_zeros(s, OpenInterval(0.05, 0.9));
  const auto whole = expected_zeros(s, OpenInterval(0, 1));
  CHECK(inner.value <= outer.value + 1e-9);
  CHECK(outer.value <= whole.value + 1e-9);
}

TEST_CASE("breakpoints are recorded inside the interval") {
  auto contains = [](const std::vector<double>& v, double x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  const auto r = expected_zeros(SupportSet({0, 1, 4}), OpenInterval(0, 1));
  CHECK(contains(r.breakpoints, 0.5));    // layer of e = 1
  CHECK(contains(r.breakpoints, 0.875));  // layer of e = 4
  CHECK(std::is_sorted(r.breakpoints.begin(), r.breakpoints.end()));
  for (double b : r.breakpoints) {
    CHECK(b > 0.0);
    CHECK(b < 1.0);
  }
  const auto clipped = expected_zeros(SupportSet({0, 1, 4}), OpenInterval(0.6, 1));
  CHECK(contains(clipped.breakpoints, 0.875));
  CHECK_FALSE(contains(clipped.breakpoints, 0.5));
  for (double b : clipped.breakpoints) CHECK(b > 0.6);
}

TEST_CASE("real-line composition") {
  // Any pair: 4 * 1/4 = 1.
  const auto pair = expected_zeros_real(SupportSet({0, 7}));
  CHECK(std::fabs(pair.value - 1.0) <= 4e-6);

  // Constant polynomial.
  CHECK(expected_zeros_real(SupportSet({0})).value == 0.0);

  // Dense {0..64} against the frozen reference and the asymptotic formula.
  const auto dense = expected_zeros_real(SupportSet::parse("0..64"));
  CHECK(dense.value == doctest::Approx(kZReal64).epsilon(1e-9));
  CHECK(std::fabs(dense.value - kac_dense_asymptotic(64)) <= 0.01);
}

TEST_CASE("tail mass") {
  const auto r = tail_mass(SupportSet({0, 1, 4, 16}), 0.5);
  CHECK(r.value == doctest::Approx(kTail0_1_4_16).epsilon(1e-9));
  CHECK(r.value <= tail_bound(0.5) + 1e-6);

  // eps -> 1 shrinks the interval away.
  const auto tiny = tail_mass(SupportSet({0, 7}), 0.999999);
  CHECK(tiny.value <= 1e-4);

  CHECK_THROWS_AS(tail_mass(SupportSet({0, 1}), 0.0), DomainError);
  CHECK_THROWS_AS(tail_mass(SupportSet({0, 1}), 1.0), DomainError);
}

TEST_CASE("arctan mass closed form") {
  // Dominating singleton against a k-element base: 2 arctan(1/sqrt(k)).
  for (std::size_t k : {1, 2, 3, 5}) {
    std::vector<std::uint64_t> base;
    for (std::size_t i = 0; i < k; ++i) base.push_back(i);
    const double value =
        arctan_mass(SupportSet({100}), SupportSet(std::move(base)), 0.0, 1.0);
    CHECK(value ==
          doctest::Approx(2.0 * std::atan(1.0 / std::sqrt(static_cast<double>(k))))
              .epsilon(1e-12));
  }

  CHECK(arctan_mass(SupportSet({9}), SupportSet({0, 1}), 0.4, 0.4) == 0.0);
  CHECK_THROWS_AS(arctan_mass(SupportSet({0, 1}), SupportSet({1, 2}), 0, 1),
                  DomainError);
  CHECK_THROWS_AS(arctan_mass(SupportSet({2}), SupportSet({0}), 0.5, 0.2),
                  DomainError);
}

TEST_CASE("arctan mass equals the cross-term quadrature") {
  // Frozen reference for S1 = {16}, S2 = {0,1,4} over (1 - 2^-5, 1).
  const SupportSet s1({16}), s2({0, 1, 4});
  const double alpha = 1.0 - std::pow(2.0, -5);
  const double closed = arctan_mass(s1, s2, alpha, 1.0);
  CHECK(closed == doctest::Approx(0.346839031046).epsilon(1e-9));
  const auto quad = cross_term_mass(s1, s2, OpenInterval(alpha, 1.0));
  CHECK(std::fabs(quad.value - closed / (2.0 * 3.14159265358979324)) <= 1e-6);
}

TEST_CASE("evaluation budget failure carries the best estimate") {
  QuadratureOptions opts;
  opts.max_evaluations = 40;  // not enough for the panel structure
  try {
    expected_zeros(SupportSet({0, 1, 4, 16, 64}), OpenInterval(0, 1), opts);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.best_estimate >= 0.0);
    CHECK(e.error_bound >= 0.0);
  }
}

TEST_CASE("huge exponents require extended precision") {
  const SupportSet s({0, std::uint64_t{1} << 50});
  CHECK_THROWS_AS(expected_zeros(s, OpenInterval(0, 1)), UnsupportedScaleError);
  QuadratureOptions opts;
  opts.precision_digits = 40;
  const auto r = expected_zeros(s, OpenInterval(0, 1), opts);
  CHECK(std::fabs(r.value - 0.25) <= 1e-6);
}

TEST_CASE("quadrature is bit-reproducible") {
  const SupportSet s({0, 2, 9, 27});
  const auto a = expected_zeros(s, OpenInterval(0, 1));
  const auto b = expected_zeros(s, OpenInterval(0, 1));
  CHECK(a.value == b.value);
  CHECK(a.abs_error_estimate == b.abs_error_estimate);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("interval validation") {
  CHECK_THROWS_AS(OpenInterval(0.5, 0.5), DomainError);
  CHECK_THROWS_AS(OpenInterval(-0.1, 0.5), DomainError);
  CHECK_THROWS_AS(OpenInterval(0.0, 1.1), DomainError);
}

TEST_CASE("default tolerance switches with the problem scale") {
  QuadratureOptions opts;
  CHECK(resolve_abs_tol(SupportSet({0, 1, 2}), opts) == 1e-8);
  CHECK(resolve_abs_tol(SupportSet({0, std::uint64_t{1} << 30}), opts) == 1e-6);
  opts.abs_tol = 1e-4;
  CHECK(resolve_abs_tol(SupportSet({0, 1, 2}), opts) == 1e-4);
}
