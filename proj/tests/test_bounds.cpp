#include "doctest.h"

#include <cmath>

#include "core/bounds.hpp"
#include "core/errors.hpp"
#include "core/quadrature.hpp"
#include "core/support_set.hpp"

using namespace kacz;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("closed-form values") {
  CHECK(sqrt_bound(1) == 0.0);
  CHECK(sqrt_bound(2) == doctest::Approx(2.0 / kPi).epsilon(1e-12));
  CHECK(sqrt_bound(101) == doctest::Approx(20.0 / kPi).epsilon(1e-12));

  CHECK(refined_sqrt_bound(2) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(refined_sqrt_bound(5) == doctest::Approx(0.886619772).epsilon(1e-8));
  CHECK(refined_sqrt_bound(10) == doctest::Approx(1.523239545).epsilon(1e-8));

  CHECK(bet_bound(2) == doctest::Approx(0.312025858).epsilon(1e-8));
  CHECK(bet_bound(8) == doctest::Approx(1.872155148).epsilon(1e-8));
  CHECK(bet_bound(100) == doctest::Approx(14.65871198).epsilon(1e-8));

  CHECK(tail_bound(0.5) == doctest::Approx(0.484332144).epsilon(1e-8));
  CHECK(tail_bound(0.1) == doctest::Approx(1.853334311).epsilon(1e-8));
  CHECK(tail_bound(1.0) == doctest::Approx(std::log(2.0) / (2.0 * kPi)).epsilon(1e-12));

  CHECK(kac_dense_asymptotic(64) == doctest::Approx(3.283310).epsilon(1e-6));
  CHECK(kac_dense_asymptotic(2) == doctest::Approx(1.385317).epsilon(1e-6));
  CHECK(kac_dense_asymptotic(1000000) == doctest::Approx(9.420964).epsilon(1e-6));

  CHECK(increment_bound(1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(increment_bound(3) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(increment_bound(100) == doctest::Approx(0.031725).epsilon(1e-4));

  CHECK(sum_bound(0.25, 0.25) == 0.5);
  CHECK(sum_bound(0.0, 0.37) == 0.37);
}

TEST_CASE("domain guards") {
  CHECK_THROWS_AS(sqrt_bound(0), DomainError);
  CHECK_THROWS_AS(refined_sqrt_bound(1), DomainError);
  CHECK_THROWS_AS(bet_bound(1), DomainError);
  CHECK_THROWS_AS(tail_bound(0.0), DomainError);
  CHECK_THROWS_AS(tail_bound(1.5), DomainError);
  CHECK_THROWS_AS(kac_dense_asymptotic(1), DomainError);
  CHECK_THROWS_AS(increment_bound(0), DomainError);
  CHECK_THROWS_AS(sum_bound(-0.1, 0.0), DomainError);
  CHECK_THROWS_AS(dense_bound_recursive(0), DomainError);
}

TEST_CASE("bound chains") {
  for (std::uint64_t k = 2; k <= 1000000; k = k * 3 + 1)
    CHECK(refined_sqrt_bound(k) <= sqrt_bound(k) + 1e-15);
  for (std::uint64_t k = 10; k <= 1000000; k = k * 2)
    CHECK(sqrt_bound(k) <= bet_bound(k));
}

TEST_CASE("dense recursion") {
  CHECK(dense_bound_recursive(1) == doctest::Approx(0.25));
  CHECK(dense_bound_recursive(3) == doctest::Approx(0.5));
  CHECK(dense_bound_recursive(4) == doctest::Approx(1.0));
  CHECK(dense_bound_recursive(4) <= 1.5);
  for (std::uint64_t n = 2; n <= 1024; ++n)
    CHECK(dense_bound_recursive(n) <=
          0.75 * std::log2(static_cast<double>(n)) + 1e-12);
}

TEST_CASE("union bound reproduces the increment bound") {
  // Dominating singleton against a base of size k: m = 0 and
  // R = arctan(1/sqrt(k)).
  const double z_base = 0.25;
  const auto report = union_bound(SupportSet({50}), SupportSet({0, 9}), 0.0, z_base);
  CHECK(report.critical_point_count == 0);
  CHECK(report.fine_value ==
        doctest::Approx(z_base + increment_bound(2)).epsilon(1e-12));
  CHECK(report.coarse_value == doctest::Approx(z_base + 0.5).epsilon(1e-12));
  CHECK(report.fine_value <= report.coarse_value);
}

TEST_CASE("union bound orients the pair and counts critical points") {
  // {0,3} and {1}: one odd critical point, so the coarse bound is z1+z2+1.
  const auto report = union_bound(SupportSet({0, 3}), SupportSet({1}), 0.3, 0.25);
  CHECK(report.critical_point_count == 1);
  CHECK(report.coarse_value == doctest::Approx(0.3 + 0.25 + 1.0).epsilon(1e-12));
  CHECK(report.fine_value <= report.coarse_value);
  CHECK(report.swapped);  // min{0,3} < min{1} forces the reorder
  REQUIRE(report.critical_points.size() == 1);
  CHECK(report.critical_points[0] ==
        doctest::Approx(std::pow(2.0, -1.0 / 6.0)).epsilon(1e-10));
}

TEST_CASE("union bound dominates quadrature") {
  const struct {
    SupportSet s1, s2;
  } pairs[] = {
      {SupportSet({0, 2}), SupportSet({5, 9})},
      {SupportSet({1, 7}), SupportSet({0, 3, 12})},
      {SupportSet({0, 4, 6}), SupportSet({1, 2, 31})},
  };
  for (const auto& [s1, s2] : pairs) {
    const double z1 = expected_zeros(s1, OpenInterval(0, 1)).value;
    const double z2 = expected_zeros(s2, OpenInterval(0, 1)).value;
    const double zu = expected_zeros(disjoint_union(s1, s2), OpenInterval(0, 1)).value;
    const auto report = union_bound(s1, s2, z1, z2);
    CHECK(zu <= report.fine_value + 1e-6);
    CHECK(report.fine_value <= report.coarse_value + 1e-12);
  }
}

TEST_CASE("sum bound dominates quadrature on collision-free sums") {
  const SupportSet a({0, 1, 2}), b({0, 7});
  const auto sum = sum_sets(a, b);
  REQUIRE(sum.collision_free);
  const double za = expected_zeros(a, OpenInterval(0, 1)).value;
  const double zb = expected_zeros(b, OpenInterval(0, 1)).value;
  const double zs = expected_zeros(sum.set, OpenInterval(0, 1)).value;
  CHECK(zs <= sum_bound(za, zb) + 2e-6);
}

TEST_CASE("dense recursion dominates quadrature") {
  for (std::uint64_t n : {4, 16, 64}) {
    std::vector<std::uint64_t> exps;
    for (std::uint64_t e = 0; e <= n; ++e) exps.push_back(e);
    const double z = expected_zeros(SupportSet(std::move(exps)), OpenInterval(0, 1)).value;
    CHECK(z <= dense_bound_recursive(n) + 1e-6);
  }
}
