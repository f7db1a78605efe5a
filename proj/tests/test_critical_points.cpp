#include "doctest.h"

#include <cmath>
#include <set>

#include "core/bounds.hpp"
#include "core/critical_points.hpp"
#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/quadrature.hpp"
#include "core/sparse_poly.hpp"
#include "core/support_set.hpp"

using namespace kacz;

namespace {

SparsePoly poly_from(std::vector<std::pair<std::uint64_t, long>> terms) {
  std::vector<std::pair<std::uint64_t, BigInt>> big;
  for (auto& [d, c] : terms) big.emplace_back(d, BigInt(c));
  return SparsePoly::from_terms(std::move(big));
}

const BigRat kWidth(BigInt(1), BigInt(1) << 40);

}  // namespace

TEST_CASE("sparse poly basics") {
  const SparsePoly p = poly_from({{0, 1}, {3, -2}, {3, 2}, {5, 4}});
  CHECK(p.term_count() == 2);  // the degree-3 terms cancel
  CHECK(p.degree() == 5);
  CHECK(p.min_degree() == 0);

  const SparsePoly d = p.derivative();
  CHECK(d.term_count() == 1);
  CHECK(d.degree() == 4);

  CHECK(poly_from({{2, 3}, {7, 5}}).all_coefficients_same_sign());
  CHECK_FALSE(poly_from({{2, 3}, {7, -5}}).all_coefficients_same_sign());
}

TEST_CASE("exact signs at rationals") {
  // p(t) = 2t^6 - 1: root at 2^(-1/6).
  const SparsePoly p = poly_from({{0, -1}, {6, 2}});
  CHECK(p.sign_at(BigRat(1, 2)) == -1);
  CHECK(p.sign_at(BigRat(9, 10)) == 1);
  CHECK(p.sign_at_exact(BigRat(1, 2)) == -1);
  CHECK(p.sign_at(BigRat(0)) == -1);
  CHECK(p.sign_at(BigRat(1)) == 1);

  // Exact rational root: p = 2t - 1 at 1/2.
  const SparsePoly q = poly_from({{0, -1}, {1, 2}});
  CHECK(q.sign_at(BigRat(1, 2)) == 0);
}

TEST_CASE("filtered and exact signs agree on random polynomials") {
  TrialStream stream(5150, 0);
  for (int rep = 0; rep < 40; ++rep) {
    std::vector<std::pair<std::uint64_t, BigInt>> terms;
    const int tc = 2 + static_cast<int>(stream.next_u64() % 5);
    for (int i = 0; i < tc; ++i) {
      const std::uint64_t deg = stream.next_u64() % 4096;
      const long coef = static_cast<long>(stream.next_u64() % 4000) - 2000;
      terms.emplace_back(deg, BigInt(coef));
    }
    const SparsePoly p = SparsePoly::from_terms(std::move(terms));
    if (p.is_zero()) continue;
    for (int j = 0; j < 5; ++j) {
      const BigRat x(BigInt(1 + stream.next_u64() % 1023), BigInt(1024));
      CHECK(p.sign_at(x) == p.sign_at_exact(x));
    }
  }
}

TEST_CASE("isolation finds simple crossings") {
  // (2t - 1)(5t - 4)(3t - 2) has crossings at 1/2, 2/3, 4/5.
  // Expanded: 30t^3 - 59t^2 + 38t - 8.
  const SparsePoly p = poly_from({{3, 30}, {2, -59}, {1, 38}, {0, -8}});
  const auto roots = isolate_sign_changes(p, kWidth);
  REQUIRE(roots.size() == 3);
  const double expected[] = {0.5, 2.0 / 3.0, 0.8};
  for (int i = 0; i < 3; ++i) {
    const double mid = ((roots[i].lo + roots[i].hi) / 2).convert_to<double>();
    CHECK(mid == doctest::Approx(expected[i]).epsilon(1e-9));
    CHECK(roots[i].sign_left != roots[i].sign_right);
  }
}

TEST_CASE("isolation reports odd multiplicities and drops tangencies") {
  // (2t - 1)^3: one sign change at 1/2 of multiplicity three.
  const SparsePoly cubed = poly_from({{3, 8}, {2, -12}, {1, 6}, {0, -1}});
  const auto r1 = isolate_sign_changes(cubed, kWidth);
  REQUIRE(r1.size() == 1);
  CHECK(((r1[0].lo + r1[0].hi) / 2).convert_to<double>() ==
        doctest::Approx(0.5).epsilon(1e-9));

  // (2t - 1)^2: a tangency only; no sign change to report.
  const SparsePoly squared = poly_from({{2, 4}, {1, -4}, {0, 1}});
  CHECK(isolate_sign_changes(squared, kWidth).empty());

  // (2t - 1)^2 (5t - 4): tangency at 1/2, crossing at 4/5.
  // Expanded: 20t^3 - 36t^2 + 21t - 4.
  const SparsePoly mixed = poly_from({{3, 20}, {2, -36}, {1, 21}, {0, -4}});
  const auto r2 = isolate_sign_changes(mixed, kWidth);
  REQUIRE(r2.size() == 1);
  CHECK(((r2[0].lo + r2[0].hi) / 2).convert_to<double>() ==
        doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("isolation around an exactly-dyadic stationary point") {
  // p = 4t^2 - 4t + 3/4 (times 4: 16t^2 - 16t + 3) has its stationary
  // point exactly at t = 1/2 and crossings at 1/4 and 3/4, driving the
  // degenerate-scaffold branch.
  const SparsePoly p = poly_from({{2, 16}, {1, -16}, {0, 3}});
  const auto roots = isolate_sign_changes(p, kWidth);
  REQUIRE(roots.size() == 2);
  CHECK(((roots[0].lo + roots[0].hi) / 2).convert_to<double>() ==
        doctest::Approx(0.25).epsilon(1e-9));
  CHECK(((roots[1].lo + roots[1].hi) / 2).convert_to<double>() ==
        doctest::Approx(0.75).epsilon(1e-9));

  // Same shape but lifted clear of zero: no crossings at all.
  const SparsePoly lifted = poly_from({{2, 16}, {1, -16}, {0, 5}});
  CHECK(isolate_sign_changes(lifted, kWidth).empty());
}

TEST_CASE("isolation handles exact rational roots") {
  // (2t - 1)(4t - 1): crossings at exactly-hittable dyadics 1/4 and 1/2.
  const SparsePoly p = poly_from({{2, 8}, {1, -6}, {0, 1}});
  const auto roots = isolate_sign_changes(p, kWidth);
  REQUIRE(roots.size() == 2);
  CHECK(((roots[0].lo + roots[0].hi) / 2).convert_to<double>() ==
        doctest::Approx(0.25).epsilon(1e-9));
  CHECK(((roots[1].lo + roots[1].hi) / 2).convert_to<double>() ==
        doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("critical points of g-ratios") {
  // {0,3} vs {1}: the derivative numerator is proportional to 2t - 4t^7,
  // giving the single interior critical point 2^(-1/6).
  const auto cps = critical_points_odd(SupportSet({0, 3}), SupportSet({1}));
  REQUIRE(cps.points.size() == 1);
  CHECK(cps.points[0].midpoint() ==
        doctest::Approx(std::pow(2.0, -1.0 / 6.0)).epsilon(1e-10));
  CHECK(cps.points[0].sign_before != cps.points[0].sign_after);
  CHECK((cps.points[0].hi - cps.points[0].lo).convert_to<double>() <= 1e-12);

  // Dominating singleton: the ratio is monotone.
  CHECK(critical_points_odd(SupportSet({0, 1, 2}), SupportSet({9})).points.empty());
  CHECK(critical_points_odd(SupportSet({9}), SupportSet({0, 1, 2})).points.empty());

  // h is a single negative term for {0} vs {1}.
  CHECK(critical_points_odd(SupportSet({0}), SupportSet({1})).points.empty());
}

TEST_CASE("ratios with two odd critical points") {
  // Locations verified externally with companion-matrix root finding.
  {
    const auto cps = critical_points_odd(SupportSet({2, 37}), SupportSet({1, 18}));
    REQUIRE(cps.points.size() == 2);
    CHECK(cps.points[0].midpoint() == doctest::Approx(0.9260032883878).epsilon(1e-9));
    CHECK(cps.points[1].midpoint() == doctest::Approx(0.9676960568928).epsilon(1e-9));
  }
  {
    const auto cps = critical_points_odd(SupportSet({9, 12, 25}),
                                         SupportSet({10, 33, 34}));
    REQUIRE(cps.points.size() == 2);
    CHECK(cps.points[0].midpoint() == doctest::Approx(0.8785958981613).epsilon(1e-9));
    CHECK(cps.points[1].midpoint() == doctest::Approx(0.9088912320044).epsilon(1e-9));
  }
}

TEST_CASE("union bound with two alternating panels dominates quadrature") {
  const SupportSet s1({2, 37}), s2({1, 18});
  const double z1 = expected_zeros(s1, OpenInterval(0, 1)).value;
  const double z2 = expected_zeros(s2, OpenInterval(0, 1)).value;
  const double zu = expected_zeros(disjoint_union(s1, s2), OpenInterval(0, 1)).value;
  const auto report = union_bound(s1, s2, z1, z2);
  CHECK(report.critical_point_count == 2);
  CHECK(zu <= report.fine_value + 1e-6);
  CHECK(report.fine_value <= report.coarse_value + 1e-12);
  CHECK(report.coarse_value == doctest::Approx(z1 + z2 + 1.5).epsilon(1e-12));
}

TEST_CASE("arctan partition total equals the cross-term integral") {
  // The partition R built panel-by-panel from the critical points must
  // reproduce the direct integral of sqrt(W)/(2 pi) over all of (0, 1):
  // R/pi on one side, adaptive quadrature on the other.
  const struct {
    SupportSet s1, s2;
  } pairs[] = {
      {SupportSet({2, 37}), SupportSet({1, 18})},  // two alternating panels
      {SupportSet({0, 3}), SupportSet({1})},       // one interior flip
      {SupportSet({50}), SupportSet({0, 9})},      // monotone ratio
  };
  for (const auto& [s1, s2] : pairs) {
    const auto report = union_bound(s1, s2, 0.0, 0.0);
    const auto direct = cross_term_mass(s1, s2, OpenInterval(0, 1));
    CHECK(std::fabs(report.fine_value - direct.value) <= 1e-6);
  }

  // Randomized sweep over small disjoint pairs.
  TrialStream stream(60601, 0);
  int done = 0;
  while (done < 20) {
    std::set<std::uint64_t> ea, eb;
    ea.insert(stream.next_u64() % 4);
    while (ea.size() < 1 + stream.next_u64() % 3) ea.insert(stream.next_u64() % 64);
    while (eb.size() < 1 + stream.next_u64() % 3) {
      const std::uint64_t e = stream.next_u64() % 64;
      if (!ea.count(e)) eb.insert(e);
    }
    const SupportSet s1(std::vector<std::uint64_t>(ea.begin(), ea.end()));
    const SupportSet s2(std::vector<std::uint64_t>(eb.begin(), eb.end()));
    if (s1.min() == s2.min()) continue;
    ++done;
    const auto report = union_bound(s1, s2, 0.0, 0.0);
    const auto direct = cross_term_mass(s1, s2, OpenInterval(0, 1));
    CHECK(std::fabs(report.fine_value - direct.value) <= 1e-6);
  }
}

TEST_CASE("critical point scale cap") {
  const SupportSet big({0, (std::uint64_t{1} << 20) + 1});
  CHECK_THROWS_AS(critical_points_odd(big, SupportSet({3})),
                  UnsupportedScaleError);
  CHECK_THROWS_AS(critical_points_odd(SupportSet({0, 1}), SupportSet({1, 2})),
                  DomainError);
}

TEST_CASE("isolated points flank with genuine exact sign flips") {
  // {0, b} against {m} with 2m < b has exactly one odd critical point at
  // t = (m/(b-m))^(1/(2b)); mix these with random sparse pairs.
  TrialStream stream(40729, 3);
  int total_points = 0;
  for (int rep = 0; rep < 12; ++rep) {
    const std::uint64_t b = 4 + stream.next_u64() % 60;
    const std::uint64_t m = 1 + stream.next_u64() % ((b - 1) / 2);
    const SupportSet s1({0, b});
    const SupportSet s2({m});
    const SparsePoly h = ratio_derivative_numerator(s1, s2);
    const auto cps = critical_points_odd(s1, s2);
    REQUIRE(cps.points.size() == 1);
    const double expected = std::pow(
        static_cast<double>(m) / static_cast<double>(b - m),
        1.0 / (2.0 * static_cast<double>(b)));
    CHECK(cps.points[0].midpoint() == doctest::Approx(expected).epsilon(1e-9));
    for (const auto& cp : cps.points) {
      ++total_points;
      CHECK(h.sign_at_exact(cp.probe_lo) == cp.sign_before);
      CHECK(h.sign_at_exact(cp.probe_hi) == cp.sign_after);
      CHECK(cp.sign_before != cp.sign_after);
      CHECK(cp.lo > 0);
      CHECK(cp.hi < 1);
    }
  }
  CHECK(total_points == 12);
}
