#include <random>

#include "doctest.h"

#include "chowkit/chow_curves.hpp"
#include "chowkit/errors.hpp"
#include "test_support.hpp"

using namespace chowkit;
using testkit::GraphCurve;

namespace {

Multidegree degrees(std::vector<Rational> d) { return Multidegree{std::move(d)}; }

StabilityStatus status_of(const Rational& worst) {
  if (worst.sign() < 0) return StabilityStatus::unstable;
  return worst.is_zero() ? StabilityStatus::strictly_semistable : StabilityStatus::stable;
}

}  // namespace

TEST_CASE("chow margin on the genus (2,1) curve") {
  const NodalCurve c = testkit::two_component(2, 1).build();
  const Subcurve x1 = Subcurve::of(c, {"C0"});
  CHECK(chow_margin(c, degrees({3, 2}), x1) == Rational(-3, 4));
  CHECK(chow_margin(c, degrees({3, 2}), Subcurve::whole(c)) == Rational(0));
  CHECK(chow_margin(c, degrees({3, 2}), x1.complement(c)) == Rational(3, 4));
  CHECK(chow_margin(c, degrees({3, 1}), x1) == Rational(0));
}

TEST_CASE("finite check verdicts") {
  const NodalCurve c = testkit::two_component(2, 1).build();
  const StabilityVerdict bad = check_finite(c, degrees({3, 2}));
  CHECK(bad.status == StabilityStatus::unstable);
  REQUIRE(bad.witnesses.size() == 1);
  CHECK(bad.witnesses[0].subcurve.member_ids(c) == std::vector<std::string>{"C0"});
  CHECK(bad.witnesses[0].margin == Rational(-1, 4));
  CHECK(bad.caveat_low_degree);  // 5 < 2 * 4

  // Phi = 0 on X1: the inequality holds with slack l/2.
  const StabilityVerdict balanced = check_finite(c, degrees({3, 1}));
  CHECK(balanced.status == StabilityStatus::stable);
  CHECK(*balanced.worst_margin == Rational(1, 2));

  // |Phi| = l/2 exactly.
  const StabilityVerdict edge = check_finite(c, degrees({Rational(7, 2), Rational(1, 2)}));
  CHECK(edge.status == StabilityStatus::strictly_semistable);
  CHECK(*edge.worst_margin == Rational(0));

  const NodalCurve smooth = GraphCurve{{2}, {}, {}}.build();
  const StabilityVerdict vac = check_finite(smooth, degrees({5}));
  CHECK(vac.status == StabilityStatus::stable);
  CHECK(!vac.worst_margin.has_value());
  CHECK(vac.witnesses.empty());
}

TEST_CASE("finite check input errors") {
  const NodalCurve c = testkit::two_component(2, 1).build();
  CHECK_THROWS_AS(check_finite(c, degrees({3})), InputError);
  CHECK_THROWS_AS(check_finite(c, degrees({4, 0})), InputError);
  CheckOptions embed;
  embed.assert_embedding = true;
  CHECK_THROWS_AS(check_finite(c, degrees({Rational(7, 2), Rational(1, 2)}), embed), InputError);
  const NodalCurve rational = GraphCurve{{0}, {}, {{0, Rational(1)}}}.build();
  CHECK_THROWS_AS(check_finite(rational, degrees({1})), InputError);  // deg w(a.x) < 0
}

TEST_CASE("finite check agrees with the exhaustive subcurve oracle") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 300; ++t) {
    const GraphCurve g = testkit::random_curve(rng, 5);
    const NodalCurve c = g.build();
    std::vector<Rational> L;
    for (std::size_t i = 0; i < g.genera.size(); ++i)
      L.push_back(Rational(std::uniform_int_distribution<int>(1, 24)(rng), std::uniform_int_distribution<int>(1, 3)(rng)));
    const StabilityVerdict v = check_finite(c, degrees(L));
    if (g.genera.size() == 1) {
      CHECK(v.status == StabilityStatus::stable);
      continue;
    }
    const Rational worst = g.worst_margin(L);
    CHECK(*v.worst_margin == worst);
    CHECK(v.status == status_of(worst));
    for (const auto& w : v.witnesses) CHECK(w.margin == g.margin(L, w.subcurve.mask()));
  }
}

TEST_CASE("complement antisymmetry") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 100; ++t) {
    const GraphCurve g = testkit::random_curve(rng, 6);
    const NodalCurve c = g.build();
    const Multidegree L = canonical_multidegree(c, 3);
    for (const auto& y : enumerate_subcurves(c, true))
      CHECK(chow_margin(c, L, y) == -chow_margin(c, L, y.complement(c)));
  }
}

TEST_CASE("asymptotic check on the genus (2,1) curve") {
  auto verdict = [](std::vector<Rational> w) {
    return check_asymptotic(testkit::two_component(2, 1, w).build());
  };
  const StabilityVerdict low = verdict({Rational(1, 2), Rational(1, 2), Rational(1, 2)});
  CHECK(low.status == StabilityStatus::stable);
  CHECK(*low.worst_margin == Rational(1, 2) - Rational(9, 22));
  CHECK(verdict({1, 1}).status == StabilityStatus::strictly_semistable);
  const StabilityVerdict high = verdict({1, 1, Rational(1, 2)});
  CHECK(high.status == StabilityStatus::unstable);
  CHECK(*high.worst_margin == Rational(1, 2) - Rational(15, 26));
  CHECK(verdict({}).status == StabilityStatus::stable);
}

TEST_CASE("asymptotic check agrees with the oracle and with canonical finite checks") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    const GraphCurve g = testkit::random_curve(rng, 5);
    if (g.genera.size() == 1) continue;
    const NodalCurve c = g.build();
    const StabilityVerdict a = check_asymptotic(c);
    Rational worst = g.asymptotic_margin(1);
    for (std::uint64_t m = 1; m < g.whole(); ++m) worst = std::min(worst, g.asymptotic_margin(m));
    CHECK(*a.worst_margin == worst);
    for (int r = 1; r <= 3; ++r) {
      const StabilityVerdict f = check_finite(c, canonical_multidegree(c, Rational(6 * r)));
      CHECK(f.status == a.status);
      CHECK(*f.worst_margin == *a.worst_margin);
    }
  }
}

TEST_CASE("published threshold versus direct evaluation") {
  const ThresholdReport t21 = ph_threshold(2, 1);
  CHECK(t21.direct == Rational(2));
  CHECK(t21.published == Rational(1));
  CHECK(t21.discrepancy);
  const ThresholdReport t31 = ph_threshold(3, 1);
  CHECK(t31.direct == Rational(3, 2));
  CHECK(t31.published == Rational(3, 4));
  CHECK_THROWS_AS(ph_threshold(1, 1), InputError);

  // The verdict flips exactly at the direct threshold.
  for (int g1 = 2; g1 <= 4; ++g1) {
    for (int g2 = 1; g2 <= 3; ++g2) {
      const Rational s = ph_threshold(g1, g2).direct;
      if (s > Rational(3)) continue;
      auto at = [&](const Rational& total) {
        return check_asymptotic(testkit::two_component(g1, g2, {total / Rational(3), total / Rational(3),
                                                                total / Rational(3)}).build()).status;
      };
      CHECK(at(s) == StabilityStatus::strictly_semistable);
      CHECK(at(s - Rational(1, 10)) == StabilityStatus::stable);
      if (s + Rational(1, 10) <= Rational(3)) CHECK(at(s + Rational(1, 10)) == StabilityStatus::unstable);
    }
  }
}

TEST_CASE("twist search") {
  const NodalCurve c = testkit::two_component(2, 1).build();
  TwistSearchOptions opt;
  opt.start = degrees({7, 1});
  const auto res = twist_search(c, 2, 3, opt);
  REQUIRE(res.has_value());
  CHECK(res->twist == std::vector<std::int64_t>{0, -1});
  CHECK(res->degrees.degrees == std::vector<Rational>{6, 2});
  CHECK(chow_margin(c, res->degrees, Subcurve::of(c, {"C0"})) == Rational(0));
  CHECK(res->verdict.semistable());
  CHECK(check_finite(c, res->degrees).status == res->verdict.status);

  const auto identity = twist_search(c, 2, 3);
  REQUIRE(identity.has_value());
  CHECK(identity->twist == std::vector<std::int64_t>{0, 0});

  const NodalCurve smooth = GraphCurve{{2}, {}, {}}.build();
  const auto single = twist_search(smooth, 1, 2);
  REQUIRE(single.has_value());
  CHECK(single->twist == std::vector<std::int64_t>{0});

  opt.start = degrees({20, 1});
  CHECK(!twist_search(c, 2, 2, opt).has_value());

  CHECK_THROWS_AS(twist_search(c, 2, -1), InputError);
}

TEST_CASE("twist search is deterministic under parallelism") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 40; ++t) {
    const GraphCurve g = testkit::random_curve(rng, 4);
    const NodalCurve c = g.build();
    Multidegree start = canonical_multidegree(c, 6);
    std::vector<std::int64_t> b(c.component_count());
    for (std::size_t i = 1; i < b.size(); ++i) b[i] = std::uniform_int_distribution<int>(-2, 2)(rng);
    start += twist_degrees(c, b);
    TwistSearchOptions serial, parallel;
    serial.start = parallel.start = start;
    parallel.workers = 4;
    const auto a = twist_search(c, 6, 3, serial);
    const auto p = twist_search(c, 6, 3, parallel);
    REQUIRE(a.has_value() == p.has_value());
    if (!a) continue;
    CHECK(a->twist == p->twist);
    CHECK(a->verdict.semistable());
    CHECK(g.worst_margin(a->degrees.degrees).sign() >= 0);
  }
}

TEST_CASE("twist constraints describe the subcurve inequality") {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 40; ++t) {
    const GraphCurve g = testkit::random_curve(rng, 4);
    const NodalCurve c = g.build();
    const Multidegree base = canonical_multidegree(c, 2);
    const auto cons = twist_constraints(c, base);
    for (int s = 0; s < 10; ++s) {
      std::vector<std::int64_t> b(c.component_count());
      for (std::size_t i = 1; i < b.size(); ++i) b[i] = std::uniform_int_distribution<int>(-2, 2)(rng);
      const Multidegree L = base + twist_degrees(c, b);
      for (const auto& k : cons) {
        Rational lhs = 0;
        for (std::size_t i = 0; i < b.size(); ++i) lhs += Rational(k.coefficients[i] * b[i]);
        const bool inside = k.lower <= lhs && lhs <= k.upper;
        CHECK(inside == (g.margin(L.degrees, k.subcurve.mask()).sign() >= 0));
      }
    }
  }
}

TEST_CASE("parallel subcurve evaluation gives identical verdicts") {
  std::mt19937_64 rng(26);
  for (int t = 0; t < 30; ++t) {
    const NodalCurve c = testkit::random_curve(rng, 6).build();
    CheckOptions par;
    par.workers = 3;
    const StabilityVerdict a = check_asymptotic(c), b = check_asymptotic(c, par);
    CHECK(a.status == b.status);
    REQUIRE(a.witnesses.size() == b.witnesses.size());
    for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
      CHECK(a.witnesses[i].subcurve == b.witnesses[i].subcurve);
      CHECK(a.witnesses[i].margin == b.witnesses[i].margin);
    }
  }
}
