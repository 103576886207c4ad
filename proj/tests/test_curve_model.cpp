#include <random>

#include "doctest.h"

#include "chowkit/curve_model.hpp"
#include "chowkit/errors.hpp"
#include "test_support.hpp"

using namespace chowkit;
using testkit::GraphCurve;

namespace {

CurveDescription describe(std::vector<Component> comps, std::vector<std::pair<std::string, std::string>> nodes,
                          std::vector<CurveDescription::Point> points = {}) {
  return {std::move(comps), std::move(nodes), std::move(points)};
}

}  // namespace

TEST_CASE("arithmetic genus") {
  CHECK(arithmetic_genus(testkit::two_component(2, 1).build()) == 3);
  CHECK(arithmetic_genus(GraphCurve{{2}, {}, {}}.build()) == 2);
  CHECK(arithmetic_genus(GraphCurve{{0}, {{0, 0}}, {}}.build()) == 1);
  CHECK(arithmetic_genus(GraphCurve{{0, 0, 0}, {{0, 1}, {1, 2}, {0, 2}}, {}}.build()) == 1);
}

TEST_CASE("boundary length and omega degrees on subcurves") {
  const NodalCurve ph = testkit::two_component(2, 1).build();
  const Subcurve x1 = Subcurve::of(ph, {"C0"});
  CHECK(boundary_length(ph, x1) == 1);
  CHECK(boundary_length(ph, Subcurve::whole(ph)) == 0);
  CHECK(omega_degree_on(ph, x1) == 3);
  CHECK(omega_degree_on(ph, Subcurve::whole(ph)) == 4);
  CHECK(log_omega_degree_on(ph, x1) == Rational(3));

  const NodalCurve tri = GraphCurve{{1, 1, 1}, {{0, 1}, {1, 2}, {0, 2}}, {}}.build();
  CHECK(boundary_length(tri, Subcurve::of(tri, {"C1"})) == 2);

  const NodalCurve chain = GraphCurve{{1, 0, 1}, {{0, 1}, {1, 2}}, {}}.build();
  CHECK(omega_degree_on(chain, Subcurve::of(chain, {"C1"})) == 0);
}

TEST_CASE("log omega degree with weights") {
  const NodalCurve c =
      testkit::two_component(2, 1, {Rational(1, 5), Rational(2, 5), Rational(3, 5)}).build();
  CHECK(log_omega_degree_on(c, Subcurve::whole(c)) == Rational(26, 5));
  CHECK(log_omega_degree_on(c, Subcurve::whole(c), Weighting::plain) == Rational(4));
  CHECK(log_omega_degree_on(c, Subcurve::of(c, {"C0"})) == Rational(3));
}

TEST_CASE("canonical multidegree") {
  const NodalCurve ph = testkit::two_component(2, 1).build();
  CHECK(canonical_multidegree(ph, 1).degrees == std::vector<Rational>{3, 1});
  CHECK(canonical_multidegree(ph, 2).degrees == std::vector<Rational>{6, 2});

  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const GraphCurve g = testkit::random_curve(rng, 5);
    const NodalCurve c = g.build();
    const Rational r(std::uniform_int_distribution<int>(1, 6)(rng), 2);
    const Multidegree m = canonical_multidegree(c, r);
    CHECK(m.total() == r * g.omega_a(g.whole()));
    CHECK(canonical_multidegree(c, 2 * r) == Rational(2) * m);
    for (std::size_t i = 0; i < c.component_count(); ++i)
      CHECK(m.degrees[i] == r * g.omega_a(std::uint64_t{1} << i));
  }
}

TEST_CASE("twist degrees follow the dual-graph Laplacian") {
  const NodalCurve two = testkit::two_component(2, 1).build();
  CHECK(twist_degrees(two, {0, 1}).degrees == std::vector<Rational>{1, -1});
  CHECK(twist_degrees(two, {4, 4}).degrees == std::vector<Rational>{0, 0});

  const NodalCurve chain = GraphCurve{{1, 1, 1}, {{0, 1}, {1, 2}}, {}}.build();
  CHECK(twist_degrees(chain, {0, 1, 0}).degrees == std::vector<Rational>{1, -2, 1});
  CHECK(twist_degrees(chain, {0, 1, 1}).degrees == std::vector<Rational>{1, -1, 0});

  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const GraphCurve g = testkit::random_curve(rng, 6);
    const NodalCurve c = g.build();
    std::vector<std::int64_t> b(c.component_count());
    for (auto& x : b) x = std::uniform_int_distribution<int>(-3, 3)(rng);
    const Multidegree d = twist_degrees(c, b);
    CHECK(d.total() == Rational(0));
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::int64_t expect = 0;
      for (auto [u, v] : g.edges) {
        if (u == v) continue;
        if (std::size_t(u) == j) expect += b[v] - b[j];
        if (std::size_t(v) == j) expect += b[u] - b[j];
      }
      CHECK(d.degrees[j] == Rational(expect));
    }
  }
}

TEST_CASE("subcurve enumeration") {
  const NodalCurve two = testkit::two_component(2, 1).build();
  CHECK(enumerate_subcurves(two, false).size() == 3);
  CHECK(enumerate_subcurves(two, true).size() == 1);
  const NodalCurve three = GraphCurve{{1, 1, 1}, {{0, 1}, {1, 2}}, {}}.build();
  CHECK(enumerate_subcurves(three, false).size() == 7);
  CHECK(enumerate_subcurves(three, true).size() == 3);
  for (const auto& y : enumerate_subcurves(three, true)) {
    CHECK(!y.is_whole(three));
    CHECK(!y.complement(three).contains(0) == y.contains(0));
  }
  GraphCurve big;
  for (int i = 0; i < 6; ++i) big.genera.push_back(1);
  for (int i = 1; i < 6; ++i) big.edges.emplace_back(i - 1, i);
  CHECK(enumerate_subcurves(big.build(), false).size() == 63);
  CHECK_THROWS_AS(enumerate_subcurves(big.build(), false, 5), SizeLimitError);
}

TEST_CASE("curve validation") {
  CHECK_THROWS_AS(NodalCurve::make(describe({{"A", 1}, {"B", 1}}, {})), InputError);  // disconnected
  CHECK_THROWS_AS(NodalCurve::make(describe({{"A", 1}}, {{"A", "Z"}})), InputError);
  CHECK_THROWS_AS(NodalCurve::make(describe({{"A", -1}}, {})), InputError);
  CHECK_THROWS_AS(NodalCurve::make(describe({{"A", 1}, {"A", 2}}, {{"A", "A"}})), InputError);
  CHECK_THROWS_AS(NodalCurve::make(describe({{"A", 2}}, {}, {{"A", "x", Rational(3, 2), std::nullopt}})),
                  InputError);
  CHECK_THROWS_AS(NodalCurve::make(describe({{"A", 2}}, {},
                                            {{"A", "x", Rational(2, 3), std::string("g")},
                                             {"A", "y", Rational(2, 3), std::string("g")}})),
                  InputError);
  CHECK_THROWS_AS(NodalCurve::make(describe({{"A", 2}}, {},
                                            {{"A", "x", Rational(1, 3), std::nullopt},
                                             {"A", "x", Rational(1, 3), std::nullopt}})),
                  InputError);
  const NodalCurve ok = NodalCurve::make(describe({{"A", 2}}, {},
                                                  {{"A", "x", Rational(0), std::nullopt},
                                                   {"A", "y", Rational(1, 3), std::string("g")},
                                                   {"A", "z", Rational(2, 3), std::string("g")}}));
  CHECK(ok.points().size() == 2);
  CHECK(ok.total_weight() == Rational(1));
}
