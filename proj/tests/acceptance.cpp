// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "chowkit/chow_curves.hpp"
#include "chowkit/hm_weights.hpp"
#include "chowkit/quotient_sing.hpp"
#include "chowkit/stability_energy.hpp"
#include "commands.hpp"
#include "test_support.hpp"

using namespace chowkit;
using nlohmann::json;

namespace {

const std::string kCorpus = CHOWKIT_CORPUS_DIR;

// Collects the first few failure notes for a criterion.
struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;
  std::size_t checks = 0;

  void expect(bool cond, const std::string& what) {
    ++checks;
    if (cond) return;
    ok = false;
    if (notes.size() < 5) notes.push_back(what);
  }
};

json run_cli(std::vector<std::string> args, int expected_exit, Outcome& out) {
  const auto r = cli::run_command(args);
  std::string joined;
  for (const auto& a : args) joined += a + " ";
  out.expect(r.exit_code == expected_exit,
             joined + "exited " + std::to_string(r.exit_code) + " (expected " + std::to_string(expected_exit) + ")" +
                 (r.message.empty() ? "" : ": " + r.message));
  return r.output;
}

Outcome criterion_1() {
  Outcome o;
  const json hj = run_cli({"sing", "hj", "-m", "180", "-q", "29"}, 0, o);
  o.expect(hj["chain"] == json({7, 2, 2, 2, 3, 2, 2, 2, 2}), "chain " + hj["chain"].dump());
  const json mult = run_cli({"sing", "mult", "--chain", "7,2,2,2,3,2,2,2,2"}, 0, o);
  o.expect(mult["multiplicity"] == 8, "multiplicity " + mult["multiplicity"].dump());
  const json t = run_cli({"sing", "t-classify", "-m", "180", "-q", "29"}, 0, o);
  o.expect(t["class_t"] == true && t.contains("decomposition"), "not class T");
  if (t.contains("decomposition")) {
    const std::int64_t d = t["decomposition"]["d"], n = t["decomposition"]["n"], a = t["decomposition"]["a"];
    o.expect(d * n * n == 180 && d * n * a - 1 == 29 && std::gcd(n, a) == 1, "bad decomposition " + t.dump());
  }
  const json mum = run_cli({"sing", "mumford", "--dim", "2", "--mults", "8"}, 3, o);
  o.expect(mum["bound"] == 6 && mum["violated"] == true && mum["violations"] == json({0}), "mumford " + mum.dump());
  return o;
}

Outcome criterion_2() {
  Outcome o;
  const std::vector<std::string> chains{"4", "2,5", "2,7,2,2,3", "7,2,2,2", "2,10,2,2,2,2,2,3"};
  std::vector<std::int64_t> mults;
  for (const auto& c : chains) mults.push_back(run_cli({"sing", "mult", "--chain", c}, 0, o)["multiplicity"]);
  o.expect(mults == std::vector<std::int64_t>{4, 5, 8, 7, 11}, "multiplicities " + json(mults).dump());
  std::string list;
  for (auto m : mults) list += (list.empty() ? "" : ",") + std::to_string(m);
  const json mum = run_cli({"sing", "mumford", "--dim", "2", "--mults", list}, 3, o);
  o.expect(mum["violations"] == json({2, 3, 4}), "violations " + mum["violations"].dump());
  return o;
}

Outcome criterion_3() {
  Outcome o;
  const json k = run_cli({"sing", "kollar", "-m", "31"}, 0, o);
  o.expect(k["discrepancy"] == 12, "discrepancy " + k["discrepancy"].dump());
  o.expect(k["order"] == 30, "order " + k["order"].dump());
  o.expect(k["adjoint_coefficient"] == 18, "adjoint " + k["adjoint_coefficient"].dump());
  o.expect(k["ampleness_threshold"] == 22, "threshold " + k["ampleness_threshold"].dump());
  o.expect(k["ample"] == true, "not ample");
  return o;
}

Outcome criterion_4() {
  Outcome o;
  for (std::int64_t m = 2; m <= 500; ++m) {
    for (std::int64_t q = 1; q < m; ++q) {
      if (std::gcd(m, q) != 1) continue;
      const QuotientType t = QuotientType::make(m, q);
      const ChainData c = hj_expand(t);
      o.expect(hj_contract(c) == t, "round trip fails at " + std::to_string(m) + "," + std::to_string(q));
      if (m > 200) continue;
      std::int64_t inv = 1;
      while ((inv * q) % m != 1) ++inv;
      ChainData reversed = c;
      std::reverse(reversed.entries.begin(), reversed.entries.end());
      o.expect(hj_expand(QuotientType::make(m, inv)) == reversed,
               "duality fails at " + std::to_string(m) + "," + std::to_string(q));
    }
  }
  return o;
}

Outcome criterion_5() {
  Outcome o;
  for (bool du_val : {true, false}) {
    const auto generated = testkit::generate_t_chains(300, du_val);
    for (std::int64_t m = 2; m <= 300; ++m) {
      for (std::int64_t q = 1; q < m; ++q) {
        if (std::gcd(m, q) != 1) continue;
        const QuotientType t = QuotientType::make(m, q);
        const bool divisible = ((q + 1) * (q + 1)) % m == 0 && (du_val || q != m - 1);
        const auto decomposition = t_recognize(t, du_val);
        bool constructive = false;
        if (decomposition) {
          const auto [d, n, a] = *decomposition;
          constructive = d * n * n == m && d * n * a - 1 == q && std::gcd(n, a) == 1;
        }
        const ChainData c = hj_expand(t);
        const bool recursive = t_chain_check(c, du_val);
        const bool forward = generated.count(c.entries) > 0;
        o.expect(divisible == constructive && constructive == recursive && recursive == forward,
                 "disagreement at " + std::to_string(m) + "," + std::to_string(q) + (du_val ? " (du Val)" : ""));
      }
    }
  }
  return o;
}

Outcome criterion_6() {
  Outcome o;
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const testkit::GraphCurve g = testkit::random_curve(rng, 6);
    const NodalCurve c = g.build();
    const std::string tag = "curve " + std::to_string(trial);

    const Multidegree L = canonical_multidegree(c, 2);
    for (const auto& y : enumerate_subcurves(c, false)) {
      if (y.is_whole(c)) continue;
      o.expect(chow_margin(c, L, y) == -chow_margin(c, L, y.complement(c)), tag + ": antisymmetry");
    }

    mpz_class den = 1;
    for (const auto& p : c.points()) den = lcm(den, p.weight.denominator());
    const StabilityVerdict asym = check_asymptotic(c);
    for (int k = 1; k <= 3; ++k) {
      const Rational r = Rational(den, 1) * Rational(k);
      const Multidegree Lr = canonical_multidegree(c, r);
      o.expect(Lr.all_integral(), tag + ": denominators not cleared");
      const StabilityVerdict f = check_finite(c, Lr);
      o.expect(f.status == asym.status, tag + ": finite vs asymptotic at r=" + r.str());
      o.expect(f.worst_margin == asym.worst_margin, tag + ": margins differ at r=" + r.str());
      // Scaling the polarization by a rational factor leaves the verdict unchanged.
      const StabilityVerdict scaled = check_finite(c, canonical_multidegree(c, r * Rational(5, 3)));
      o.expect(scaled.status == f.status, tag + ": scaling changes verdict");
    }
  }
  return o;
}

Outcome criterion_7() {
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> scan{
      {"ph-g2-g1-sum3_2.json", "stable"}, {"ph-g2-g1-sum2.json", "strictly_semistable"},
      {"ph-g2-g1-sum5_2.json", "unstable"}};
  const std::vector<Rational> totals{Rational(3, 2), Rational(2), Rational(5, 2)};
  for (std::size_t i = 0; i < scan.size(); ++i) {
    const json v = run_cli({"curve", "asymptotic", "--curve", kCorpus + "/" + scan[i].first},
                       scan[i].second == "unstable" ? 3 : 0, o);
    o.expect(v["status"] == scan[i].second, scan[i].first + ": " + v["status"].dump());
    // Oracle: direct evaluation of the subcurve inequality on X1 = complement of X2.
    const testkit::GraphCurve g = testkit::two_component(2, 1, {totals[i]});
    const Rational m = g.asymptotic_margin(1);
    const std::string want = m.sign() > 0 ? "stable" : (m.is_zero() ? "strictly_semistable" : "unstable");
    o.expect(want == scan[i].second, "oracle disagrees at total " + totals[i].str());
  }
  const json t = run_cli({"curve", "ph-threshold", "--g1", "2", "--g2", "1"}, 0, o);
  o.expect(t["direct"] == "2/1", "direct " + t["direct"].dump());
  o.expect(t["published"] == "1/1", "published " + t["published"].dump());
  o.expect(t["discrepancy"] == true, "discrepancy not flagged");
  return o;
}

Outcome criterion_8() {
  Outcome o;
  const std::string path = kCorpus + "/genus2-genus1.json";
  run_cli({"curve", "check", "--curve", path, "--degrees", "7,1"}, 3, o);
  const json r = run_cli({"curve", "twist-search", "--curve", path, "-r", "2", "--degrees", "7,1", "--box", "3"}, 0, o);
  o.expect(r["found"] == true, "no twist found");
  if (r["found"] != true) return o;
  o.expect(r["verdict"]["status"] != "unstable", "twisted verdict unstable");
  std::string degrees;
  for (const auto& [id, d] : r["degrees"].items()) degrees += (degrees.empty() ? "" : ",") + d.get<std::string>();
  const json post = run_cli({"curve", "check", "--curve", path, "--degrees", degrees}, 0, o);
  o.expect(post["status"] == r["verdict"]["status"], "post-verification " + post.dump());
  return o;
}

Outcome criterion_9() {
  Outcome o;
  std::mt19937_64 rng(909);
  auto rational = [&](int range) {
    return Rational(std::uniform_int_distribution<int>(-range, range)(rng), std::uniform_int_distribution<int>(1, 7)(rng));
  };
  for (int trial = 0; trial < 100; ++trial) {
    FamilyIntersections f;
    f.n = 1;
    const int genus = std::uniform_int_distribution<int>(0, 6)(rng);
    f.Lnp1 = rational(50);
    f.fiber_Ln = Rational(std::uniform_int_distribution<int>(1, 40)(rng), std::uniform_int_distribution<int>(1, 4)(rng));
    const Rational Lomega = rational(50);
    f.LnK = Lomega;
    f.fiber_Ln1K = Rational(2 * genus - 2);
    const int terms = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int i = 0; i < terms; ++i) {
      BoundaryTerm b{Rational(std::uniform_int_distribution<int>(1, 8)(rng), 8), rational(20),
                     Rational(std::uniform_int_distribution<int>(1, 6)(rng))};
      f.LnK += b.coefficient * b.total_degree;
      f.fiber_Ln1K += b.coefficient * b.fiber_degree;
      f.boundary.push_back(b);
    }
    const KPolynomial h = height_polynomial(f, genus, grr_pushforward(f.Lnp1, Lomega, rational(10)));
    const Rational cubic = h.size() > 3 ? h[3] : Rational(0);
    const Rational quadratic = h.size() > 2 ? h[2] : Rational(0);
    o.expect(h.size() <= 4, "degree above 3");
    o.expect(cubic.is_zero(), "k^3 coefficient " + cubic.str());
    o.expect(quadratic == f.fiber_Ln / Rational(2) * df_invariant(f), "k^2 coefficient " + quadratic.str());
  }
  return o;
}

Outcome criterion_10() {
  Outcome o;
  std::mt19937_64 rng(1010);
  for (int trial = 0; trial < 300; ++trial) {
    const testkit::RandomTorus r = testkit::random_torus(rng, 1);
    const TorusProblem p = TorusProblem::make(r.chars);
    const SemistabilityResult res = is_semistable(p, r.support);
    const bool lattice = testkit::lattice_semistable(r.chars, r.support, 5);
    o.expect(res.semistable == lattice, "trial " + std::to_string(trial) + ": hull " + std::to_string(res.semistable) +
                                            " vs lattice " + std::to_string(lattice));
  }
  return o;
}

Outcome criterion_11() {
  Outcome o;
  const json r = run_cli({"family", "ch0", "--trials", "200", "--seed", "7"}, 0, o);
  o.expect(r["qualifying"] == 200, "qualifying " + r["qualifying"].dump());
  o.expect(r["violations"] == 0, "violations " + r["violations"].dump());
  o.expect(r["min_height"].get<std::int64_t>() >= 0, "min height " + r["min_height"].dump());
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"HJ chain, multiplicity, class T and bound for 1/180(1,29)", criterion_1},
      {"Lee-Park chain multiplicities and bound violations", criterion_2},
      {"degree-31 hypersurface family numerics", criterion_3},
      {"HJ round trip (m <= 500) and duality (m <= 200)", criterion_4},
      {"class T: divisibility, decomposition, recursion (m <= 300)", criterion_5},
      {"subcurve inequality properties on 500 random curves", criterion_6},
      {"two-component threshold scan and surfaced discrepancy", criterion_7},
      {"twist search from (7,1), post-verified", criterion_8},
      {"leading-term identity on 100 random families", criterion_9},
      {"hull membership vs bounded lattice on 300 problems", criterion_10},
      {"nonnegative height with a semistable fiber, 200 sections", criterion_11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << "  [" << (i + 1) << "] " << criteria[i].first << " (" << o.checks
              << " checks)\n";
    for (const auto& n : o.notes) std::cout << "        " << n << "\n";
    failed += !o.ok;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
