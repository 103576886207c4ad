#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "chowkit/chow_curves.hpp"
#include "chowkit/curve_model.hpp"
#include "chowkit/errors.hpp"
#include "chowkit/hm_weights.hpp"
#include "chowkit/json_io.hpp"
#include "chowkit/quotient_sing.hpp"
#include "chowkit/stability_energy.hpp"

#ifndef CHOWKIT_CORPUS_DIR
#define CHOWKIT_CORPUS_DIR "corpus"
#endif

namespace chowkit::cli {

using nlohmann::json;

namespace {

struct Context {
  bool json_output = false;
  std::size_t parallel = 1;
  std::uint64_t seed = 7;
  json output;
  int exit_code = kOk;
};

// Accepts the unicode minus sign as well.
std::string normalize_minus(std::string s) {
  const std::string minus = "\xE2\x88\x92";
  for (auto pos = s.find(minus); pos != std::string::npos; pos = s.find(minus)) s.replace(pos, minus.size(), "-");
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split(normalize_minus(text), ',')) out.push_back(Rational::parse(item));
  if (out.empty()) throw InputError("empty list");
  return out;
}

IntVector parse_ints(const std::string& text) {
  IntVector out;
  for (const auto& r : parse_rationals(text)) out.push_back(r.to_int64());
  return out;
}

// "a,b;c,d" is two rank-2 characters; "a,b,c" without ';' is three rank-1 characters.
std::vector<IntVector> parse_characters(const std::string& text) {
  const std::string t = normalize_minus(text);
  std::vector<IntVector> chars;
  if (t.find(';') == std::string::npos) {
    for (auto v : parse_ints(t)) chars.push_back({v});
  } else {
    for (const auto& group : split(t, ';')) chars.push_back(parse_ints(group));
  }
  return chars;
}

json ints_json(const IntVector& v) { return json(v); }

json chain_json(const ChainData& c) { return json(c.entries); }

json quotient_json(const QuotientType& t) { return {{"m", t.m}, {"q", t.q}}; }

json twist_json(const NodalCurve& curve, const std::vector<std::int64_t>& b) {
  json j = json::object();
  for (std::size_t i = 0; i < b.size(); ++i) j[curve.components()[i].id] = b[i];
  return j;
}

Multidegree parse_degrees(const NodalCurve& curve, const std::string& text) {
  Multidegree m;
  m.degrees = parse_rationals(text);
  if (m.degrees.size() != curve.component_count())
    throw InputError("--degrees has " + std::to_string(m.degrees.size()) + " entries for " +
                     std::to_string(curve.component_count()) + " components");
  return m;
}

json support_json(const Support& s) { return json(s); }

json profile_json(const std::vector<FiberEntry>& profile) {
  json arr = json::array();
  for (const auto& f : profile) {
    json e{{"kind", to_string(f.kind)}, {"support", support_json(f.support)}, {"semistable", f.semistable}};
    if (f.kind == FiberEntry::Kind::rational_point) e["at"] = io::to_json(f.point);
    if (f.kind == FiberEntry::Kind::irrational_factor) e["factor"] = io::polynomial_to_json(f.factor);
    arr.push_back(e);
  }
  return arr;
}

json family_json(const FamilyIntersections& f) {
  return {{"n", f.n}, {"mu", io::to_json(mu_slope(f))}, {"df", io::to_json(df_invariant(f))}};
}

PushforwardPolynomial pushforward_for(const json& doc, const FamilyIntersections& f) {
  if (doc.contains("pushforward")) {
    const json& p = doc.at("pushforward");
    if (p.contains("coefficients")) {
      PushforwardPolynomial d;
      for (const auto& c : p.at("coefficients")) d.coefficients.push_back(io::rational_from_json(c));
      return d;
    }
    const Rational lambda = p.contains("deg_lambda") ? io::rational_from_json(p.at("deg_lambda")) : Rational(0);
    const Rational L2 = p.contains("L2") ? io::rational_from_json(p.at("L2")) : f.Lnp1;
    const Rational Lw = p.contains("Lomega") ? io::rational_from_json(p.at("Lomega")) : relative_omega_degree(f);
    return grr_pushforward(L2, Lw, lambda);
  }
  return grr_pushforward(f.Lnp1, relative_omega_degree(f), Rational(0));
}

int genus_for(const json& doc) {
  if (!doc.contains("genus")) throw InputError("family JSON needs 'genus' for height polynomials");
  return doc.at("genus").get<int>();
}

json kpoly_json(const KPolynomial& p) {
  json arr = json::array();
  for (const auto& c : p) arr.push_back(io::to_json(c));
  return arr;
}

void add_curve_commands(CLI::App& app, Context& ctx) {
  auto* curve = app.add_subcommand("curve", "Chow stability of weighted pointed nodal curves");
  curve->require_subcommand(1);
  curve->fallthrough();

  struct CurveArgs {
    std::string file;
    std::string degrees;
    bool assert_embedding = false;
    std::string threshold;
    std::string r = "1";
    int box = 5;
    int g1 = 0;
    int g2 = 0;
  };
  auto args = std::make_shared<CurveArgs>();

  auto* check = curve->add_subcommand("check", "Finite-degree subcurve criterion");
  check->add_option("--curve", args->file, "curve/v1 JSON file")->required();
  check->add_option("--degrees", args->degrees, "comma-separated component degrees")->required();
  check->add_flag("--assert-embedding", args->assert_embedding, "require integral degrees");
  check->add_option("--threshold", args->threshold, "low-degree caveat threshold (default 2 deg w(a.x))");
  check->callback([args, &ctx] {
    const NodalCurve c = io::curve_from_json(io::read_json_file(args->file));
    CheckOptions opt;
    opt.assert_embedding = args->assert_embedding;
    opt.workers = ctx.parallel;
    if (!args->threshold.empty()) opt.low_degree_threshold = Rational::parse(normalize_minus(args->threshold));
    const Multidegree L = parse_degrees(c, args->degrees);
    const StabilityVerdict v = check_finite(c, L, opt);
    ctx.output = io::verdict_to_json(c, v);
    ctx.output["degrees"] = io::multidegree_to_json(c, L);
    ctx.exit_code = v.semistable() ? kOk : kUnstable;
  });

  auto* asym = curve->add_subcommand("asymptotic", "Asymptotic criterion for w^r(r a.x)");
  asym->add_option("--curve", args->file, "curve/v1 JSON file")->required();
  asym->callback([args, &ctx] {
    const NodalCurve c = io::curve_from_json(io::read_json_file(args->file));
    CheckOptions opt;
    opt.workers = ctx.parallel;
    const StabilityVerdict v = check_asymptotic(c, opt);
    ctx.output = io::verdict_to_json(c, v);
    ctx.output.erase("caveat_low_degree");
    ctx.exit_code = v.semistable() ? kOk : kUnstable;
  });

  auto* twist = curve->add_subcommand("twist-search", "Search integer twists O(sum b_i X_i)");
  twist->add_option("--curve", args->file, "curve/v1 JSON file")->required();
  twist->add_option("-r", args->r, "polarization power (rational)");
  twist->add_option("--box", args->box, "search box half-width");
  twist->add_option("--degrees", args->degrees, "starting multidegree (default: canonical for r)");
  twist->callback([args, &ctx] {
    const NodalCurve c = io::curve_from_json(io::read_json_file(args->file));
    TwistSearchOptions opt;
    opt.workers = ctx.parallel;
    if (!args->degrees.empty()) opt.start = parse_degrees(c, args->degrees);
    const Rational r = Rational::parse(normalize_minus(args->r));
    const Multidegree start = opt.start.value_or(canonical_multidegree(c, r));
    const auto res = twist_search(c, r, args->box, opt);
    ctx.output = {{"start", io::multidegree_to_json(c, start)}, {"box", args->box}, {"found", res.has_value()}};
    if (res) {
      ctx.output["twist"] = twist_json(c, res->twist);
      ctx.output["degrees"] = io::multidegree_to_json(c, res->degrees);
      ctx.output["verdict"] = io::verdict_to_json(c, res->verdict);
    }
    ctx.exit_code = res ? kOk : kUnstable;
  });

  auto* cons = curve->add_subcommand("twist-constraints", "Linear constraints on twists, per subcurve");
  cons->add_option("--curve", args->file, "curve/v1 JSON file")->required();
  cons->add_option("-r", args->r, "polarization power (rational)");
  cons->add_option("--degrees", args->degrees, "base multidegree (default: canonical for r)");
  cons->callback([args, &ctx] {
    const NodalCurve c = io::curve_from_json(io::read_json_file(args->file));
    const Multidegree base = args->degrees.empty()
                                 ? canonical_multidegree(c, Rational::parse(normalize_minus(args->r)))
                                 : parse_degrees(c, args->degrees);
    json arr = json::array();
    for (const auto& k : twist_constraints(c, base)) {
      arr.push_back({{"subcurve", k.subcurve.member_ids(c)},
                     {"coefficients", twist_json(c, k.coefficients)},
                     {"lower", io::to_json(k.lower)},
                     {"upper", io::to_json(k.upper)}});
    }
    ctx.output = {{"base", io::multidegree_to_json(c, base)}, {"constraints", arr}};
  });

  auto* ph = curve->add_subcommand("ph-threshold", "Instability threshold for two components joined at a point");
  ph->add_option("--g1", args->g1, "genus of the point-free component")->required();
  ph->add_option("--g2", args->g2, "genus of the component carrying the points")->required();
  ph->callback([args, &ctx] {
    const ThresholdReport t = ph_threshold(args->g1, args->g2);
    ctx.output = {{"g1", args->g1},
                  {"g2", args->g2},
                  {"direct", io::to_json(t.direct)},
                  {"published", io::to_json(t.published)},
                  {"discrepancy", t.discrepancy}};
  });

  auto* info = curve->add_subcommand("info", "Genus and degree bookkeeping");
  info->add_option("--curve", args->file, "curve/v1 JSON file")->required();
  info->add_option("-r", args->r, "polarization power (rational)");
  info->callback([args, &ctx] {
    const NodalCurve c = io::curve_from_json(io::read_json_file(args->file));
    const Subcurve whole = Subcurve::whole(c);
    ctx.output = {{"curve", io::curve_to_json(c)},
                  {"arithmetic_genus", arithmetic_genus(c)},
                  {"omega_degree", omega_degree_on(c, whole)},
                  {"log_omega_degree", io::to_json(log_omega_degree_on(c, whole))},
                  {"canonical_multidegree",
                   io::multidegree_to_json(c, canonical_multidegree(c, Rational::parse(normalize_minus(args->r))))}};
  });
}

void add_sing_commands(CLI::App& app, Context& ctx) {
  auto* sing = app.add_subcommand("sing", "Cyclic quotient and T-singularity arithmetic");
  sing->require_subcommand(1);
  sing->fallthrough();

  struct SingArgs {
    std::int64_t m = 0;
    std::int64_t q = 0;
    std::string chain;
    std::string mults;
    std::string weights;
    std::string monomials;
    int dim = 2;
    bool du_val = false;
    bool no_du_val = false;
  };
  auto args = std::make_shared<SingArgs>();

  auto* hj = sing->add_subcommand("hj", "Hirzebruch-Jung chain of 1/m(1,q)");
  hj->add_option("-m", args->m)->required();
  hj->add_option("-q", args->q)->required();
  hj->callback([args, &ctx] {
    const QuotientType t = QuotientType::make(args->m, args->q);
    const ChainData c = hj_expand(t);
    ctx.output = {{"type", quotient_json(t)}, {"chain", chain_json(c)}, {"multiplicity", multiplicity(c)}};
  });

  auto* contract = sing->add_subcommand("contract", "Quotient type of a chain");
  contract->add_option("--chain", args->chain)->required();
  contract->callback([args, &ctx] {
    const ChainData c = ChainData::make(parse_ints(args->chain));
    ctx.output = {{"chain", chain_json(c)}, {"type", quotient_json(hj_contract(c))}};
  });

  auto* mult = sing->add_subcommand("mult", "Multiplicity -Z^2 of a chain");
  mult->add_option("--chain", args->chain)->required();
  mult->callback([args, &ctx] {
    const ChainData c = ChainData::make(parse_ints(args->chain));
    ctx.output = {{"chain", chain_json(c)}, {"multiplicity", multiplicity(c)}};
  });

  auto* tc = sing->add_subcommand("t-classify", "Class T decomposition 1/(dn^2)(1,dna-1)");
  tc->add_option("-m", args->m)->required();
  tc->add_option("-q", args->q)->required();
  tc->add_flag("--no-du-val", args->no_du_val, "do not count du Val (n = 1) types");
  tc->callback([args, &ctx] {
    const QuotientType t = QuotientType::make(args->m, args->q);
    const auto d = t_recognize(t, !args->no_du_val);
    ctx.output = {{"type", quotient_json(t)}, {"class_t", d.has_value()}, {"chain", chain_json(hj_expand(t))}};
    if (d) ctx.output["decomposition"] = {{"d", d->d}, {"n", d->n}, {"a", d->a}};
  });

  auto* tch = sing->add_subcommand("t-chain", "Recursive T-chain recognition");
  tch->add_option("--chain", args->chain)->required();
  tch->add_flag("--du-val", args->du_val, "count all-2 chains as class T");
  tch->callback([args, &ctx] {
    const ChainData c = ChainData::make(parse_ints(args->chain));
    ctx.output = {{"chain", chain_json(c)}, {"class_t", t_chain_check(c, args->du_val)}};
  });

  auto* mum = sing->add_subcommand("mumford", "Multiplicity bound (dim+1)!");
  mum->add_option("--dim", args->dim)->required();
  mum->add_option("--mults", args->mults)->required();
  mum->callback([args, &ctx] {
    const IntVector mults = parse_ints(args->mults);
    const auto bad = mumford_check(args->dim, mults);
    json values = json::array();
    for (auto i : bad) values.push_back(mults[i]);
    ctx.output = {{"dim", args->dim},
                  {"bound", mumford_bound(args->dim)},
                  {"multiplicities", ints_json(mults)},
                  {"violations", json(bad)},
                  {"violating_values", values},
                  {"violated", !bad.empty()}};
    ctx.exit_code = bad.empty() ? kOk : kUnstable;
  });

  auto* wo = sing->add_subcommand("worder", "Weighted order of a monomial list");
  wo->add_option("--weights", args->weights)->required();
  wo->add_option("--monomials", args->monomials, "exponent vectors separated by ';'")->required();
  wo->callback([args, &ctx] {
    const IntVector w = parse_ints(args->weights);
    std::vector<IntVector> monos;
    for (const auto& group : split(args->monomials, ';')) monos.push_back(parse_ints(group));
    ctx.output = {{"weights", ints_json(w)}, {"order", weighted_order(monos, w)}};
  });

  auto* disc = sing->add_subcommand("discrepancy", "Discrepancy of a weighted blowup of a smooth point");
  disc->add_option("--weights", args->weights)->required();
  disc->callback([args, &ctx] {
    const IntVector w = parse_ints(args->weights);
    ctx.output = {{"weights", ints_json(w)}, {"discrepancy", wb_discrepancy(w)}};
  });

  auto* kol = sing->add_subcommand("kollar", "Degree-m hypersurface family numerics");
  kol->add_option("-m", args->m)->required();
  kol->callback([args, &ctx] {
    const KollarReport r = kollar_family_report(args->m);
    ctx.output = {{"degree", r.degree},
                  {"blowup_weights", ints_json(r.blowup_weights)},
                  {"discrepancy", r.discrepancy},
                  {"order", r.order},
                  {"adjoint_coefficient", r.adjoint_coefficient},
                  {"ampleness_threshold", r.ampleness_threshold},
                  {"ample", r.ample},
                  {"singularity", quotient_json(r.singularity)},
                  {"chain", chain_json(r.chain)},
                  {"multiplicity", r.multiplicity},
                  {"mumford_bound", r.mumford_bound},
                  {"mumford_violated", r.mumford_violated}};
  });
}

void add_energy_commands(CLI::App& app, Context& ctx) {
  auto file = std::make_shared<std::string>();

  auto* df = app.add_subcommand("df", "Donaldson-Futaki invariant");
  df->require_subcommand(1);
  df->fallthrough();
  auto* compute = df->add_subcommand("compute", "DF invariant and slope");
  compute->add_option("--json,--file", *file, "family JSON file")->required();
  compute->callback([file, &ctx] {
    const json doc = io::read_json_file(*file);
    const FamilyIntersections f = io::family_from_json(doc);
    ctx.output = family_json(f);
    if (doc.contains("N") && doc.contains("degdet")) {
      const Rational rank = io::rational_from_json(doc.at("N")) + Rational(1);
      ctx.output["geometric_height"] = io::to_json(geometric_height(f, rank, io::rational_from_json(doc.at("degdet"))));
    }
  });

  auto* height = app.add_subcommand("height", "Geometric height of the k-th power polarization");
  height->require_subcommand(1);
  height->fallthrough();
  auto* poly = height->add_subcommand("poly", "h(k) as an exact polynomial");
  poly->add_option("--json,--file", *file, "family JSON file")->required();
  poly->callback([file, &ctx] {
    const json doc = io::read_json_file(*file);
    const FamilyIntersections f = io::family_from_json(doc);
    const PushforwardPolynomial D = pushforward_for(doc, f);
    ctx.output = {{"pushforward", kpoly_json(D.coefficients)},
                  {"height", kpoly_json(height_polynomial(f, genus_for(doc), D))}};
  });
  auto* lead = height->add_subcommand("check-leading", "Leading-term identity h(k) = (d/2) DF k^2 + O(k)");
  lead->add_option("--json,--file", *file, "family JSON file")->required();
  lead->callback([file, &ctx] {
    const json doc = io::read_json_file(*file);
    const FamilyIntersections f = io::family_from_json(doc);
    const LeadingTermCheck c = check_leading_term(f, genus_for(doc), pushforward_for(doc, f));
    ctx.output = {{"height", kpoly_json(c.height)},
                  {"cubic", io::to_json(c.cubic)},
                  {"quadratic", io::to_json(c.quadratic)},
                  {"expected_quadratic", io::to_json(c.expected_quadratic)},
                  {"df", io::to_json(df_invariant(f))},
                  {"holds", c.holds}};
    ctx.exit_code = c.holds ? kOk : kUnstable;
  });
}

void add_hm_commands(CLI::App& app, Context& ctx) {
  struct HmArgs {
    std::string chars;
    std::string support;
    std::string lambda;
    std::string point;
    std::string file;
    std::size_t trials = 200;
    std::uint64_t seed = 0;
  };
  auto args = std::make_shared<HmArgs>();

  auto* hm = app.add_subcommand("hm", "Hilbert-Mumford criterion for torus actions");
  hm->require_subcommand(1);
  hm->fallthrough();

  auto* weight = hm->add_subcommand("weight", "w_z(lambda) = -min <lambda, chi_i> over the support");
  weight->add_option("--chars", args->chars, "characters; ';' separates vectors")->required();
  weight->add_option("--support", args->support, "nonzero coordinate indices");
  weight->add_option("--point", args->point, "point coordinates (alternative to --support)");
  weight->add_option("--lambda", args->lambda, "one-parameter subgroup")->required();
  weight->callback([args, &ctx] {
    const TorusProblem p = TorusProblem::make(parse_characters(args->chars));
    Support s;
    if (!args->point.empty()) {
      s = support_of(p, parse_rationals(args->point));
    } else {
      if (args->support.empty()) throw InputError("give --support or --point");
      for (auto i : parse_ints(args->support)) {
        if (i < 0) throw InputError("negative support index");
        s.push_back(static_cast<std::size_t>(i));
      }
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    const IntVector lambda = parse_ints(normalize_minus(args->lambda));
    const std::int64_t w = one_ps_weight(p, s, lambda);
    ctx.output = {{"support", support_json(s)}, {"lambda", ints_json(lambda)}, {"weight", w},
                  {"normalized_characters", json(p.characters())}, {"scale", p.scale()}};
    ctx.exit_code = w >= 0 ? kOk : kUnstable;
  });

  auto* semi = hm->add_subcommand("semistable", "Hull-membership semistability test");
  semi->add_option("--chars", args->chars, "characters; ';' separates vectors")->required();
  semi->add_option("--point", args->point, "point coordinates")->required();
  semi->callback([args, &ctx] {
    const TorusProblem p = TorusProblem::make(parse_characters(args->chars));
    const Support s = support_of(p, parse_rationals(args->point));
    const SemistabilityResult r = is_semistable(p, s);
    ctx.output = {{"support", support_json(s)}, {"semistable", r.semistable},
                  {"normalized_characters", json(p.characters())}, {"scale", p.scale()}};
    if (r.semistable) {
      json cert = json::array();
      for (const auto& c : r.convex_certificate) cert.push_back(io::to_json(c));
      ctx.output["convex_certificate"] = cert;
    } else {
      ctx.output["destabilizing"] = ints_json(*r.destabilizing);
      ctx.output["weight"] = one_ps_weight(p, s, *r.destabilizing);
    }
    ctx.exit_code = r.semistable ? kOk : kUnstable;
  });

  auto* family = app.add_subcommand("family", "Sections of split projective bundles over P^1");
  family->require_subcommand(1);
  family->fallthrough();

  auto* fh = family->add_subcommand("height", "Height (N+1) deg s*O(1) - deg E");
  fh->add_option("--json,--file", args->file, "section JSON file")->required();
  fh->callback([args, &ctx] {
    const json doc = io::read_json_file(args->file);
    const TorusProblem p = io::torus_from_json(doc);
    const FamilySection s = io::section_from_json(doc);
    const FamilySection r = reduce_section(p, s);
    json coords = json::array();
    for (const auto& f : r.coordinates) coords.push_back(io::polynomial_to_json(f));
    ctx.output = {{"height", section_height(p, s)},
                  {"reduced_degree", r.degree},
                  {"twists", ints_json(bundle_twists(p, s.gamma))},
                  {"reduced_coordinates", coords}};
  });

  auto* fp = family->add_subcommand("profile", "Semistability of every fiber of a section");
  fp->add_option("--json,--file", args->file, "section JSON file")->required();
  fp->callback([args, &ctx] {
    const json doc = io::read_json_file(args->file);
    const TorusProblem p = io::torus_from_json(doc);
    const FamilySection s = io::section_from_json(doc);
    const auto profile = fiber_profile(p, s);
    ctx.output = {{"fibers", profile_json(profile)}, {"height", section_height(p, s)}};
  });

  auto* ch0 = family->add_subcommand("ch0", "Random check: a semistable fiber forces height >= 0");
  ch0->add_option("--trials", args->trials);
  auto* seed_opt = ch0->add_option("--seed", args->seed);
  ch0->callback([args, seed_opt, &ctx] {
    const std::uint64_t seed = seed_opt->count() > 0 ? args->seed : ctx.seed;
    const Ch0Report r = ch0_harness(seed, args->trials, ctx.parallel);
    ctx.output = {{"seed", seed},
                  {"trials", r.trials},
                  {"generated", r.generated},
                  {"qualifying", r.qualifying},
                  {"violations", r.violations},
                  {"with_unstable_fiber", r.with_unstable_fiber},
                  {"strict_violations", r.strict_violations},
                  {"min_height", r.min_height},
                  {"passed", r.passed()}};
    ctx.exit_code = r.passed() ? kOk : kUnstable;
  });
}

void add_corpus_commands(CLI::App& app, Context& ctx) {
  auto file = std::make_shared<std::string>(default_corpus_path());
  auto* corpus = app.add_subcommand("corpus", "Bundled regression corpus");
  corpus->require_subcommand(1);
  corpus->fallthrough();
  auto* run = corpus->add_subcommand("run", "Run every corpus case");
  run->add_option("--file", *file, "corpus JSON file");
  run->callback([file, &ctx] {
    bool ok = false;
    ctx.output = run_corpus(*file, ok);
    ctx.exit_code = ok ? kOk : kCorpusFailure;
  });
}

void render(const json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      render(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    return;
  }
  if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) render(j[i], prefix + "[" + std::to_string(i) + "]", out);
    if (j.empty()) out << prefix << ": []\n";
    return;
  }
  out << prefix << ": ";
  if (j.is_array()) {
    out << "(";
    for (std::size_t i = 0; i < j.size(); ++i) out << (i ? "," : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
    out << ")";
  } else {
    out << (j.is_string() ? j.get<std::string>() : j.dump());
  }
  out << "\n";
}

bool scalar_equal(const json& expected, const json& actual) {
  if (expected.is_string() && actual.is_string()) {
    if (expected == actual) return true;
    try {
      return Rational::parse(expected.get<std::string>()) == Rational::parse(actual.get<std::string>());
    } catch (const InputError&) {
      return false;
    }
  }
  if (expected.is_number_integer() && actual.is_string()) {
    try {
      return Rational(expected.get<long long>()) == Rational::parse(actual.get<std::string>());
    } catch (const InputError&) {
      return false;
    }
  }
  return expected == actual;
}

}  // namespace

std::string default_corpus_path() { return std::string(CHOWKIT_CORPUS_DIR) + "/corpus.json"; }

bool json_fragment_matches(const json& expected, const json& actual) {
  if (expected.is_object()) {
    if (!actual.is_object()) return false;
    for (auto it = expected.begin(); it != expected.end(); ++it)
      if (!actual.contains(it.key()) || !json_fragment_matches(it.value(), actual.at(it.key()))) return false;
    return true;
  }
  if (expected.is_array()) {
    if (!actual.is_array() || actual.size() != expected.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (!json_fragment_matches(expected[i], actual[i])) return false;
    return true;
  }
  return scalar_equal(expected, actual);
}

std::string render_text(const json& doc) {
  std::ostringstream out;
  if (!doc.is_structured()) {
    out << doc.dump() << "\n";
  } else {
    render(doc, "", out);
  }
  return out.str();
}

CommandResult run_command(const std::vector<std::string>& args) {
  Context ctx;
  CLI::App app{"Exact GIT stability computations for degenerating families", "chowkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", ctx.json_output, "print results as JSON");
  app.add_option("--parallel", ctx.parallel, "worker threads for subcurves, twist boxes and harness trials")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", ctx.seed, "random seed");

  add_curve_commands(app, ctx);
  add_sing_commands(app, ctx);
  add_energy_commands(app, ctx);
  add_hm_commands(app, ctx);
  add_corpus_commands(app, ctx);

  CommandResult result;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    result.exit_code = ctx.exit_code;
    result.output = std::move(ctx.output);
  } catch (const CLI::CallForHelp&) {
    result.message = app.help();
  } catch (const CLI::CallForAllHelp&) {
    result.message = app.help("", CLI::AppFormatMode::All);
  } catch (const CLI::ParseError& e) {
    result.exit_code = kInputError;
    result.message = e.what();
  } catch (const InputError& e) {
    result.exit_code = kInputError;
    result.message = e.what();
  } catch (const json::exception& e) {
    result.exit_code = kInputError;
    result.message = std::string("malformed JSON input: ") + e.what();
  }
  result.json_output = ctx.json_output;
  return result;
}

json run_corpus(const std::string& path, bool& all_passed) {
  const json corpus = io::read_json_file(path);
  if (!corpus.contains("cases") || !corpus.at("cases").is_array()) throw InputError("corpus has no 'cases' array");
  const std::string dir = std::filesystem::path(path).parent_path().string();

  json report = json::array();
  std::size_t passed = 0;
  for (const auto& c : corpus.at("cases")) {
    if (!c.contains("id") || !c.contains("command") || !c.contains("expected"))
      throw InputError("corpus case needs id, command and expected");
    std::vector<std::string> args;
    for (const auto& a : c.at("command")) {
      std::string s = a.get<std::string>();
      const std::string key = "${CORPUS_DIR}";
      for (auto pos = s.find(key); pos != std::string::npos; pos = s.find(key)) s.replace(pos, key.size(), dir);
      args.push_back(s);
    }
    if (!args.empty() && args.front() == "corpus") throw InputError("corpus cases may not invoke the corpus runner");
    const CommandResult r = run_command(args);
    const int expected_exit = c.value("exit", 0);
    const bool ok = r.exit_code == expected_exit && json_fragment_matches(c.at("expected"), r.output);
    passed += ok;
    json entry{{"id", c.at("id")}, {"passed", ok}, {"exit", r.exit_code}};
    if (c.contains("provenance")) entry["provenance"] = c.at("provenance");
    if (!ok) {
      entry["expected"] = c.at("expected");
      entry["actual"] = r.output;
      if (!r.message.empty()) entry["message"] = r.message;
    }
    report.push_back(entry);
  }
  all_passed = passed == report.size();
  return {{"corpus", path}, {"cases", report.size()}, {"passed", passed}, {"results", report}};
}

}  // namespace chowkit::cli
