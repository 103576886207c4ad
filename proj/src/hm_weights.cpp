#include "chowkit/hm_weights.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "chowkit/errors.hpp"
#include "chowkit/parallel.hpp"

namespace chowkit {

namespace {

std::int64_t dot(const IntVector& a, const IntVector& b) {
  std::int64_t s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// Phase-one simplex on  sum_i mu_i chi_i = 0, sum_i mu_i = 1, mu >= 0.
// Dense tableau, one artificial per row, Bland's rule.
class HullSimplex {
 public:
  HullSimplex(const std::vector<IntVector>& points, std::size_t rank)
      : rows_(rank + 1), vars_(points.size()), cols_(vars_ + rows_) {
    table_.assign(rows_, std::vector<Rational>(cols_ + 1, Rational(0)));
    for (std::size_t r = 0; r < rank; ++r)
      for (std::size_t j = 0; j < vars_; ++j) table_[r][j] = Rational(points[j][r]);
    for (std::size_t j = 0; j < vars_; ++j) table_[rank][j] = Rational(1);
    table_[rank][cols_] = Rational(1);
    for (std::size_t r = 0; r < rows_; ++r) table_[r][vars_ + r] = Rational(1);
    basis_.resize(rows_);
    std::iota(basis_.begin(), basis_.end(), vars_);
    // Reduced costs for min sum(artificials) with the artificial basis.
    cost_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < vars_; ++j)
      for (std::size_t r = 0; r < rows_; ++r) cost_[j] -= table_[r][j];
    for (std::size_t r = 0; r < rows_; ++r) cost_[cols_] -= table_[r][cols_];
  }

  void solve() {
    while (true) {
      std::size_t entering = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (cost_[j].sign() < 0) {
          entering = j;
          break;
        }
      }
      if (entering == cols_) return;
      std::size_t leaving = rows_;
      Rational best;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (table_[r][entering].sign() <= 0) continue;
        const Rational ratio = table_[r][cols_] / table_[r][entering];
        if (leaving == rows_ || ratio < best || (ratio == best && basis_[r] < basis_[leaving])) {
          leaving = r;
          best = ratio;
        }
      }
      if (leaving == rows_) throw std::logic_error("phase-one simplex is unbounded");
      pivot(leaving, entering);
    }
  }

  // Optimal phase-one value: sum of artificials.
  Rational objective() const { return -cost_[cols_]; }

  std::vector<Rational> primal() const {
    std::vector<Rational> mu(vars_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r)
      if (basis_[r] < vars_) mu[basis_[r]] = table_[r][cols_];
    return mu;
  }

  // Simplex multipliers y = c_B B^-1, read off the artificial columns.
  std::vector<Rational> dual() const {
    std::vector<Rational> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) y[r] = Rational(1) - cost_[vars_ + r];
    return y;
  }

 private:
  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = table_[row][col].inverse();
    for (auto& v : table_[row]) v *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || table_[r][col].is_zero()) continue;
      const Rational f = table_[r][col];
      for (std::size_t j = 0; j <= cols_; ++j) table_[r][j] -= f * table_[row][j];
    }
    if (!cost_[col].is_zero()) {
      const Rational f = cost_[col];
      for (std::size_t j = 0; j <= cols_; ++j) cost_[j] -= f * table_[row][j];
    }
    basis_[row] = col;
  }

  std::size_t rows_;
  std::size_t vars_;
  std::size_t cols_;
  std::vector<std::vector<Rational>> table_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
};

IntVector primitive_integer(const std::vector<Rational>& v) {
  const mpz_class den = common_denominator(v);
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& x : v) {
    mpz_class n = (x * Rational(den, 1)).numerator();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(n);
  }
  IntVector out;
  for (auto& n : ints) {
    if (g != 0) n /= g;
    if (!n.fits_slong_p()) throw InputError("destabilizing direction does not fit in 64 bits");
    out.push_back(n.get_si());
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Support support_at(const FamilySection& s, const Rational& x) {
  Support out;
  for (std::size_t i = 0; i < s.coordinates.size(); ++i)
    if (!s.coordinates[i].is_zero() && !s.coordinates[i](x).is_zero()) out.push_back(i);
  return out;
}

Support generic_support(const FamilySection& s) {
  Support out;
  for (std::size_t i = 0; i < s.coordinates.size(); ++i)
    if (!s.coordinates[i].is_zero()) out.push_back(i);
  return out;
}

}  // namespace

TorusProblem TorusProblem::make(std::vector<IntVector> characters) {
  if (characters.empty()) throw InputError("torus problem needs at least one coordinate");
  const std::size_t t = characters.front().size();
  if (t == 0) throw InputError("characters must have positive length");
  for (const auto& c : characters)
    if (c.size() != t) throw InputError("characters have inconsistent lengths");

  TorusProblem p;
  p.rank_ = t;
  p.raw_ = std::move(characters);
  const auto count = static_cast<std::int64_t>(p.raw_.size());
  IntVector sum(t, 0);
  for (const auto& c : p.raw_)
    for (std::size_t k = 0; k < t; ++k) sum[k] += c[k];
  std::int64_t g = 0;
  for (auto s : sum) g = std::gcd(g, s);
  p.scale_ = count / std::gcd(count, g);
  for (const auto& c : p.raw_) {
    IntVector n(t);
    for (std::size_t k = 0; k < t; ++k) n[k] = p.scale_ * c[k] - p.scale_ * sum[k] / count;
    p.normalized_.push_back(std::move(n));
  }
  return p;
}

Support support_of(const TorusProblem& p, const std::vector<Rational>& point) {
  if (point.size() != p.coordinate_count())
    throw InputError("point has " + std::to_string(point.size()) + " coordinates, expected " +
                     std::to_string(p.coordinate_count()));
  Support s;
  for (std::size_t i = 0; i < point.size(); ++i)
    if (!point[i].is_zero()) s.push_back(i);
  if (s.empty()) throw InputError("projective point with all coordinates zero");
  return s;
}

void validate_support(const TorusProblem& p, const Support& support) {
  if (support.empty()) throw InputError("empty support");
  for (auto i : support)
    if (i >= p.coordinate_count()) throw InputError("support index " + std::to_string(i) + " out of range");
}

std::int64_t one_ps_weight(const TorusProblem& p, const Support& support, const IntVector& lambda) {
  validate_support(p, support);
  if (lambda.size() != p.rank())
    throw InputError("one-parameter subgroup has length " + std::to_string(lambda.size()) + ", expected " +
                     std::to_string(p.rank()));
  std::int64_t least = std::numeric_limits<std::int64_t>::max();
  for (auto i : support) least = std::min(least, dot(lambda, p.characters()[i]));
  return -least;
}

SemistabilityResult is_semistable(const TorusProblem& p, const Support& support) {
  validate_support(p, support);
  std::vector<IntVector> points;
  for (auto i : support) points.push_back(p.characters()[i]);
  HullSimplex lp(points, p.rank());
  lp.solve();

  SemistabilityResult res;
  if (lp.objective().is_zero()) {
    res.semistable = true;
    res.convex_certificate = lp.primal();
    return res;
  }
  // Farkas: y with <y_chi, chi_i> + y_0 <= 0 and y_0 > 0, so lambda = -y_chi.
  const std::vector<Rational> y = lp.dual();
  std::vector<Rational> lambda(p.rank());
  for (std::size_t k = 0; k < p.rank(); ++k) lambda[k] = -y[k];
  IntVector direction = primitive_integer(lambda);
  if (one_ps_weight(p, support, direction) >= 0)
    throw std::logic_error("simplex dual did not yield a destabilizing direction");
  res.destabilizing = std::move(direction);
  return res;
}

IntVector bundle_twists(const TorusProblem& p, const IntVector& gamma) {
  if (gamma.size() != p.rank()) throw InputError("cocycle length does not match torus rank");
  IntVector e;
  for (const auto& c : p.raw_characters()) e.push_back(dot(gamma, c));
  return e;
}

void validate_section(const TorusProblem& p, const FamilySection& s) {
  if (s.coordinates.size() != p.coordinate_count())
    throw InputError("section has " + std::to_string(s.coordinates.size()) + " coordinates, expected " +
                     std::to_string(p.coordinate_count()));
  const IntVector e = bundle_twists(p, s.gamma);
  bool any = false;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (s.coordinates[i].is_zero()) continue;
    any = true;
    if (s.coordinates[i].degree() > s.degree - e[i])
      throw InputError("coordinate " + std::to_string(i) + " has degree " +
                       std::to_string(s.coordinates[i].degree()) + " > degree - e_i = " +
                       std::to_string(s.degree - e[i]));
  }
  if (!any) throw InputError("section has every coordinate identically zero");
}

FamilySection reduce_section(const TorusProblem& p, const FamilySection& s) {
  validate_section(p, s);
  FamilySection r = s;
  Polynomial g;
  for (const auto& f : s.coordinates) g = gcd(g, f);
  if (g.degree() >= 1) {
    for (auto& f : r.coordinates)
      if (!f.is_zero()) f = f / g;
    r.degree -= g.degree();
  }
  const IntVector e = bundle_twists(p, s.gamma);
  std::int64_t at_infinity = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < e.size(); ++i)
    if (!r.coordinates[i].is_zero()) at_infinity = std::min(at_infinity, r.degree - e[i] - r.coordinates[i].degree());
  r.degree -= at_infinity;
  return r;
}

std::int64_t section_height(const TorusProblem& p, const FamilySection& s) {
  const FamilySection r = reduce_section(p, s);
  const IntVector e = bundle_twists(p, r.gamma);
  const std::int64_t twist = std::accumulate(e.begin(), e.end(), std::int64_t{0});
  return static_cast<std::int64_t>(p.coordinate_count()) * r.degree - twist;
}

const char* to_string(FiberEntry::Kind kind) {
  switch (kind) {
    case FiberEntry::Kind::generic: return "generic";
    case FiberEntry::Kind::rational_point: return "rational";
    case FiberEntry::Kind::irrational_factor: return "factor";
    case FiberEntry::Kind::infinity: return "infinity";
  }
  return "unknown";
}

std::vector<FiberEntry> fiber_profile(const TorusProblem& p, const FamilySection& s) {
  const FamilySection r = reduce_section(p, s);
  const IntVector e = bundle_twists(p, r.gamma);
  std::vector<FiberEntry> out;

  const Support generic = generic_support(r);
  out.push_back({FiberEntry::Kind::generic, {}, {}, generic, is_semistable(p, generic).semistable});

  std::vector<Rational> roots;
  std::vector<Polynomial> residual;
  for (auto i : generic) {
    const Polynomial& f = r.coordinates[i];
    Polynomial rest = squarefree_part(f);
    for (const auto& root : rational_roots(f)) {
      roots.push_back(root);
      rest = rest / Polynomial::linear_factor(root);
    }
    residual.push_back(rest.monic());
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  for (const auto& x : roots) {
    Support sup = support_at(r, x);
    out.push_back({FiberEntry::Kind::rational_point, x, {}, sup, is_semistable(p, sup).semistable});
  }

  for (const auto& q : coprime_basis(residual)) {
    Support sup;
    for (auto i : generic)
      if (!(r.coordinates[i] % q).is_zero()) sup.push_back(i);
    out.push_back({FiberEntry::Kind::irrational_factor, {}, q, sup, is_semistable(p, sup).semistable});
  }

  Support at_infinity;
  for (auto i : generic)
    if (r.coordinates[i].degree() == r.degree - e[i]) at_infinity.push_back(i);
  if (at_infinity != generic)
    out.push_back({FiberEntry::Kind::infinity, {}, {}, at_infinity, is_semistable(p, at_infinity).semistable});
  return out;
}

Ch0Instance random_ch0_instance(std::uint64_t seed, std::uint64_t trial, std::uint64_t attempt) {
  std::mt19937_64 rng(splitmix64(splitmix64(seed) ^ splitmix64(trial * 0x100000001B3ULL + attempt)));
  const auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };

  const auto rank = static_cast<std::size_t>(uniform(1, 3));
  const auto count = static_cast<std::size_t>(uniform(2, 5));
  std::vector<IntVector> chars(count, IntVector(rank));
  for (auto& c : chars)
    for (auto& x : c) x = uniform(-2, 2);
  TorusProblem problem = TorusProblem::make(chars);

  FamilySection s;
  s.gamma.resize(rank);
  for (auto& g : s.gamma) g = uniform(-2, 2);
  const IntVector e = bundle_twists(problem, s.gamma);

  std::vector<bool> nonzero(count);
  bool any = false;
  for (std::size_t i = 0; i < count; ++i) any |= (nonzero[i] = uniform(0, 4) != 0);
  if (!any) nonzero[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(count) - 1))] = true;
  std::int64_t top = std::numeric_limits<std::int64_t>::min();
  for (std::size_t i = 0; i < count; ++i)
    if (nonzero[i]) top = std::max(top, e[i]);
  s.degree = top + uniform(0, 2);

  s.coordinates.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!nonzero[i]) continue;
    std::int64_t deg = uniform(0, s.degree - e[i]);
    std::int64_t lead = 0;
    while (lead == 0) lead = uniform(-3, 3);
    Polynomial f = Polynomial::constant(Rational(lead));
    while (deg > 0) {
      if (deg >= 2 && uniform(0, 3) == 0) {
        // x^2 + 1 or x^2 - 2: no rational roots
        f *= uniform(0, 1) ? Polynomial({Rational(1), Rational(0), Rational(1)})
                           : Polynomial({Rational(-2), Rational(0), Rational(1)});
        deg -= 2;
      } else {
        f *= Polynomial::linear_factor(Rational(uniform(-2, 2)));
        --deg;
      }
    }
    s.coordinates[i] = f;
  }
  if (uniform(0, 3) == 0) {
    // common base point, removed again by reduction
    const Polynomial common = Polynomial::linear_factor(Rational(uniform(-2, 2)));
    for (auto& f : s.coordinates)
      if (!f.is_zero()) f *= common;
    s.degree += 1;
  }
  return Ch0Instance{std::move(problem), std::move(s)};
}

Ch0Report ch0_harness(std::uint64_t seed, std::size_t trials, std::size_t workers) {
  if (trials == 0) throw InputError("ch0 harness needs at least one trial");
  constexpr std::uint64_t kMaxAttempts = 10000;

  struct Outcome {
    std::size_t generated = 0;
    bool qualifying = false;
    bool violation = false;
    bool has_unstable = false;
    bool strict_violation = false;
    std::int64_t height = 0;
    std::optional<Ch0Instance> instance;
  };
  std::vector<Outcome> outcomes(trials);
  parallel_for(trials, workers, [&](std::size_t t) {
    Outcome& o = outcomes[t];
    for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
      Ch0Instance inst = random_ch0_instance(seed, t, attempt);
      ++o.generated;
      const auto profile = fiber_profile(inst.problem, inst.section);
      const bool some_semistable = std::any_of(profile.begin(), profile.end(),
                                               [](const FiberEntry& f) { return f.semistable; });
      if (!some_semistable) continue;
      o.qualifying = true;
      o.height = section_height(inst.problem, inst.section);
      o.violation = o.height < 0;
      o.has_unstable = std::any_of(profile.begin(), profile.end(),
                                   [](const FiberEntry& f) { return !f.semistable; });
      o.strict_violation = o.has_unstable && o.height <= 0;
      if (o.violation || o.strict_violation) o.instance = std::move(inst);
      return;
    }
  });

  Ch0Report rep;
  rep.trials = trials;
  rep.min_height = std::numeric_limits<std::int64_t>::max();
  for (auto& o : outcomes) {
    rep.generated += o.generated;
    if (!o.qualifying) continue;
    ++rep.qualifying;
    rep.min_height = std::min(rep.min_height, o.height);
    rep.violations += o.violation;
    rep.with_unstable_fiber += o.has_unstable;
    rep.strict_violations += o.strict_violation;
    if (o.instance && !rep.first_violation) rep.first_violation = std::move(o.instance);
  }
  if (rep.qualifying == 0) rep.min_height = 0;
  return rep;
}

}  // namespace chowkit
