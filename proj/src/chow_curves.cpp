#include "chowkit/chow_curves.hpp"

#include <algorithm>

#include "chowkit/errors.hpp"
#include "chowkit/parallel.hpp"

namespace chowkit {

namespace {

Rational total_log_degree(const NodalCurve& curve) {
  const Rational total = log_omega_degree_on(curve, Subcurve::whole(curve), Weighting::with_weights);
  if (total.sign() <= 0)
    throw InputError("total log-canonical degree must be positive, got " + total.str());
  return total;
}

Rational weight_on(const NodalCurve& curve, const Subcurve& y) {
  Rational s = 0;
  for (std::size_t i : y.members()) s += curve.weight_on(i);
  return s;
}

// Shared driver: margin(Y) for every complement-deduplicated proper subcurve,
// reduced to a verdict with deterministic witness order.
template <typename MarginFn>
StabilityVerdict classify(const NodalCurve& curve, const CheckOptions& options, MarginFn&& margin_of) {
  const std::vector<Subcurve> subcurves = enumerate_subcurves(curve, true, options.subcurve_limit);
  std::vector<Rational> margins(subcurves.size());
  parallel_for(subcurves.size(), options.workers,
               [&](std::size_t k) { margins[k] = margin_of(subcurves[k]); });

  StabilityVerdict v;
  if (subcurves.empty()) return v;  // irreducible: vacuously stable

  Rational worst = *std::min_element(margins.begin(), margins.end());
  v.worst_margin = worst;
  const Rational cutoff = worst.sign() > 0 ? worst : Rational(0);
  for (std::size_t k = 0; k < subcurves.size(); ++k)
    if (margins[k] <= cutoff) v.witnesses.push_back({subcurves[k], margins[k]});
  std::sort(v.witnesses.begin(), v.witnesses.end(), [](const Witness& a, const Witness& b) {
    if (a.margin != b.margin) return a.margin < b.margin;
    return a.subcurve.mask() < b.subcurve.mask();
  });
  v.status = worst.sign() < 0    ? StabilityStatus::unstable
             : worst.sign() == 0 ? StabilityStatus::strictly_semistable
                                 : StabilityStatus::stable;
  return v;
}

void validate_degrees(const NodalCurve& curve, const Multidegree& degrees, bool assert_embedding) {
  if (degrees.degrees.size() != curve.component_count())
    throw InputError("multidegree has " + std::to_string(degrees.degrees.size()) + " entries for " +
                     std::to_string(curve.component_count()) + " components");
  for (std::size_t i = 0; i < degrees.degrees.size(); ++i) {
    if (degrees.degrees[i].sign() <= 0)
      throw InputError("polarization degree on '" + curve.components()[i].id + "' must be positive");
    if (assert_embedding && !degrees.degrees[i].is_integer())
      throw InputError("polarization degree on '" + curve.components()[i].id + "' is not integral");
  }
}

}  // namespace

const char* to_string(StabilityStatus status) {
  switch (status) {
    case StabilityStatus::stable: return "stable";
    case StabilityStatus::strictly_semistable: return "strictly_semistable";
    case StabilityStatus::unstable: return "unstable";
  }
  return "unknown";
}

Rational chow_margin(const NodalCurve& curve, const Multidegree& degrees, const Subcurve& y) {
  const Rational total = total_log_degree(curve);
  if (degrees.degrees.size() != curve.component_count()) throw InputError("multidegree size mismatch");
  const Rational half(1, 2);
  const Rational local = degrees.on(y) + half * weight_on(curve, y);
  const Rational global = degrees.total() + half * curve.total_weight();
  return local - log_omega_degree_on(curve, y) / total * global;
}

StabilityVerdict check_finite(const NodalCurve& curve, const Multidegree& degrees,
                              const CheckOptions& options) {
  const Rational total = total_log_degree(curve);
  validate_degrees(curve, degrees, options.assert_embedding);

  const Rational deg_l = degrees.total();
  const Rational half_weights = Rational(1, 2) * curve.total_weight();
  StabilityVerdict v = classify(curve, options, [&](const Subcurve& y) {
    const Rational phi = degrees.on(y) + Rational(1, 2) * weight_on(curve, y) -
                         log_omega_degree_on(curve, y) / total * (deg_l + half_weights);
    return Rational(boundary_length(curve, y), 2) - phi.abs();
  });
  const Rational threshold = options.low_degree_threshold.value_or(Rational(2) * total);
  v.caveat_low_degree = deg_l < threshold;
  return v;
}

StabilityVerdict check_asymptotic(const NodalCurve& curve, const CheckOptions& options) {
  const Rational total = total_log_degree(curve);
  const Rational omega_total = log_omega_degree_on(curve, Subcurve::whole(curve), Weighting::plain);
  return classify(curve, options, [&](const Subcurve& y) {
    const Rational dev = log_omega_degree_on(curve, y, Weighting::plain) -
                         log_omega_degree_on(curve, y) / total * omega_total;
    return Rational(boundary_length(curve, y), 2) - Rational(1, 2) * dev.abs();
  });
}

ThresholdReport ph_threshold(int g1, int g2) {
  if (g1 < 2 || g2 < 1) throw InputError("ph-threshold needs g1 >= 2 and g2 >= 1");
  ThresholdReport r;
  r.direct = Rational(g1 + g2 - 1, g1 - 1);
  r.published = Rational(g1 + g2 - 1, 2 * (g1 - 1));
  r.discrepancy = r.direct != r.published;
  return r;
}

std::vector<TwistConstraint> twist_constraints(const NodalCurve& curve, const Multidegree& base,
                                               std::size_t subcurve_limit) {
  const std::size_t n = curve.component_count();
  std::vector<TwistConstraint> out;
  for (const Subcurve& y : enumerate_subcurves(curve, true, subcurve_limit)) {
    TwistConstraint c;
    c.subcurve = y;
    c.coefficients.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!y.contains(i)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y.contains(j)) continue;
        c.coefficients[j] += curve.node_count(i, j);
        c.coefficients[i] -= curve.node_count(i, j);
      }
    }
    const Rational phi = chow_margin(curve, base, y);
    const Rational half_l(boundary_length(curve, y), 2);
    c.lower = -half_l - phi;
    c.upper = half_l - phi;
    out.push_back(std::move(c));
  }
  return out;
}

std::optional<TwistResult> twist_search(const NodalCurve& curve, const Rational& r, int box,
                                        const TwistSearchOptions& options) {
  if (box < 0) throw InputError("twist box must be nonnegative");
  const Multidegree base = options.start.value_or(canonical_multidegree(curve, r));
  if (base.degrees.size() != curve.component_count()) throw InputError("multidegree size mismatch");
  if (!base.all_integral())
    throw InputError("starting multidegree is not integral; choose r clearing denominators");
  total_log_degree(curve);

  const std::size_t free = curve.component_count() - 1;
  CheckOptions check;
  check.subcurve_limit = options.subcurve_limit;

  // Candidate generator: sup-norm k shell, lexicographic odometer over [-k, k]^free.
  struct Shell {
    int k;
    std::vector<std::int64_t> digits;
    bool done = false;
  };
  const auto sup_norm = [](const std::vector<std::int64_t>& v) {
    std::int64_t s = 0;
    for (auto x : v) s = std::max<std::int64_t>(s, x < 0 ? -x : x);
    return s;
  };

  const auto evaluate = [&](const std::vector<std::int64_t>& tail) -> std::optional<TwistResult> {
    std::vector<std::int64_t> b(1, 0);
    b.insert(b.end(), tail.begin(), tail.end());
    Multidegree degrees = base + twist_degrees(curve, b);
    for (const auto& d : degrees.degrees)
      if (d.sign() <= 0) return std::nullopt;
    StabilityVerdict v = check_finite(curve, degrees, check);
    if (!v.semistable()) return std::nullopt;
    return TwistResult{std::move(b), std::move(degrees), std::move(v)};
  };

  const std::size_t batch_size = std::max<std::size_t>(1, options.workers) * 16;
  for (int k = 0; k <= box; ++k) {
    Shell shell{k, std::vector<std::int64_t>(free, -k)};
    if (free == 0 && k > 0) break;
    while (!shell.done) {
      std::vector<std::vector<std::int64_t>> batch;
      while (!shell.done && batch.size() < batch_size) {
        if (sup_norm(shell.digits) == k) batch.push_back(shell.digits);
        // advance odometer, last coordinate fastest
        std::size_t pos = free;
        while (pos > 0) {
          --pos;
          if (shell.digits[pos] < k) {
            ++shell.digits[pos];
            for (std::size_t q = pos + 1; q < free; ++q) shell.digits[q] = -k;
            break;
          }
          if (pos == 0) shell.done = true;
        }
        if (free == 0) shell.done = true;
      }
      std::vector<std::optional<TwistResult>> results(batch.size());
      parallel_for(batch.size(), options.workers, [&](std::size_t i) { results[i] = evaluate(batch[i]); });
      for (auto& res : results) {
        if (!res) continue;
        // post-verification on the returned multidegree
        const StabilityVerdict again = check_finite(curve, res->degrees, check);
        if (!again.semistable()) throw std::logic_error("twist search post-verification failed");
        return res;
      }
    }
  }
  return std::nullopt;
}

}  // namespace chowkit
