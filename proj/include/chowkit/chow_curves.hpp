#pragma once

// Chow (semi)stability of polarized weighted pointed nodal curves through the
// subcurve inequality
//
//   | (deg_L Y + sum_{x_j in Y} a_j/2)
//     - (deg w(a.x)|_Y / deg w(a.x)) (deg_L X + sum_j a_j/2) |  <=  l_Y / 2,
//
// its asymptotic form for L = w^r(r a.x), and integer twist search.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "chowkit/curve_model.hpp"
#include "chowkit/rational.hpp"

namespace chowkit {

enum class StabilityStatus { stable, strictly_semistable, unstable };

const char* to_string(StabilityStatus status);

struct Witness {
  Subcurve subcurve;
  Rational margin;  // l_Y/2 - |deviation|
};

struct StabilityVerdict {
  StabilityStatus status = StabilityStatus::stable;
  /// Subcurves with margin <= 0, or the minimizers when every margin is
  /// positive. Sorted by (margin, mask).
  std::vector<Witness> witnesses;
  /// Minimum margin over proper subcurves; empty for irreducible curves.
  std::optional<Rational> worst_margin;
  bool caveat_low_degree = false;

  bool semistable() const { return status != StabilityStatus::unstable; }
};

struct CheckOptions {
  /// deg_L X below this raises caveat_low_degree; default 2 (2g - 2 + sum a).
  std::optional<Rational> low_degree_threshold;
  /// Require integral component degrees (an actual embedding).
  bool assert_embedding = false;
  std::size_t subcurve_limit = kDefaultSubcurveLimit;
  std::size_t workers = 1;
};

/// Signed deviation Phi(Y). Requires deg w(a.x) > 0.
Rational chow_margin(const NodalCurve& curve, const Multidegree& degrees, const Subcurve& y);

StabilityVerdict check_finite(const NodalCurve& curve, const Multidegree& degrees,
                              const CheckOptions& options = {});

/// Asymptotic verdict for w^r(r a.x); r cancels out.
StabilityVerdict check_asymptotic(const NodalCurve& curve, const CheckOptions& options = {});

struct ThresholdReport {
  Rational direct;        // (g1+g2-1)/(g1-1)
  Rational published;     // (g1+g2-1)/(2(g1-1))
  bool discrepancy = false;
};

/// Total weight on X_2 at which the two-component one-node curve of genera
/// (g1, g2) becomes asymptotically unstable, from direct evaluation, next to
/// the value as published.
ThresholdReport ph_threshold(int g1, int g2);

/// lower <= sum_j coefficients[j] * b_j <= upper: the condition on a twist b
/// for subcurve Y to satisfy the subcurve inequality on base + twist(b).
struct TwistConstraint {
  Subcurve subcurve;
  std::vector<std::int64_t> coefficients;
  Rational lower;
  Rational upper;
};

std::vector<TwistConstraint> twist_constraints(const NodalCurve& curve, const Multidegree& base,
                                               std::size_t subcurve_limit = kDefaultSubcurveLimit);

struct TwistResult {
  std::vector<std::int64_t> twist;  // b, with b[0] = 0
  Multidegree degrees;              // base + twist_degrees(b)
  StabilityVerdict verdict;
};

struct TwistSearchOptions {
  /// Starting multidegree; defaults to canonical_multidegree(r).
  std::optional<Multidegree> start;
  std::size_t subcurve_limit = kDefaultSubcurveLimit;
  std::size_t workers = 1;
};

/// Enumerates b in [-box, box]^(c-1) (b[0] pinned to 0) by increasing
/// sup-norm, lexicographically within a norm, and returns the first twist
/// whose multidegree is positive and not unstable.
std::optional<TwistResult> twist_search(const NodalCurve& curve, const Rational& r, int box,
                                        const TwistSearchOptions& options = {});

}  // namespace chowkit
