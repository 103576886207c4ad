#pragma once

// Hilbert-Mumford weights for diagonal torus actions on P^N, and heights of
// sections of split projective bundles over P^1.
//
// Sign convention: w_z(lambda) = -min{ <lambda, chi_i> : z_i != 0 }, so that z
// is semistable iff w_z(lambda) >= 0 for every one-parameter subgroup lambda,
// iff 0 lies in the convex hull of the characters on the support of z.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chowkit/polynomial.hpp"
#include "chowkit/rational.hpp"

namespace chowkit {

using IntVector = std::vector<std::int64_t>;
/// Sorted coordinate indices.
using Support = std::vector<std::size_t>;

/// Torus of rank t acting diagonally on N+1 homogeneous coordinates.
class TorusProblem {
 public:
  /// One character per coordinate, all of length t >= 1. Throws InputError.
  static TorusProblem make(std::vector<IntVector> characters);

  std::size_t rank() const { return rank_; }
  std::size_t coordinate_count() const { return raw_.size(); }
  /// Characters as given (GL-type); used for bundle twists.
  const std::vector<IntVector>& raw_characters() const { return raw_; }
  /// scale * chi_i - mean-translate, summing to zero (SL-type).
  const std::vector<IntVector>& characters() const { return normalized_; }
  /// Smallest k making k * (mean character) integral.
  std::int64_t scale() const { return scale_; }

 private:
  std::size_t rank_ = 0;
  std::vector<IntVector> raw_;
  std::vector<IntVector> normalized_;
  std::int64_t scale_ = 1;
};

/// Indices of nonzero coordinates; throws InputError for the zero vector or
/// a length mismatch.
Support support_of(const TorusProblem& p, const std::vector<Rational>& point);

/// Throws InputError for an empty support or out-of-range index.
void validate_support(const TorusProblem& p, const Support& support);

std::int64_t one_ps_weight(const TorusProblem& p, const Support& support, const IntVector& lambda);

struct SemistabilityResult {
  bool semistable = false;
  /// Convex weights on the support summing the normalized characters to 0.
  std::vector<Rational> convex_certificate;
  /// Integer lambda with w_z(lambda) < 0, primitive.
  std::optional<IntVector> destabilizing;
};

/// Exact hull-membership test by phase-one simplex (Bland's rule).
SemistabilityResult is_semistable(const TorusProblem& p, const Support& support);

/// Section of the split bundle P(+O(e_i)) over P^1, e_i = <gamma, chi_i>,
/// given in one affine chart by coordinate polynomials f_i with
/// deg f_i <= degree - e_i.
struct FamilySection {
  IntVector gamma;
  std::vector<Polynomial> coordinates;
  std::int64_t degree = 0;
};

IntVector bundle_twists(const TorusProblem& p, const IntVector& gamma);

/// Throws InputError unless the section is well formed for p.
void validate_section(const TorusProblem& p, const FamilySection& s);

/// Removes the common polynomial factor and the common order of vanishing at
/// infinity, lowering the degree accordingly.
FamilySection reduce_section(const TorusProblem& p, const FamilySection& s);

/// (N+1) * degree - sum e_i of the reduced section.
std::int64_t section_height(const TorusProblem& p, const FamilySection& s);

struct FiberEntry {
  enum class Kind { generic, rational_point, irrational_factor, infinity };
  Kind kind = Kind::generic;
  Rational point;            // rational_point
  Polynomial factor;         // irrational_factor: monic, no rational roots
  Support support;
  bool semistable = false;
};

const char* to_string(FiberEntry::Kind kind);

/// Generic fiber verdict followed by every fiber whose support differs from
/// the generic one: rational points ascending, irrational root classes by
/// coprime square-free factor, then the point at infinity.
std::vector<FiberEntry> fiber_profile(const TorusProblem& p, const FamilySection& s);

struct Ch0Instance {
  TorusProblem problem;
  FamilySection section;
};

struct Ch0Report {
  std::size_t trials = 0;
  std::size_t generated = 0;           // instances drawn, including filtered ones
  std::size_t qualifying = 0;          // with at least one semistable fiber
  std::size_t violations = 0;          // qualifying with negative height
  std::size_t with_unstable_fiber = 0; // qualifying with some unstable fiber
  std::size_t strict_violations = 0;   // ... whose height is not positive
  std::int64_t min_height = 0;
  std::optional<Ch0Instance> first_violation;

  bool passed() const { return violations == 0 && strict_violations == 0 && qualifying == trials; }
};

/// Random instance generator; deterministic in (seed, trial).
Ch0Instance random_ch0_instance(std::uint64_t seed, std::uint64_t trial, std::uint64_t attempt);

Ch0Report ch0_harness(std::uint64_t seed, std::size_t trials, std::size_t workers = 1);

}  // namespace chowkit
