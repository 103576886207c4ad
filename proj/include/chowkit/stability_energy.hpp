#pragma once

// Donaldson-Futaki invariant and geometric height of a polarized log family
// over a curve, from user-supplied intersection numbers.

#include <vector>

#include "chowkit/rational.hpp"

namespace chowkit {

struct BoundaryTerm {
  Rational coefficient;    // a_i in (0, 1]
  Rational total_degree;   // (L|_{D_i})^n on the total space
  Rational fiber_degree;   // degree of L|_{D_i} on a fiber
};

struct FamilyIntersections {
  int n = 1;                 // fiber dimension
  Rational Lnp1;             // L^{n+1}
  Rational LnK;              // L^n . (K_{X/B} + D)
  Rational fiber_Ln;         // L^n on a fiber (its degree)
  Rational fiber_Ln1K;       // L^{n-1} . (K_X + D) on a fiber
  std::vector<BoundaryTerm> boundary;

  /// Throws InputError unless n >= 1, fiber_Ln > 0 and every a_i in (0, 1].
  void validate() const;
};

/// Coefficients of a polynomial in k, ascending powers.
using KPolynomial = std::vector<Rational>;

/// deg det pi_*(L^k) as a polynomial in k (degree <= 2 for curve families).
struct PushforwardPolynomial {
  KPolynomial coefficients;
};

/// (n + 1) / (2n)
Rational chow_weight_constant(int n);

Rational mu_slope(const FamilyIntersections& f);

/// (n+1) L^n.(K+D) - n L^{n+1} mu
Rational df_invariant(const FamilyIntersections& f);

/// (N+1) L^{n+1} - (n+1) d degdet + c_n sum a_i [(N+1) L_i^n - n d_i degdet],
/// the expansion of the bracket powers using that base pullbacks square to 0.
Rational geometric_height(const FamilyIntersections& f, const Rational& rank, const Rational& degdet);

/// Riemann-Roch on a curve fibration: D(k) = (k^2 L^2 - k L.w_{X/B}) / 2 + deg lambda.
PushforwardPolynomial grr_pushforward(const Rational& L2, const Rational& Lomega, const Rational& deg_lambda);

Rational evaluate(const KPolynomial& p, const Rational& k);

/// h(X, D; L^k) as a polynomial in k for a curve family of fiber genus g,
/// with N_k + 1 = k d + 1 - g. Throws InputError when n != 1, D has degree
/// above 2, or fiber_Ln1K != 2g - 2 + sum a_i d_i.
KPolynomial height_polynomial(const FamilyIntersections& f, int genus, const PushforwardPolynomial& pushforward);

struct LeadingTermCheck {
  KPolynomial height;
  Rational cubic;             // coefficient of k^3, expected 0
  Rational quadratic;         // coefficient of k^2
  Rational expected_quadratic;  // (d / 2) DF
  bool holds = false;
};

LeadingTermCheck check_leading_term(const FamilyIntersections& f, int genus,
                                    const PushforwardPolynomial& pushforward);

/// L.w_{X/B} implied by the family data: LnK - sum a_i (L.D_i).
Rational relative_omega_degree(const FamilyIntersections& f);

}  // namespace chowkit
