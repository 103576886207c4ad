#include "chowkit/stability_energy.hpp"

#include "chowkit/errors.hpp"

namespace chowkit {

namespace {

KPolynomial add(KPolynomial a, const KPolynomial& b) {
  if (b.size() > a.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

KPolynomial mul(const KPolynomial& a, const KPolynomial& b) {
  if (a.empty() || b.empty()) return {};
  KPolynomial r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

KPolynomial scale(const Rational& s, KPolynomial p) {
  for (auto& c : p) c *= s;
  return p;
}

void trim(KPolynomial& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Rational coefficient(const KPolynomial& p, std::size_t power) {
  return power < p.size() ? p[power] : Rational(0);
}

}  // namespace

void FamilyIntersections::validate() const {
  if (n < 1) throw InputError("fiber dimension n must be at least 1");
  if (fiber_Ln.sign() <= 0) throw InputError("fiber degree L^n must be positive");
  for (const auto& b : boundary)
    if (b.coefficient.sign() <= 0 || b.coefficient > Rational(1))
      throw InputError("boundary coefficient " + b.coefficient.str() + " is outside (0, 1]");
}

Rational chow_weight_constant(int n) {
  if (n < 1) throw InputError("fiber dimension n must be at least 1");
  return Rational(n + 1, 2 * n);
}

Rational mu_slope(const FamilyIntersections& f) {
  if (f.fiber_Ln.is_zero()) throw InputError("zero fiber degree");
  return f.fiber_Ln1K / f.fiber_Ln;
}

Rational df_invariant(const FamilyIntersections& f) {
  f.validate();
  return Rational(f.n + 1) * f.LnK - Rational(f.n) * f.Lnp1 * mu_slope(f);
}

Rational geometric_height(const FamilyIntersections& f, const Rational& rank, const Rational& degdet) {
  if (f.n < 1) throw InputError("fiber dimension n must be at least 1");
  Rational h = rank * f.Lnp1 - Rational(f.n + 1) * f.fiber_Ln * degdet;
  Rational boundary = 0;
  for (const auto& b : f.boundary)
    boundary += b.coefficient * (rank * b.total_degree - Rational(f.n) * b.fiber_degree * degdet);
  return h + chow_weight_constant(f.n) * boundary;
}

PushforwardPolynomial grr_pushforward(const Rational& L2, const Rational& Lomega, const Rational& deg_lambda) {
  const Rational half(1, 2);
  return {{deg_lambda, -half * Lomega, half * L2}};
}

Rational evaluate(const KPolynomial& p, const Rational& k) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * k + *it;
  return acc;
}

Rational relative_omega_degree(const FamilyIntersections& f) {
  Rational s = f.LnK;
  for (const auto& b : f.boundary) s -= b.coefficient * b.total_degree;
  return s;
}

KPolynomial height_polynomial(const FamilyIntersections& f, int genus, const PushforwardPolynomial& pushforward) {
  f.validate();
  if (f.n != 1) throw InputError("height polynomial is implemented for curve families (n = 1) only");
  if (genus < 0) throw InputError("genus must be nonnegative");
  KPolynomial D = pushforward.coefficients;
  trim(D);
  if (D.size() > 3) throw InputError("pushforward polynomial of a curve family has degree <= 2");
  Rational log_degree = Rational(2 * genus - 2);
  for (const auto& b : f.boundary) log_degree += b.coefficient * b.fiber_degree;
  if (log_degree != f.fiber_Ln1K)
    throw InputError("inconsistent degrees: fiber K+D degree " + f.fiber_Ln1K.str() + " but 2g-2+sum a_i d_i = " +
                     log_degree.str());

  // Under L -> L^k: L^2 -> k^2 L^2, d -> k d, L.D_i -> k L.D_i, fiber points fixed.
  const KPolynomial rank{Rational(1 - genus), f.fiber_Ln};  // N_k + 1
  KPolynomial h = mul(rank, {Rational(0), Rational(0), f.Lnp1});
  h = add(h, scale(Rational(-2), mul({Rational(0), f.fiber_Ln}, D)));
  KPolynomial boundary;
  for (const auto& b : f.boundary) {
    KPolynomial term = mul(rank, {Rational(0), b.total_degree});
    term = add(term, scale(-b.fiber_degree, D));
    boundary = add(boundary, scale(b.coefficient, term));
  }
  h = add(h, scale(chow_weight_constant(1), boundary));
  trim(h);
  return h;
}

LeadingTermCheck check_leading_term(const FamilyIntersections& f, int genus,
                                    const PushforwardPolynomial& pushforward) {
  LeadingTermCheck c;
  c.height = height_polynomial(f, genus, pushforward);
  c.cubic = coefficient(c.height, 3);
  c.quadratic = coefficient(c.height, 2);
  c.expected_quadratic = f.fiber_Ln / Rational(2) * df_invariant(f);
  c.holds = c.cubic.is_zero() && c.quadratic == c.expected_quadratic && c.height.size() <= 4;
  return c;
}

}  // namespace chowkit
