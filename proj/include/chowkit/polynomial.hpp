#pragma once

#include <utility>
#include <vector>

#include "chowkit/rational.hpp"

namespace chowkit {

/// Univariate polynomial over the rationals; coefficients in ascending
/// powers, never with a trailing zero. The zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  static Polynomial monomial(const Rational& c, int power);
  /// x - root
  static Polynomial linear_factor(const Rational& root);

  const std::vector<Rational>& coefficients() const { return coefficients_; }
  bool is_zero() const { return coefficients_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  Rational leading() const { return is_zero() ? Rational(0) : coefficients_.back(); }
  Rational coefficient(int power) const;

  Rational operator()(const Rational& x) const;

  Polynomial monic() const;
  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(const Rational& s, Polynomial p) { return p *= s; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coefficients_;
};

/// Quotient and remainder; throws InputError when dividing by zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator/(const Polynomial& a, const Polynomial& b);
Polynomial operator%(const Polynomial& a, const Polynomial& b);

/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Monic square-free part p / gcd(p, p').
Polynomial squarefree_part(const Polynomial& p);

/// Distinct rational roots, ascending.
std::vector<Rational> rational_roots(const Polynomial& p);

/// Pairwise coprime monic square-free polynomials of positive degree whose
/// products generate the same roots as the inputs (gcd-free basis).
std::vector<Polynomial> coprime_basis(const std::vector<Polynomial>& polys);

}  // namespace chowkit
