#include "chowkit/polynomial.hpp"

#include <algorithm>

#include "chowkit/errors.hpp"

namespace chowkit {

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> small;
  std::vector<mpz_class> large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

Polynomial::Polynomial(std::vector<Rational> coefficients) : coefficients_(std::move(coefficients)) {
  trim();
}

Polynomial Polynomial::monomial(const Rational& c, int power) {
  std::vector<Rational> v(static_cast<std::size_t>(power) + 1, Rational(0));
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear_factor(const Rational& root) { return Polynomial({-root, Rational(1)}); }

void Polynomial::trim() {
  while (!coefficients_.empty() && coefficients_.back().is_zero()) coefficients_.pop_back();
}

Rational Polynomial::coefficient(int power) const {
  if (power < 0 || power > degree()) return Rational(0);
  return coefficients_[static_cast<std::size_t>(power)];
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return leading().inverse() * *this;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < coefficients_.size(); ++i)
    d.push_back(Rational(static_cast<long long>(i)) * coefficients_[i]);
  return Polynomial(std::move(d));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coefficients_.size() > coefficients_.size()) coefficients_.resize(o.coefficients_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coefficients_.size(); ++i) coefficients_[i] += o.coefficients_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coefficients_.size() > coefficients_.size()) coefficients_.resize(o.coefficients_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coefficients_.size(); ++i) coefficients_[i] -= o.coefficients_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    coefficients_.clear();
    return *this;
  }
  std::vector<Rational> r(coefficients_.size() + o.coefficients_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coefficients_.size(); ++i)
    for (std::size_t j = 0; j < o.coefficients_.size(); ++j) r[i + j] += coefficients_[i] * o.coefficients_[j];
  coefficients_ = std::move(r);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  for (auto& c : coefficients_) c *= s;
  trim();
  return *this;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InputError("polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db) + 1, Rational(0));
  const Rational lead_inv = b.leading().inverse();
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rational c = rem[static_cast<std::size_t>(k + db)] * lead_inv;
    quo[static_cast<std::size_t>(k)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= c * b.coefficient(j);
  }
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }
Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a;
  Polynomial y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p.is_zero() ? p : Polynomial::constant(1);
  return (p / gcd(p, p.derivative())).monic();
}

std::vector<Rational> rational_roots(const Polynomial& p) {
  if (p.degree() <= 0) return {};
  Polynomial sf = squarefree_part(p);
  std::vector<Rational> roots;
  if (sf.coefficient(0).is_zero()) {
    roots.emplace_back(0);
    sf = sf / Polynomial::linear_factor(Rational(0));
  }
  if (sf.degree() >= 1) {
    // integer coefficients
    const mpz_class den = common_denominator(sf.coefficients());
    const Rational scale(den, 1);
    const mpz_class a0 = (scale * sf.coefficient(0)).numerator();
    const mpz_class an = (scale * sf.leading()).numerator();
    const auto ps = divisors(a0);
    const auto qs = divisors(an);
    for (const auto& pn : ps) {
      for (const auto& qd : qs) {
        for (int s : {1, -1}) {
          const Rational cand(s * pn, qd);
          if (sf(cand).is_zero()) roots.push_back(cand);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<Polynomial> coprime_basis(const std::vector<Polynomial>& polys) {
  std::vector<Polynomial> basis;
  for (const auto& p : polys)
    if (p.degree() >= 1) basis.push_back(squarefree_part(p));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < basis.size() && !changed; ++j) {
        const Polynomial g = gcd(basis[i], basis[j]);
        if (g.degree() < 1) continue;
        std::vector<Polynomial> parts{g, (basis[i] / g).monic(), (basis[j] / g).monic()};
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(j));
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
        for (auto& part : parts)
          if (part.degree() >= 1) basis.push_back(std::move(part));
        changed = true;
      }
    }
  }
  std::sort(basis.begin(), basis.end(), [](const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coefficients().begin(), a.coefficients().end(),
                                        b.coefficients().begin(), b.coefficients().end());
  });
  return basis;
}

}  // namespace chowkit
