#include "chowkit/rational.hpp"

#include <cctype>
#include <limits>

#include "chowkit/errors.hpp"

namespace chowkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::string digits(s);
  if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
  bool ok = !digits.empty();
  for (std::size_t i = 0; i < digits.size() && ok; ++i) {
    const char c = digits[i];
    ok = std::isdigit(static_cast<unsigned char>(c)) || (i == 0 && c == '-' && digits.size() > 1);
  }
  if (!ok) throw InputError("malformed rational '" + std::string(whole) + "'");
  return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw InputError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string_view t = trim(text);
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(t, text), 1);
  mpz_class num = parse_integer(t.substr(0, slash), text);
  mpz_class den = parse_integer(t.substr(slash + 1), text);
  if (den == 0) throw InputError("rational with zero denominator '" + std::string(text) + "'");
  return Rational(num, den);
}

std::int64_t Rational::to_int64() const {
  if (!is_integer()) throw InputError("expected an integer, got " + str());
  const mpz_class& n = value_.get_num();
  if (!n.fits_slong_p()) throw InputError("integer out of range: " + str());
  return n.get_si();
}

std::string Rational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw InputError("division by zero");
  return Rational(value_.get_den(), value_.get_num());
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InputError("division by zero");
  value_ /= o.value_;
  return *this;
}

}  // namespace chowkit
