#include "biquad/rational.hpp"

#include <cctype>
#include <cmath>

#include "biquad/errors.hpp"

namespace biquad {

Rational::Rational(long num, long den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  value_ = mpq_class(mpz_class(num), mpz_class(den));
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                               : body.substr(slash + 1);
  if (!digits(num) || !digits(den))
    throw ParseError("malformed rational '" + std::string(text) + "' (expected p/q or integer)");

  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("rational '" + std::string(text) + "' has zero denominator");
  if (!text.empty() && text.front() == '-') n = -n;
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw PreconditionError("cannot convert non-finite double to rational");
  return Rational(mpq_class(x));
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw PreconditionError("rational division by zero");
  value_ /= rhs.value_;
  return *this;
}

}  // namespace biquad
