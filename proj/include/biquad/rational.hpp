#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <concepts>
#include <string>
#include <string_view>

namespace biquad {

/// Exact rational number in canonical form (denominator > 0, lowest terms).
///
/// Thin value wrapper over GMP's mpq_class. Every arithmetic result is
/// canonicalized, so equality is structural.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I value) : value_(static_cast<long>(value)) {}  // NOLINT(implicit)

  /// num/den; throws PreconditionError when den == 0.
  Rational(long num, long den);

  explicit Rational(mpq_class value);

  /// Parses "p/q" or "p" (optional sign, decimal digits only).
  static Rational parse(std::string_view text);

  /// Nearest value as an exact binary fraction of `x` (finite doubles only).
  static Rational from_double(double x);

  std::string str() const { return value_.get_str(); }
  double to_double() const { return value_.get_d(); }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  Rational abs() const { return Rational(::abs(value_)); }

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  /// Throws PreconditionError on division by zero.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const { return Rational(mpq_class(-value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace biquad
