#pragma once

// Exact rational scalar used for every breakpoint, value and slope.
//
// Thin value wrapper over GMP's mpq_class. The wrapper keeps the invariant
// that the stored fraction is canonical (lowest terms, positive denominator)
// after every operation, so equality is structural.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qiline {

class Rational {
public:
  Rational() = default;
  Rational(std::int64_t n);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(mpq_class value);

  /// Parses "p", "p/q", "-p/q" or a finite decimal such as "-1.25".
  /// Throws std::invalid_argument on malformed input or zero denominator.
  static Rational parse(std::string_view text);

  /// 2^e for any integer e (negative exponents give 1/2^|e|).
  static Rational pow2(std::int64_t e);

  const mpq_class& raw() const { return value_; }

  std::string numerator_str() const { return value_.get_num().get_str(); }
  std::string denominator_str() const { return value_.get_den().get_str(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  /// Denominator is a power of two (integers included).
  bool is_dyadic() const;
  /// Value is +-2^e for some integer e.
  bool is_power_of_two() const;

  Rational abs() const;
  Rational reciprocal() const;
  mpz_class floor() const;
  /// floor() as int64; throws std::overflow_error when out of range.
  std::int64_t floor_i64() const;

  /// "p" when the denominator is 1, otherwise "p/q".
  std::string to_string() const;
  /// Decimal rendering with the given number of significant digits.
  std::string to_decimal(int significant_digits) const;
  double to_double() const { return value_.get_d(); }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational abs(const Rational& r) { return r.abs(); }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace qiline
