#include "qiline/rational.hpp"

#include <ostream>
#include <sstream>

namespace qiline {

namespace {

static_assert(sizeof(long) == sizeof(std::int64_t), "GMP si conversions assume LP64");

mpz_class to_mpz(std::int64_t n) { return mpz_class(static_cast<long>(n)); }

bool parse_integer(std::string_view s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') return false;
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return out.set_str(digits, 10) == 0;
}

bool is_power_of_two(const mpz_class& z) {
  return z > 0 && mpz_popcount(z.get_mpz_t()) == 1;
}

}  // namespace

Rational::Rational(std::int64_t n) : value_(to_mpz(n)) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  value_ = mpq_class(to_mpz(num), to_mpz(den));
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  const auto bad = [&] {
    return std::invalid_argument("malformed rational '" + std::string(text) + "'");
  };

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num, den;
    if (!parse_integer(text.substr(0, slash), num)) throw bad();
    const auto den_text = text.substr(slash + 1);
    if (den_text.empty() || den_text[0] == '+' || den_text[0] == '-') throw bad();
    if (!parse_integer(den_text, den)) throw bad();
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(mpq_class(num, den));
  }

  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto int_part = text.substr(0, dot);
    const auto frac_part = text.substr(dot + 1);
    if (frac_part.empty()) throw bad();
    for (char c : frac_part)
      if (c < '0' || c > '9') throw bad();
    const bool negative = !int_part.empty() && int_part[0] == '-';
    mpz_class whole = 0;
    const auto whole_digits = (!int_part.empty() && (int_part[0] == '-' || int_part[0] == '+'))
                                  ? int_part.substr(1)
                                  : int_part;
    if (!whole_digits.empty() && !parse_integer(whole_digits, whole)) throw bad();
    if (whole_digits.empty() && int_part.size() > 1) throw bad();
    mpz_class frac;
    frac.set_str(std::string(frac_part), 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    mpq_class v(whole * scale + frac, scale);
    if (negative) v = -v;
    return Rational(v);
  }

  mpz_class n;
  if (!parse_integer(text, n)) throw bad();
  return Rational(mpq_class(n));
}

Rational Rational::pow2(std::int64_t e) {
  mpz_class p;
  const auto magnitude = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_ui_pow_ui(p.get_mpz_t(), 2, magnitude);
  if (e >= 0) return Rational(mpq_class(p));
  return Rational(mpq_class(mpz_class(1), p));
}

bool Rational::is_dyadic() const { return qiline::is_power_of_two(value_.get_den()); }

bool Rational::is_power_of_two() const {
  if (is_zero()) return false;
  mpz_class num = value_.get_num();
  if (num < 0) num = -num;
  if (num == 1) return qiline::is_power_of_two(value_.get_den());
  return value_.get_den() == 1 && qiline::is_power_of_two(num);
}

Rational Rational::abs() const { return Rational(::abs(value_)); }

Rational Rational::reciprocal() const {
  if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
  return Rational(mpq_class(value_.get_den(), value_.get_num()));
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

std::int64_t Rational::floor_i64() const {
  const mpz_class q = floor();
  if (!q.fits_slong_p()) throw std::overflow_error("Rational: floor does not fit in 64 bits");
  return q.get_si();
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_decimal(int significant_digits) const {
  if (significant_digits < 1) throw std::invalid_argument("to_decimal: digits must be >= 1");
  // mpf with generous precision: 4 bits per decimal digit plus headroom.
  const auto bits = static_cast<mp_bitcnt_t>(significant_digits) * 4 + 64;
  mpf_class f(0, bits);
  f = value_;
  mp_exp_t exp = 0;
  std::string digits = f.get_str(exp, 10, static_cast<std::size_t>(significant_digits));
  if (digits.empty() || digits == "0") return "0";
  std::string sign;
  if (digits[0] == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  std::ostringstream os;
  os << sign;
  if (exp <= 0) {
    os << "0." << std::string(static_cast<std::size_t>(-exp), '0') << digits;
  } else if (static_cast<std::size_t>(exp) >= digits.size()) {
    os << digits << std::string(static_cast<std::size_t>(exp) - digits.size(), '0');
  } else {
    os << digits.substr(0, static_cast<std::size_t>(exp)) << '.'
       << digits.substr(static_cast<std::size_t>(exp));
  }
  return os.str();
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

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
  if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace qiline
