#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace disprop {

using BigInt = mpz_class;

/// Exact rational number in canonical form (positive denominator, lowest terms).
///
/// Thin value wrapper over GMP's mpq_class. The wrapper exists so that
/// arithmetic always yields a materialized, canonical value instead of a GMP
/// expression template, which keeps `auto` and structured code safe.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const BigInt& integer) : value_(integer) {}
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  /// Parses "p/q", "-p/q" or "k". Throws std::invalid_argument on anything else,
  /// including a zero denominator.
  static Rational parse(std::string_view text);

  /// "k" for integers, "p/q" otherwise, always in lowest terms.
  std::string str() const;

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  BigInt floor() const;
  BigInt ceil() const;
  Rational abs() const { return Rational(mpq_class(::abs(value_))); }

  /// Nearest double; for diagnostics only, never used in decisions.
  double to_double() const { return value_.get_d(); }

  const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class value_{0};
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Least common multiple of the denominators of the given values.
template <typename Range>
BigInt common_denominator_of(const Range& values) {
  BigInt acc = 1;
  for (const Rational& v : values) {
    BigInt d = v.denominator();
    mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), d.get_mpz_t());
  }
  return acc;
}

}  // namespace disprop
