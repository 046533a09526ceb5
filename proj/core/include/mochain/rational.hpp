#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mochain {

/// Exact rational number backed by a GMP rational.
///
/// The value is kept canonical after every operation: the denominator is
/// positive and shares no factor with the numerator, so equality and
/// ordering are decided on the representation itself.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class value);

  /// Accepts "p/q", integers and plain decimals ("-0.125", "1e-3" is not accepted).
  /// Decimals are expanded digit by digit, so "0.1" is exactly 1/10.
  static Rational parse(std::string_view text);

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  const mpq_class& gmp() const noexcept { return v_; }

  int sign() const noexcept { return sgn(v_); }
  bool is_zero() const noexcept { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational abs() const { return Rational(::abs(v_)); }
  Rational reciprocal() const;
  /// Floor as a (possibly large) integer.
  mpz_class floor() const;

  double to_double() const { return v_.get_d(); }
  /// "p/q", or "p" when the denominator is one.
  std::string to_string() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// this -= a * b, in place.
  void sub_mul(const Rational& a, const Rational& b);
  /// this += a * b, in place.
  void add_mul(const Rational& a, const Rational& b);

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline Rational like(const Rational&, long value) { return Rational(value); }
inline Rational like(const Rational&, const Rational& value) { return value; }
inline double to_double(const Rational& r) { return r.to_double(); }
inline Rational abs(const Rational& r) { return r.abs(); }

/// Integer power, negative exponents allowed for nonzero bases.
Rational pow(const Rational& base, long exponent);

}  // namespace mochain
