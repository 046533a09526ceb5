#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include <mpfr.h>

#include "mochain/rational.hpp"

namespace mochain {

/// Floating-point value tagged with a working precision in decimal digits.
///
/// Binary operations round to the smaller of the two operands' precisions,
/// so a low-precision input can never masquerade as a high-precision result.
class Real {
 public:
  static constexpr int kMinDigits = 16;

  explicit Real(int digits = 32);
  Real(long value, int digits);
  Real(double value, int digits);
  Real(const Rational& value, int digits);
  static Real parse(std::string_view text, int digits);
  static Real pi(int digits);

  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  int digits() const noexcept { return digits_; }
  /// Same value re-rounded to another precision.
  Real with_digits(int digits) const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Scientific notation with `significant` digits ("1.2345e-03").
  std::string to_string(int significant) const;
  /// Fixed notation with `decimals` digits after the point.
  std::string to_fixed(int decimals) const;
  /// Enough digits to round-trip at this precision.
  std::string to_string() const { return to_string(digits_ + 2); }

  int sign() const noexcept { return mpfr_sgn(v_); }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  Real operator-() const;

  /// this -= a * b with a single rounding.
  void sub_mul(const Real& a, const Real& b);
  /// this += a * b with a single rounding.
  void add_mul(const Real& a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

  mpfr_srcptr raw() const noexcept { return v_; }
  mpfr_ptr raw() noexcept { return v_; }

 private:
  mpfr_t v_;
  int digits_;
};

std::ostream& operator<<(std::ostream& os, const Real& r);

mpfr_prec_t digits_to_bits(int digits);

Real abs(const Real& x);
/// Nearest integer, halfway cases away from zero.
Real round(const Real& x);
Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real exp(const Real& x);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
/// Gamma function for any real argument off the nonpositive integers
/// (which give +-inf).
Real gamma(const Real& x);

inline bool is_zero(const Real& r) { return r.is_zero(); }
inline Real like(const Real& proto, long value) { return Real(value, proto.digits()); }
inline Real like(const Real& proto, const Rational& value) { return Real(value, proto.digits()); }
inline double to_double(const Real& r) { return r.to_double(); }

/// Relative difference |a - b| / max(|a|, |b|, floor).
Real relative_difference(const Real& a, const Real& b, const Real& floor);

}  // namespace mochain
