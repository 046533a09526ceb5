#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mochain/rational.hpp"
#include "mochain/real.hpp"

namespace mochain {

/// A transcendental constant carried symbolically through exact pipelines.
///
/// `exact` is set when the constant happens to be rational for the given
/// parameters; otherwise only the high-precision `value` is known.
struct SymbolicUnit {
  std::string name;         // e.g. "v"
  std::string description;  // human-readable definition
  Real value{64};
  std::optional<Rational> exact;
};

/// Polynomial c0 + c1 v + c2 v^2 + ... in one symbolic unit v, rational
/// coefficients. Kept trimmed (no trailing zero coefficients).
class UnitPoly {
 public:
  UnitPoly() = default;
  UnitPoly(Rational constant);  // NOLINT(google-explicit-constructor)
  UnitPoly(Rational constant, Rational linear);
  explicit UnitPoly(std::vector<Rational> coeffs);

  static UnitPoly unit() { return UnitPoly(Rational(0), Rational(1)); }

  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  /// Degree in v; -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_rational() const noexcept { return c_.size() <= 1; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  Real evaluate(const Real& v) const;
  /// "3/5 + 2/7*v"; "0" for the zero polynomial.
  std::string to_string(const std::string& unit_name = "v") const;

  UnitPoly& operator+=(const UnitPoly& o);
  UnitPoly& operator-=(const UnitPoly& o);
  UnitPoly& operator*=(const UnitPoly& o);
  UnitPoly& operator*=(const Rational& s);
  friend UnitPoly operator+(UnitPoly a, const UnitPoly& b) { return a += b; }
  friend UnitPoly operator-(UnitPoly a, const UnitPoly& b) { return a -= b; }
  friend UnitPoly operator*(UnitPoly a, const UnitPoly& b) { return a *= b; }
  friend UnitPoly operator*(UnitPoly a, const Rational& s) { return a *= s; }
  friend UnitPoly operator*(const Rational& s, UnitPoly a) { return a *= s; }
  UnitPoly operator-() const;

  void add_mul(const UnitPoly& a, const UnitPoly& b) { *this += a * b; }
  void sub_mul(const UnitPoly& a, const UnitPoly& b) { *this -= a * b; }

  friend bool operator==(const UnitPoly& a, const UnitPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

inline bool is_zero(const UnitPoly& p) { return p.is_zero(); }
inline UnitPoly like(const UnitPoly&, long value) { return UnitPoly(Rational(value)); }

/// Element num/den of the field Q(v). Equality is decided by
/// cross-multiplication, which is exact whenever the identity being tested
/// holds as a polynomial identity in v (the case for every use here).
class UnitRatio {
 public:
  UnitRatio() : num_(Rational(0)), den_(Rational(1)) {}
  UnitRatio(UnitPoly num, UnitPoly den);
  UnitRatio(const Rational& r) : num_(r), den_(Rational(1)) {}  // NOLINT(google-explicit-constructor)

  const UnitPoly& num() const noexcept { return num_; }
  const UnitPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  /// Rational value when both parts are rational.
  std::optional<Rational> as_rational() const;

  Real evaluate(const Real& v) const { return num_.evaluate(v) / den_.evaluate(v); }
  std::string to_string(const std::string& unit_name = "v") const;

  friend UnitRatio operator+(const UnitRatio& a, const UnitRatio& b);
  friend UnitRatio operator-(const UnitRatio& a, const UnitRatio& b);
  friend UnitRatio operator*(const UnitRatio& a, const UnitRatio& b);
  friend UnitRatio operator/(const UnitRatio& a, const UnitRatio& b);
  friend bool operator==(const UnitRatio& a, const UnitRatio& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

 private:
  void fold();
  UnitPoly num_;
  UnitPoly den_;
};

}  // namespace mochain
