#include "mochain/unit_poly.hpp"

#include <algorithm>

#include "mochain/error.hpp"

namespace mochain {

UnitPoly::UnitPoly(Rational constant) : c_{std::move(constant)} { trim(); }

UnitPoly::UnitPoly(Rational constant, Rational linear) : c_{std::move(constant), std::move(linear)} {
  trim();
}

UnitPoly::UnitPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UnitPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Real UnitPoly::evaluate(const Real& v) const {
  Real acc = like(v, 0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + like(v, *it);
  return acc;
}

std::string UnitPoly::to_string(const std::string& unit_name) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += c_[i].to_string();
    if (i == 1) out += "*" + unit_name;
    if (i > 1) out += "*" + unit_name + "^" + std::to_string(i);
  }
  return out;
}

UnitPoly& UnitPoly::operator+=(const UnitPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UnitPoly& UnitPoly::operator-=(const UnitPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UnitPoly& UnitPoly::operator*=(const UnitPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j].add_mul(c_[i], o.c_[j]);
  c_ = std::move(r);
  trim();
  return *this;
}

UnitPoly& UnitPoly::operator*=(const Rational& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

UnitPoly UnitPoly::operator-() const {
  UnitPoly r(*this);
  for (auto& c : r.c_) c = -c;
  return r;
}

UnitRatio::UnitRatio(UnitPoly num, UnitPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("zero denominator in Q(v) element");
  fold();
}

void UnitRatio::fold() {
  // Normalize so the denominator's leading coefficient is 1; if the
  // denominator is a constant this leaves a plain polynomial.
  const Rational lead = den_.coeffs().back();
  if (lead != Rational(1)) {
    const Rational inv = lead.reciprocal();
    num_ *= inv;
    den_ *= inv;
  }
  if (num_.is_zero()) den_ = UnitPoly(Rational(1));
}

std::optional<Rational> UnitRatio::as_rational() const {
  if (!num_.is_rational() || !den_.is_rational()) return std::nullopt;
  return num_.coeff(0) / den_.coeff(0);
}

std::string UnitRatio::to_string(const std::string& unit_name) const {
  if (auto r = as_rational()) return r->to_string();
  if (den_ == UnitPoly(Rational(1))) return num_.to_string(unit_name);
  return "(" + num_.to_string(unit_name) + ")/(" + den_.to_string(unit_name) + ")";
}

UnitRatio operator+(const UnitRatio& a, const UnitRatio& b) {
  if (a.den_ == b.den_) return UnitRatio(a.num_ + b.num_, a.den_);
  return UnitRatio(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

UnitRatio operator-(const UnitRatio& a, const UnitRatio& b) {
  if (a.den_ == b.den_) return UnitRatio(a.num_ - b.num_, a.den_);
  return UnitRatio(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

UnitRatio operator*(const UnitRatio& a, const UnitRatio& b) {
  return UnitRatio(a.num_ * b.num_, a.den_ * b.den_);
}

UnitRatio operator/(const UnitRatio& a, const UnitRatio& b) {
  if (b.is_zero()) throw DomainError("division by zero in Q(v)");
  return UnitRatio(a.num_ * b.den_, a.den_ * b.num_);
}

}  // namespace mochain
