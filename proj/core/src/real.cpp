#include "mochain/real.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "mochain/error.hpp"

namespace mochain {

mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
}

namespace {

int checked_digits(int digits) {
  if (digits < Real::kMinDigits)
    throw DomainError("working precision must be at least " + std::to_string(Real::kMinDigits) +
                      " digits (got " + std::to_string(digits) + ")");
  return digits;
}

}  // namespace

Real::Real(int digits) : digits_(checked_digits(digits)) {
  mpfr_init2(v_, digits_to_bits(digits_));
  mpfr_set_zero(v_, 1);
}

Real::Real(long value, int digits) : Real(digits) { mpfr_set_si(v_, value, MPFR_RNDN); }

Real::Real(double value, int digits) : Real(digits) { mpfr_set_d(v_, value, MPFR_RNDN); }

Real::Real(const Rational& value, int digits) : Real(digits) {
  mpfr_set_q(v_, value.gmp().get_mpq_t(), MPFR_RNDN);
}

Real Real::parse(std::string_view text, int digits) {
  Real r(digits);
  const std::string s(text);
  char* end = nullptr;
  if (mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN), end == s.c_str() || *end != '\0') {
    // Fall back to exact rational syntax ("p/q").
    return Real(Rational::parse(text), digits);
  }
  return r;
}

Real Real::pi(int digits) {
  Real r(digits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real::Real(const Real& o) : digits_(o.digits_) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept : digits_(o.digits_) {
  // Steal the limbs and leave `o` as a valid minimal-precision zero.
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
    digits_ = o.digits_;
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  std::swap(digits_, o.digits_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::with_digits(int digits) const {
  Real r(digits);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string Real::to_string(int significant) const {
  if (!is_finite()) {
    if (mpfr_nan_p(v_)) return "nan";
    return sign() > 0 ? "inf" : "-inf";
  }
  significant = std::max(significant, 1);
  std::vector<char> buf(static_cast<std::size_t>(significant) + 32);
  const std::string fmt = "%." + std::to_string(significant - 1) + "Re";
  mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), v_);
  return std::string(buf.data());
}

std::string Real::to_fixed(int decimals) const {
  if (!is_finite()) return to_string(1);
  const std::string fmt = "%." + std::to_string(std::max(decimals, 0)) + "Rf";
  const int needed = mpfr_snprintf(nullptr, 0, fmt.c_str(), v_);
  std::vector<char> buf(static_cast<std::size_t>(needed) + 1);
  mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), v_);
  return std::string(buf.data());
}

namespace {

// Result buffer for a binary op: precision of the less precise operand.
Real result_for(const Real& a, const Real& b) { return Real(std::min(a.digits(), b.digits())); }

}  // namespace

Real& Real::operator+=(const Real& o) { return *this = *this + o; }
Real& Real::operator-=(const Real& o) { return *this = *this - o; }
Real& Real::operator*=(const Real& o) { return *this = *this * o; }
Real& Real::operator/=(const Real& o) { return *this = *this / o; }

Real operator+(const Real& a, const Real& b) {
  Real r = result_for(a, b);
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r = result_for(a, b);
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r = result_for(a, b);
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  Real r = result_for(a, b);
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

void Real::sub_mul(const Real& a, const Real& b) {
  // fms computes a*b - this; negating afterwards is exact.
  mpfr_fms(v_, a.v_, b.v_, v_, MPFR_RNDN);
  mpfr_neg(v_, v_, MPFR_RNDN);
  digits_ = std::min({digits_, a.digits_, b.digits_});
}

void Real::add_mul(const Real& a, const Real& b) {
  mpfr_fma(v_, a.v_, b.v_, v_, MPFR_RNDN);
  digits_ = std::min({digits_, a.digits_, b.digits_});
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::ostream& operator<<(std::ostream& os, const Real& r) { return os << r.to_string(); }

#define MOCHAIN_UNARY(name, call)                   \
  Real name(const Real& x) {                        \
    Real r(x.digits());                             \
    call(r.raw(), x.raw(), MPFR_RNDN);              \
    return r;                                       \
  }

MOCHAIN_UNARY(abs, mpfr_abs)
MOCHAIN_UNARY(cbrt, mpfr_cbrt)
MOCHAIN_UNARY(exp, mpfr_exp)
MOCHAIN_UNARY(gamma, mpfr_gamma)
#undef MOCHAIN_UNARY

Real round(const Real& x) {
  Real r(x.digits());
  mpfr_round(r.raw(), x.raw());
  return r;
}

Real sqrt(const Real& x) {
  if (x.sign() < 0) throw DomainError("square root of a negative number");
  Real r(x.digits());
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real log(const Real& x) {
  if (x.sign() <= 0) throw DomainError("logarithm of a nonpositive number");
  Real r(x.digits());
  mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real log1p(const Real& x) {
  Real r(x.digits());
  mpfr_log1p(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, const Real& exponent) {
  Real r(std::min(base.digits(), exponent.digits()));
  mpfr_pow(r.raw(), base.raw(), exponent.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, long exponent) {
  Real r(base.digits());
  mpfr_pow_si(r.raw(), base.raw(), exponent, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real relative_difference(const Real& a, const Real& b, const Real& floor) {
  const Real scale = max(max(abs(a), abs(b)), floor);
  return abs(a - b) / scale;
}

}  // namespace mochain
