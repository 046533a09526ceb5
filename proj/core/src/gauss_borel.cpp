#include "mochain/gauss_borel.hpp"

#include <algorithm>
#include <cmath>

#include "mochain/error.hpp"

namespace mochain {

namespace {

double magnitude(const Rational& x) { return std::fabs(x.to_double()); }
double magnitude(const Real& x) { return std::fabs(x.to_double()); }

// Solves L x = rhs for unit lower-triangular L.
template <class T>
std::vector<T> forward_solve(const Matrix<T>& L, std::vector<T> x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < i; ++k) x[i].sub_mul(L(i, k), x[k]);
  return x;
}

// Solves M y = rhs with M(j,i) = U(i,j) / Htilde_i, i.e. y = Stilde rhs.
template <class T>
std::vector<T> dual_forward_solve(const Matrix<T>& U, const std::vector<T>& htilde, std::vector<T> y) {
  for (std::size_t j = 0; j < y.size(); ++j) {
    const T scaled = y[j] / htilde[j];
    for (std::size_t k = j + 1; k < y.size(); ++k) y[k].sub_mul(U(j, k), scaled);
  }
  return y;
}

}  // namespace

template <class T>
T BandedHessenberg<T>::entry(std::size_t i, std::size_t j) const {
  const T zero = like(c.front(), 0);
  if (j == i + 1) return like(c.front(), 1);
  if (j == i) return c.at(i);
  if (j + 1 == i) return b.at(i);
  if (j + 2 == i) return a.at(i);
  return zero;
}

template <class T>
GaussBorelFactorization<T> factorize(const MomentMatrix<T>& g, std::size_t coefficient_rows) {
  const std::size_t n = g.size();
  Matrix<T> U = g.entries;
  const T zero = like(U(0, 0), 0);
  Matrix<T> L = Matrix<T>::identity(n, zero, like(U(0, 0), 1));
  for (std::size_t k = 0; k < n; ++k) {
    const T pivot = U(k, k);
    if (is_zero(pivot)) throw SingularMinorError(k + 1);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(U(i, k))) continue;
      const T factor = U(i, k) / pivot;
      U(i, k) = zero;
      for (std::size_t j = k + 1; j < n; ++j) U(i, j).sub_mul(factor, U(k, j));
      L(i, k) = factor;
    }
  }
  GaussBorelFactorization<T> f;
  f.layout = g.layout;
  f.mode = g.mode;
  f.digits = g.digits;
  f.Htilde.reserve(n);
  for (std::size_t i = 0; i < n; ++i) f.Htilde.push_back(U(i, i));
  const std::size_t k = std::min(n, coefficient_rows);
  Matrix<T> M(k, k, zero);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) M(j, i) = U(i, j) / f.Htilde[i];
  f.Stilde = invert_unit_lower(M);
  f.S = invert_unit_lower(L.leading(k));
  f.L = std::move(L);
  f.U = std::move(U);
  return f;
}

template <class T>
BandedHessenberg<T> extract_hessenberg(const GaussBorelFactorization<T>& f, double& off_band_max) {
  const std::size_t n = f.size();
  if (n < 4) throw DomainError("Hessenberg extraction needs a factorization of size >= 4");
  const std::size_t rows = n - 1;
  const Matrix<T>& L = f.L;
  const T zero = like(L(0, 0), 0);
  const bool exact = f.mode == Mode::exact;
  const double tol = exact ? 0.0 : std::pow(10.0, -std::max(8, f.digits / 8));
  // Rows up to 64 are checked against the full lower part; past that only a
  // fringe of three off-band diagonals is inspected.
  const std::size_t fringe = rows <= 64 ? rows : 3;
  const auto lowest = [&](std::size_t i) { return i >= 2 + fringe ? i - 2 - fringe : std::size_t{0}; };
  const std::size_t width = fringe + 4;
  // window(i, j) holds H(i, j) for lowest(i) <= j <= i + 1.
  std::vector<T> window(rows * width, zero);
  const auto at = [&](std::size_t i, std::size_t j) -> T& { return window[i * width + (j - lowest(i))]; };

  BandedHessenberg<T> H;
  H.a.assign(rows, zero);
  H.b.assign(rows, zero);
  H.c.assign(rows, zero);
  off_band_max = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = lowest(i); j <= i + 1; ++j) {
      // H(i,j) = L(i+1,j) - sum_{m<i} L(i,m) H(m,j); H(m,j) vanishes for m + 1 < j.
      T v = L(i + 1, j);
      for (std::size_t m = j == 0 ? 0 : j - 1; m < i; ++m) v.sub_mul(L(i, m), at(m, j));
      at(i, j) = std::move(v);
    }
    const double super_dev = magnitude(at(i, i + 1) - like(zero, 1));
    if ((exact && super_dev != 0.0) || super_dev > tol)
      throw StructureError("superdiagonal entry of row " + std::to_string(i) + " is not 1");
    H.c[i] = at(i, i);
    if (i >= 1) H.b[i] = at(i, i - 1);
    if (i >= 2) H.a[i] = at(i, i - 2);
    for (std::size_t j = lowest(i); j + 3 <= i; ++j) {
      const T& v = at(i, j);
      const double m = magnitude(v);
      off_band_max = std::max(off_band_max, m);
      if ((exact && !is_zero(v)) || m > tol)
        throw StructureError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                             ") outside the four Hessenberg bands is nonzero");
    }
  }
  return H;
}

template <class T>
BandedHessenberg<T> extract_hessenberg(const GaussBorelFactorization<T>& f) {
  double ignored = 0.0;
  return extract_hessenberg(f, ignored);
}

namespace {

UnitPoly unit_value(const SymbolicUnit& rho, const Rational*) {
  if (rho.exact) return UnitPoly(*rho.exact);
  return UnitPoly::unit();
}

Real unit_value(const SymbolicUnit& rho, const Real* proto) { return rho.value.with_digits(proto->digits()); }

UnitPoly scale(const UnitPoly& p, const Rational& s) { return p * s; }
Real scale(const Real& p, const Real& s) { return p * s; }

UnitPoly as_unit_scalar(const Rational& r) { return UnitPoly(r); }
Real as_unit_scalar(const Real& r) { return r; }

bool positive(const UnitPoly& p, const SymbolicUnit& rho) {
  if (p.is_rational()) return p.coeff(0).sign() > 0;
  return p.evaluate(rho.value).sign() > 0;
}
bool positive(const Real& r, const SymbolicUnit&) { return r.sign() > 0; }

}  // namespace

template <class T>
std::vector<UnitScalar<T>> normalized_typeI_at_1(const GaussBorelFactorization<T>& f, const SymbolicUnit& rho) {
  const std::size_t n = f.size();
  if (!f.layout.interleaved) throw UnsupportedError("type I values need an interleaved two-weight layout");
  const UnitScalar<T> v = unit_value(rho, &f.L(0, 0));
  const T zero = like(f.L(0, 0), 0), one = like(zero, 1);
  std::vector<T> even_mask(n, zero), odd_mask(n, zero);
  for (std::size_t k = 0; k < n; ++k) (k % 2 == 0 ? even_mask : odd_mask)[k] = one;
  const std::vector<T> even = dual_forward_solve(f.U, f.Htilde, std::move(even_mask));
  const std::vector<T> odd = dual_forward_solve(f.U, f.Htilde, std::move(odd_mask));
  std::vector<UnitScalar<T>> q;
  q.reserve(n);
  for (std::size_t row = 0; row < n; ++row) {
    const T inv = one / f.Htilde[row];
    UnitScalar<T> value = as_unit_scalar(even[row] * inv);
    value += scale(v, odd[row] * inv);
    q.push_back(std::move(value));
  }
  // Gauge: Stilde row 0 is (1, 0, ...), so q_0 = 1/Htilde_0 is free of the unit.
  const T g0 = f.Htilde[0];
  for (auto& x : q) x = scale(x, g0);
  for (std::size_t row = 0; row < n; ++row)
    if (!positive(q[row], rho))
      throw PositivityError("type I value at 1 is not positive at n = " + std::to_string(row) +
                            " (AT property violated)");
  return q;
}

template <class T>
PolynomialFamily<T> polynomial_family(const GaussBorelFactorization<T>& f, const SymbolicUnit& rho) {
  const std::size_t n = f.size();
  PolynomialFamily<T> fam;
  fam.typeII = f.S;
  const T zero = like(f.L(0, 0), 0);
  fam.B_at_1 = forward_solve(f.L, std::vector<T>(n, like(zero, 1)));
  for (std::size_t row = 0; row < f.coefficient_rows(); ++row) {
    const T inv = like(zero, 1) / f.Htilde[row];
    std::vector<T> w[2];
    for (std::size_t k = 0; k <= row; ++k)
      w[f.layout.interleaved ? k % 2 : 0].push_back(f.Stilde(row, k) * inv);
    fam.typeI[0].push_back(std::move(w[0]));
    if (f.layout.interleaved) fam.typeI[1].push_back(std::move(w[1]));
  }
  if (f.layout.interleaved) fam.q_at_1 = normalized_typeI_at_1(f, rho);
  return fam;
}

template <class T>
T typeII_at(const PolynomialFamily<T>& family, std::size_t n, const T& x) {
  if (n >= family.typeII.rows())
    throw IndexError("B_" + std::to_string(n) + " is outside the truncation of size " +
                     std::to_string(family.typeII.rows()));
  T acc = like(x, 0);
  for (std::size_t k = n + 1; k-- > 0;) acc = acc * x + family.typeII(n, k);
  return acc;
}

template <class T>
std::vector<T> eigen_relation_residuals(const BandedHessenberg<T>& H, const std::vector<T>& B1) {
  std::vector<T> r;
  const std::size_t rows = std::min(H.size(), B1.size() - 1);
  for (std::size_t n = 0; n < rows; ++n) {
    T acc = H.c[n] * B1[n] + B1[n + 1] - B1[n];
    if (n >= 1) acc += H.b[n] * B1[n - 1];
    if (n >= 2) acc += H.a[n] * B1[n - 2];
    r.push_back(std::move(acc));
  }
  return r;
}

template <class T>
std::vector<UnitScalar<T>> left_relation_residuals(const BandedHessenberg<T>& H, const std::vector<UnitScalar<T>>& q) {
  std::vector<UnitScalar<T>> r;
  const std::size_t n_rows = H.size();
  // Column n of H needs rows n-1..n+2.
  for (std::size_t n = 0; n + 2 < n_rows && n + 2 < q.size(); ++n) {
    UnitScalar<T> acc = scale(q[n], H.c[n]) - q[n];
    if (n >= 1) acc += q[n - 1];
    acc += scale(q[n + 1], H.b[n + 1]);
    acc += scale(q[n + 2], H.a[n + 2]);
    r.push_back(std::move(acc));
  }
  return r;
}

bool verify_unit_cancellation(const MomentMatrix<Rational>& g, std::size_t block, const std::vector<Rational>& probes) {
  block = std::min(block, g.size());
  std::vector<BandedHessenberg<Rational>> results;
  for (const Rational& u : probes) {
    MomentMatrix<Rational> scaled = g;
    scaled.layout.size = block;
    scaled.entries = g.entries.leading(block);
    for (std::size_t j = 0; j < block; ++j)
      for (std::size_t k = 1; k < block; k += 2) scaled.entries(j, k) *= u;
    results.push_back(extract_hessenberg(factorize(scaled)));
  }
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].a != results[0].a || results[i].b != results[0].b || results[i].c != results[0].c) return false;
  return true;
}

PolynomialFamily<Real> to_numeric(const PolynomialFamily<Rational>& family, const SymbolicUnit& rho, int digits) {
  PolynomialFamily<Real> out;
  const std::size_t n = family.typeII.rows();
  out.typeII = Matrix<Real>(n, n, Real(digits));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) out.typeII(i, j) = Real(family.typeII(i, j), digits);
  for (int w = 0; w < 2; ++w)
    for (const auto& row : family.typeI[w]) {
      std::vector<Real> r;
      for (const auto& c : row) r.emplace_back(c, digits);
      out.typeI[w].push_back(std::move(r));
    }
  for (const auto& b : family.B_at_1) out.B_at_1.emplace_back(b, digits);
  const Real v = rho.value.with_digits(digits);
  for (const auto& q : family.q_at_1) out.q_at_1.push_back(q.evaluate(v));
  return out;
}

BandedHessenberg<Real> to_numeric(const BandedHessenberg<Rational>& H, int digits) {
  BandedHessenberg<Real> out;
  for (const auto& x : H.a) out.a.emplace_back(x, digits);
  for (const auto& x : H.b) out.b.emplace_back(x, digits);
  for (const auto& x : H.c) out.c.emplace_back(x, digits);
  return out;
}

#define MOCHAIN_INSTANTIATE(T)                                                                            \
  template struct BandedHessenberg<T>;                                                                    \
  template GaussBorelFactorization<T> factorize(const MomentMatrix<T>&, std::size_t);                                  \
  template BandedHessenberg<T> extract_hessenberg(const GaussBorelFactorization<T>&);                     \
  template BandedHessenberg<T> extract_hessenberg(const GaussBorelFactorization<T>&, double&);            \
  template std::vector<UnitScalar<T>> normalized_typeI_at_1(const GaussBorelFactorization<T>&,            \
                                                            const SymbolicUnit&);                         \
  template PolynomialFamily<T> polynomial_family(const GaussBorelFactorization<T>&, const SymbolicUnit&); \
  template T typeII_at(const PolynomialFamily<T>&, std::size_t, const T&);                                \
  template std::vector<T> eigen_relation_residuals(const BandedHessenberg<T>&, const std::vector<T>&);    \
  template std::vector<UnitScalar<T>> left_relation_residuals(const BandedHessenberg<T>&,                 \
                                                              const std::vector<UnitScalar<T>>&);

MOCHAIN_INSTANTIATE(Rational)
MOCHAIN_INSTANTIATE(Real)
#undef MOCHAIN_INSTANTIATE

}  // namespace mochain
