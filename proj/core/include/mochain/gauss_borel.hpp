#pragma once

#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "mochain/matrix.hpp"
#include "mochain/moments.hpp"
#include "mochain/rational.hpp"
#include "mochain/real.hpp"
#include "mochain/unit_poly.hpp"

namespace mochain {

/// Scalar type of quantities that may carry the symbolic unit: exact
/// pipelines work in Q[v], numeric ones plug in the value.
template <class T>
using UnitScalar = std::conditional_t<std::is_same_v<T, Rational>, UnitPoly, Real>;

/// g = L U with L = S^{-1} unit lower-triangular and U = diag(Htilde) Stilde^{-T}.
///
/// S and Stilde (the coefficient matrices of the polynomial families) are
/// kept only for a leading block: band extraction and the evaluations at 1
/// work from L and U directly, in quadratic time.
template <class T>
struct GaussBorelFactorization {
  Matrix<T> L;
  Matrix<T> U;
  std::vector<T> Htilde;
  Matrix<T> S;       // leading block of L^{-1}
  Matrix<T> Stilde;  // leading block of ((Htilde^{-1} U)^T)^{-1}
  MomentLayout layout;
  Mode mode = Mode::exact;
  int digits = 0;

  std::size_t size() const { return Htilde.size(); }
  std::size_t coefficient_rows() const { return S.rows(); }
};

/// Lower Hessenberg operator with bands a (n,n-2), b (n,n-1), c (n,n) and a
/// unit superdiagonal. Entries a[0], a[1], b[0] are structural zeros.
template <class T>
struct BandedHessenberg {
  std::vector<T> a;
  std::vector<T> b;
  std::vector<T> c;

  std::size_t size() const { return c.size(); }
  /// Entry (i, j) of the truncation; zero outside the bands.
  T entry(std::size_t i, std::size_t j) const;
};

/// Polynomials read off a factorization. Type I coefficients are per-weight:
/// typeI[w][n][i] multiplies x^i p_w(x) in Q_n, where p_w is the normalized
/// weight the moment matrix was built from.
template <class T>
struct PolynomialFamily {
  Matrix<T> typeII;                          // row n: monic B_n coefficients
  std::vector<std::vector<T>> typeI[2];
  std::vector<T> B_at_1;
  std::vector<UnitScalar<T>> q_at_1;         // gauge q_0 = 1
  std::size_t size() const { return B_at_1.size(); }
  /// Polynomials with explicit coefficients (a leading block for large truncations).
  std::size_t coefficient_rows() const { return typeII.rows(); }
};

inline constexpr std::size_t kAllRows = static_cast<std::size_t>(-1);

/// Doolittle elimination without pivoting; S and Stilde are formed for the
/// first `coefficient_rows` rows.
template <class T>
GaussBorelFactorization<T> factorize(const MomentMatrix<T>& g, std::size_t coefficient_rows = kAllRows);

/// H = S Lambda S^{-1}, solved row by row from L H = Lambda L. Rows 0..N-2 of the truncation are exact; the band
/// structure is asserted on those rows.
template <class T>
BandedHessenberg<T> extract_hessenberg(const GaussBorelFactorization<T>& f);

/// Band residual: largest off-band magnitude seen during extraction is
/// reported through this overload (zero in exact mode).
template <class T>
BandedHessenberg<T> extract_hessenberg(const GaussBorelFactorization<T>& f, double& off_band_max);

/// q_n = (1/Htilde_n) sum_k Stilde(n,k) rho^[k odd], rescaled so q_0 = 1.
/// `rho` is lim p2/p1 at x = 1; exact pipelines keep it symbolic unless it is
/// rational.
template <class T>
std::vector<UnitScalar<T>> normalized_typeI_at_1(const GaussBorelFactorization<T>& f, const SymbolicUnit& rho);

template <class T>
PolynomialFamily<T> polynomial_family(const GaussBorelFactorization<T>& f, const SymbolicUnit& rho);

/// Horner evaluation of B_n.
template <class T>
T typeII_at(const PolynomialFamily<T>& family, std::size_t n, const T& x);

/// Eigen-relation at 1 per row: a_n B_{n-2} + b_n B_{n-1} + c_n B_n + B_{n+1} - B_n.
template <class T>
std::vector<T> eigen_relation_residuals(const BandedHessenberg<T>& H, const std::vector<T>& B1);

/// Left relation: q_{n-1} + c_n q_n + b_{n+1} q_{n+1} + a_{n+2} q_{n+2} - q_n.
template <class T>
std::vector<UnitScalar<T>> left_relation_residuals(const BandedHessenberg<T>& H,
                                                   const std::vector<UnitScalar<T>>& q);

/// Factorize g with odd columns scaled by each probe value (leading block of
/// size `block`) and confirm the Hessenberg bands are identical, i.e. the
/// cross-weight unit cannot leak into a, b, c.
bool verify_unit_cancellation(const MomentMatrix<Rational>& g, std::size_t block,
                              const std::vector<Rational>& probes);

/// Convert an exact family to numeric, evaluating the symbolic unit.
PolynomialFamily<Real> to_numeric(const PolynomialFamily<Rational>& family, const SymbolicUnit& rho, int digits);
BandedHessenberg<Real> to_numeric(const BandedHessenberg<Rational>& H, int digits);

}  // namespace mochain
