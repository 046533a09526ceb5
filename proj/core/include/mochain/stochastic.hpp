#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "mochain/gauss_borel.hpp"
#include "mochain/unit_poly.hpp"

namespace mochain {

/// Scalar type of the dual (check) chain: exact entries live in Q(v).
template <class T>
using CheckScalar = std::conditional_t<std::is_same_v<T, Rational>, UnitRatio, Real>;

/// Square matrix with nonzeros only on diagonals -lower..+upper.
template <class T>
class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(std::size_t n, int lower, int upper, T zero)
      : n_(n), lower_(lower), upper_(upper), zero_(zero),
        data_(n * static_cast<std::size_t>(lower + upper + 1), std::move(zero)) {}

  std::size_t size() const noexcept { return n_; }
  int lower() const noexcept { return lower_; }
  int upper() const noexcept { return upper_; }
  bool in_band(std::size_t i, std::size_t j) const noexcept {
    const long d = static_cast<long>(j) - static_cast<long>(i);
    return i < n_ && j < n_ && d >= -lower_ && d <= upper_;
  }
  /// Zero outside the band.
  const T& operator()(std::size_t i, std::size_t j) const { return in_band(i, j) ? data_[slot(i, j)] : zero_; }
  T& at(std::size_t i, std::size_t j);

 private:
  std::size_t slot(std::size_t i, std::size_t j) const {
    return i * static_cast<std::size_t>(lower_ + upper_ + 1) + static_cast<std::size_t>(static_cast<long>(j) - static_cast<long>(i) + lower_);
  }
  std::size_t n_ = 0;
  int lower_ = 0, upper_ = 0;
  T zero_{};
  std::vector<T> data_;
};

enum class RowStatus {
  complete,            // every band of the row lies inside the truncation; sums to 1
  truncation_edge,     // a band points past the truncation; excluded from stochasticity checks
  boundary_deficient,  // structural boundary row under a normalization that is not stochastic there
};
const char* to_string(RowStatus s);

/// Dual stochastic truncations hatH = sigma_II^{-1} H sigma_II and
/// checkH = sigma_I^{-1} H^T sigma_I.
template <class T>
struct StochasticPair {
  BandMatrix<T> hatH;                 // bands -2..+1
  BandMatrix<CheckScalar<T>> checkH;  // bands -1..+2
  std::vector<T> sigma_II;
  std::vector<UnitScalar<T>> sigma_I;
  std::vector<RowStatus> hat_rows, check_rows;
  std::vector<T> hat_row_sums;
  std::vector<CheckScalar<T>> check_row_sums;
  BandedHessenberg<T> source;
  SymbolicUnit rho;

  std::size_t size() const { return hatH.size(); }
};

struct StochasticOptions {
  /// Structural boundary rows (hatH rows 0, 1 and checkH row 0) may sum to
  /// less than one, as they do under the Toeplitz normalization.
  bool allow_boundary_deficit = false;
};

/// Builds the N x N pair. Negative entries raise PositivityError; an
/// interior row not summing to one (exactly, or within 1e-12 N) raises
/// ConsistencyError.
template <class T>
StochasticPair<T> make_stochastic_pair(const BandedHessenberg<T>& H, const std::vector<T>& sigma_II,
                                       const std::vector<UnitScalar<T>>& sigma_I, const SymbolicUnit& rho,
                                       std::size_t n, const StochasticOptions& options = {});

struct DualityReport {
  std::size_t checked = 0;
  double max_residual = 0.0;
  bool exact = false;  // exact pipeline and every residual is exactly zero
};

/// checkH(n, n-k) = sigma_II[n-k] sigma_I[n-k] / (sigma_II[n] sigma_I[n]) hatH(n-k, n), k in {-1, 0, 1, 2}.
template <class T>
DualityReport verify_duality(const StochasticPair<T>& pair);

struct TransposedLimitReport {
  std::size_t first_row = 2;        // discrepancy[k] belongs to row first_row + k
  std::vector<double> discrepancy;  // per row: max_k |checkH(n, n+k) - hatH(n+k, n)|, k in -2..1
  double head_max = 0.0;            // first third of the truncation
  double tail_max = 0.0;            // last third
  double window_max = 0.0;          // last `window` rows
  double decay_slope = 0.0;         // least-squares slope of log10(discrepancy) over the tail third
  bool decreasing = false;          // tail_max < head_max (or both zero)
};

template <class T>
TransposedLimitReport verify_transposed_limit(const StochasticPair<T>& pair, std::size_t window);

/// Banded operator given by a generator, for norm estimates on growing truncations.
struct BandedOperator {
  int lower = 0;
  int upper = 0;
  /// Entry (i, j) for |j - i| within the band; nullopt past a finite operator's end.
  std::function<std::optional<double>(std::size_t, std::size_t)> entry;
  std::optional<std::size_t> finite_size;  // rows available, if not infinite

  /// The Hessenberg operator; with `extend_constant` the last row's bands
  /// continue forever (valid only when they are constant, which is checked).
  static BandedOperator from_hessenberg(const BandedHessenberg<Real>& H, bool extend_constant = false);
  /// Tridiagonal with constant (sub, diag, super).
  static BandedOperator tridiagonal(double sub, double diag, double super);
};

/// Largest singular value of the n x n truncation (bisection with banded
/// Cholesky of s^2 I - A^T A), to relative accuracy `tol`.
double truncation_norm(const BandedOperator& op, std::size_t n, double tol = 1e-12);

struct NormEstimate {
  double value = 0.0;
  std::vector<std::size_t> truncations;
  std::vector<double> estimates;
};

/// Escalates n = 64, 128, ... until successive truncation norms agree to `tol`.
NormEstimate estimate_norm(const BandedOperator& op, double tol = 1e-6, std::size_t max_n = 1u << 15);

struct RescaledOperator {
  BandedHessenberg<Real> original;
  double norm = 0.0;
  bool norm_declared = false;
  NormEstimate estimate;
  BandedHessenberg<Real> scaled;  // a/|H|^3, b/|H|^2, c/|H|, unit superdiagonal
  std::vector<Real> sigma;        // |H|^n
  /// Truncation norm of the scaled operator (not 1 in general: the diagonal
  /// similarity does not preserve the norm).
  double scaled_norm = 0.0;
};

/// With `declared_norm` the estimate is skipped (|H| = 1 gives the identity rescale).
RescaledOperator rescale_to_unit_norm(const BandedHessenberg<Real>& H, std::optional<double> declared_norm = {},
                                      bool extend_constant = false);

}  // namespace mochain
