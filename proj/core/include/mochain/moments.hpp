#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "mochain/matrix.hpp"
#include "mochain/rational.hpp"
#include "mochain/real.hpp"
#include "mochain/unit_poly.hpp"
#include "mochain/weights.hpp"

namespace mochain {

enum class Mode { exact, numeric };
const char* to_string(Mode m);

/// Column k of an interleaved layout holds x^(k/2) against weight 1 + k%2;
/// a single-weight layout is a plain Hankel matrix.
struct MomentLayout {
  std::size_t size = 0;
  bool interleaved = true;

  std::size_t power(std::size_t k) const { return interleaved ? k / 2 : k; }
  int weight_index(std::size_t k) const { return interleaved ? 1 + static_cast<int>(k % 2) : 1; }
};

template <class T>
struct MomentMatrix {
  Matrix<T> entries;
  MomentLayout layout;
  Mode mode = Mode::exact;
  int digits = 0;             // numeric mode working digits
  std::string normalization;  // what each column family was divided by
  /// Ratio of the raw masses of w2 and w1. Columns are stored per-weight
  /// normalized, so multiplying odd columns by this unit recovers moments of
  /// the raw pair.
  std::optional<SymbolicUnit> odd_unit;
  Rational support_lo{0};
  Rational support_hi{1};
  std::string affine_map;  // how the reported support maps to [0,1]

  std::size_t size() const { return layout.size; }
};

/// lim_{x->1} p2(x)/p1(x) for the per-weight normalized densities p1, p2.
/// This is the only place a transcendental constant enters the JP pipeline.
SymbolicUnit right_endpoint_ratio(const WeightSystem& system, int digits = 64);

/// Raw-mass ratio B(alpha2+1, alpha0+1) / B(alpha1+1, alpha0+1).
SymbolicUnit jp_mass_ratio(const JacobiPineiroParams& params, int digits = 64);

MomentMatrix<Rational> build_jp_moments(const JacobiPineiroParams& params, std::size_t n);

/// Exact moments (a)_k (b)_k / ((c)_k (d)_k) of the normalized omega density.
MomentMatrix<Rational> build_ll_moments_exact(const HypergeometricParams& params, std::size_t n);

/// Numeric moments from term-by-term integration of the 2F1 representation,
/// split at x = 1/2 so both halves converge geometrically.
MomentMatrix<Real> build_ll_moments(const HypergeometricParams& params, std::size_t n, int digits);

/// Moments of x^0 .. x^(count-1) against the normalized omega density.
std::vector<Real> ll_moments_numeric(const HypergeometricParams& params, std::size_t count, int digits);

/// Moment of x^k against the normalized omega density, numerically.
Real ll_moment_numeric(const HypergeometricParams& params, unsigned long k, int digits);

struct ClassicalMeasure {
  enum class Kind { chebyshev, jacobi } kind = Kind::chebyshev;
  Rational p{0};  // jacobi: weight x^q (1-x)^p on [0,1]
  Rational q{0};

  static ClassicalMeasure chebyshev() { return {}; }
  static ClassicalMeasure jacobi(Rational p, Rational q) { return {Kind::jacobi, std::move(p), std::move(q)}; }
};

/// Single-weight Hankel moment matrix. Chebyshev is reported on [-1,1]
/// (arcsine measure), Jacobi on [0,1].
MomentMatrix<Rational> build_classical_moments(const ClassicalMeasure& measure, std::size_t n);

/// Moment sequence m_0..m_{count-1} of a classical measure.
std::vector<Rational> classical_moments(const ClassicalMeasure& measure, std::size_t count);

/// Entry-wise conversion of an exact matrix to numeric at `digits`.
MomentMatrix<Real> to_numeric(const MomentMatrix<Rational>& g, int digits);

}  // namespace mochain
