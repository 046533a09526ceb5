#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mochain/rational.hpp"
#include "mochain/real.hpp"

namespace mochain {

/// w1 = x^alpha1 (1-x)^alpha0, w2 = x^alpha2 (1-x)^alpha0 on [0,1].
struct JacobiPineiroParams {
  Rational alpha1;
  Rational alpha2;
  Rational alpha0;

  /// Validates alpha_i > -1 and alpha1 - alpha2 not an integer.
  static JacobiPineiroParams make(Rational alpha1, Rational alpha2, Rational alpha0);
  /// Positive Hessenberg coefficients iff |alpha1 - alpha2| < 1.
  bool positivity() const { return (alpha1 - alpha2).abs() < Rational(1); }
  JacobiPineiroParams swapped() const { return {alpha2, alpha1, alpha0}; }
  std::string to_string() const;
};

/// Hypergeometric weights W1 = omega(x; a, b; c, d), W2 = omega(x; a, b+1; c+1, d).
struct HypergeometricParams {
  Rational a;
  Rational b;
  Rational c;
  Rational d;
  Rational delta;  // c + d - a - b

  static HypergeometricParams make(Rational a, Rational b, Rational c, Rational d);
  /// (4/3, 5/3, 2, 5/2), whose Hessenberg operator is Toeplitz.
  static HypergeometricParams uniform_tuple();
  bool is_uniform_tuple() const;
  /// Parameters of the second weight.
  HypergeometricParams shifted() const { return {a, b + Rational(1), c + Rational(1), d, delta}; }
  std::string to_string() const;
};

/// Single weight x^q (1-x)^p on [0,1] (classical Jacobi).
struct ClassicalJacobiParams {
  Rational p;
  Rational q;
};

enum class WeightKind { jacobi_pineiro, hypergeometric, classical_jacobi };
const char* to_string(WeightKind kind);

class WeightSystem {
 public:
  explicit WeightSystem(JacobiPineiroParams p) : params_(std::move(p)) {}
  explicit WeightSystem(HypergeometricParams p) : params_(std::move(p)) {}
  explicit WeightSystem(ClassicalJacobiParams p) : params_(std::move(p)) {}

  WeightKind kind() const noexcept { return static_cast<WeightKind>(params_.index()); }
  const JacobiPineiroParams& jp() const;
  const HypergeometricParams& hypergeometric() const;
  const ClassicalJacobiParams& classical() const;

  /// Support is [0,1] for every system.
  static constexpr int support_lo = 0;
  static constexpr int support_hi = 1;

  std::string describe() const;

 private:
  std::variant<JacobiPineiroParams, HypergeometricParams, ClassicalJacobiParams> params_;
};

Real jp_weight(const JacobiPineiroParams& params, int which, const Real& x);

/// omega(x) through its 2F1 representation; `shifted` selects W2.
Real ll_weight_series(const HypergeometricParams& params, bool shifted, const Real& x);

/// Cube-root closed forms of W1, W2 for the uniform tuple.
Real ll_weight_closed(int which, const Real& x);

enum class ChainClass { recurrent, transient, boundary_flagged };
const char* to_string(ChainClass c);

struct Classification {
  ChainClass verdict;
  std::string rule;                   // which criterion decided
  std::vector<std::string> readings;  // competing readings for flagged cases
};

/// Recurrence is decided by divergence of the integral of w1(x)/(1-x),
/// i.e. by the exponent of (1-x) at the right endpoint.
Classification classify_chain(const WeightSystem& system);

/// Diagnostic: integral of w1(x)/(1-x) over [1-eps, 1-eps^2] for shrinking
/// eps. Growing values suggest divergence; this never overrides
/// classify_chain.
struct DivergenceProbe {
  std::vector<double> eps;
  std::vector<Real> partial_integrals;
  bool growing = false;
};
DivergenceProbe divergence_probe(const WeightSystem& system, int digits);

}  // namespace mochain
