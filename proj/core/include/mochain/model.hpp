#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mochain/gauss_borel.hpp"
#include "mochain/moments.hpp"
#include "mochain/quadrature.hpp"
#include "mochain/weights.hpp"

namespace mochain {

/// How sigma_II (values of B_n at 1) and sigma_I (type I values at 1) are chosen.
///  - oracle: the Gauss-Borel values; every row of both chains is stochastic.
///  - toeplitz: sigma_II = (2 kappa)^n, sigma_I = (2 kappa)^-n for a Toeplitz
///    operator with bands (kappa^3, 3 kappa^2, 3 kappa, 1). Interior rows are
///    stochastic, the first boundary rows lose mass.
enum class Normalization { automatic, oracle, toeplitz };
const char* to_string(Normalization n);
Normalization parse_normalization(const std::string& s);

struct ModelOptions {
  Mode mode = Mode::exact;
  std::size_t size = 8;  // states in the stochastic truncations
  int digits = 40;       // numeric view precision / requested agreement
  Normalization normalization = Normalization::automatic;
  int max_digits = 12000;
};

struct CheckRecord {
  std::string name;
  bool passed = false;
  std::string detail;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

/// Everything derived from one weight system at one truncation.
struct ChainModel {
  WeightSystem system;
  ModelOptions options;
  std::size_t size = 0;  // stochastic truncation N; Hessenberg rows 0..N+1 are exact
  SymbolicUnit rho{};  // lim p2/p1 at x = 1
  Normalization normalization = Normalization::oracle;
  std::optional<Rational> toeplitz_kappa{};

  // Exact artefacts (exact mode only).
  std::optional<GaussBorelFactorization<Rational>> exact_factorization{};
  std::optional<BandedHessenberg<Rational>> exact_H{};
  std::optional<PolynomialFamily<Rational>> exact_family{};
  std::vector<Rational> exact_sigma_II{};
  std::vector<UnitPoly> exact_sigma_I{};

  // Numeric view, always present.
  BandedHessenberg<Real> H{};
  PolynomialFamily<Real> family{};
  std::vector<Real> sigma_II{};
  std::vector<Real> sigma_I{};
  int digits = 0;
  double achieved_digits = 0.0;  // agreement between escalation levels (inf in exact mode)
  std::vector<int> escalation_digits{};
  double off_band_max = 0.0;

  std::vector<CheckRecord> checks{};
  bool all_checks_passed() const;
};

ChainModel build_model(const WeightSystem& system, const ModelOptions& options);

/// Integrates polynomial times normalized weight channel (1 or 2).
///
/// Jacobi-Pineiro channels use Gauss-Jacobi rules exact for the requested
/// degree; hypergeometric channels apply the exact moment functional, since
/// their densities are not polynomial times Jacobi.
class ChannelFunctional {
 public:
  ChannelFunctional(const WeightSystem& system, std::size_t max_degree, int digits);

  /// Integral of sum_i coeffs[i] x^i against p_channel.
  Real integrate(int channel, const std::vector<Real>& coeffs) const;
  std::size_t max_degree() const noexcept { return max_degree_; }
  const char* method() const noexcept { return quadrature_ ? "gauss_jacobi" : "moment_functional"; }

 private:
  std::size_t max_degree_;
  int digits_;
  bool quadrature_ = false;
  QuadratureRule rules_[2];
  std::vector<Real> moments_[2];
};

std::vector<Real> poly_multiply(const std::vector<Real>& a, const std::vector<Real>& b);

struct OrthogonalityReport {
  std::string name;
  double max_deviation = 0.0;
  std::size_t worst_i = 0, worst_j = 0;
  std::size_t checked = 0;
  const char* method = "";
};

/// int B_m Q_k = delta_{mk} for m, k <= upto.
OrthogonalityReport verify_biorthogonality(const PolynomialFamily<Real>& family, const WeightSystem& system,
                                           std::size_t upto, int digits);
/// int x^j Q_n = 0 for j < n, n <= upto.
OrthogonalityReport verify_typeI_orthogonality(const PolynomialFamily<Real>& family, const WeightSystem& system,
                                               std::size_t upto, int digits);
/// int B_n x^j p_a = 0 for j <= floor((n - a)/2), n <= upto.
OrthogonalityReport verify_typeII_orthogonality(const PolynomialFamily<Real>& family, const WeightSystem& system,
                                                std::size_t upto, int digits);

}  // namespace mochain
