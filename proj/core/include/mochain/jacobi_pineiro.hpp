#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mochain/gauss_borel.hpp"
#include "mochain/rational.hpp"
#include "mochain/weights.hpp"

namespace mochain {

/// Which weight exponent plays alpha in the closed-form lambda formulas.
enum class LambdaConvention { as_printed, alpha_swapped };
/// The third residue class carries a factor "(2n + 2 + 1 + alpha0)" that does
/// not match its siblings; `corrected` reads it as (2n + 2 + alpha0).
enum class ThirdLambdaReading { printed, corrected };

const char* to_string(LambdaConvention c);
const char* to_string(ThirdLambdaReading r);

struct LambdaLadder {
  JacobiPineiroParams params;
  LambdaConvention convention = LambdaConvention::as_printed;
  ThirdLambdaReading reading = ThirdLambdaReading::printed;
  std::vector<Rational> values{};  // lambda_0 .. lambda_{3N+6}

  /// First index with a negative value, if any.
  std::optional<std::size_t> first_negative() const;
};

/// Exact lambda_0..lambda_{3N+6}. Identical numerator and denominator
/// factors cancel before division; a surviving zero denominator is a
/// DomainError (non-generic parameters).
LambdaLadder lambda_ladder(const JacobiPineiroParams& params, std::size_t n, LambdaConvention convention,
                           ThirdLambdaReading reading = ThirdLambdaReading::printed);

/// a, b, c indexed like BandedHessenberg (a[0], a[1], b[0] are zero), n = 0..N.
struct AssembledBands {
  std::vector<Rational> a, b, c;
};
AssembledBands assemble_abc(const LambdaLadder& ladder);

/// B_{n1+n}(1) with (alpha, beta, gamma) = (alpha1, alpha2, alpha0); n1 is n or n + 1.
Rational b_at_1_closed(const JacobiPineiroParams& params, std::size_t n, std::size_t n1);
/// Same value indexed by degree m = n1 + n along the step line.
Rational b_at_1_closed(const JacobiPineiroParams& params, std::size_t m);

/// kappa = 4/27 and the band limits (kappa^3, 3 kappa^2, 3 kappa).
struct JacobiPineiroLimits {
  Rational kappa{4, 27};
  Rational a{64, 19683};
  Rational b{16, 243};
  Rational c{4, 9};
  Rational typeII_ratio{8, 27};
  Rational typeI_ratio{27, 8};
};

struct StreamMismatch {
  std::string stream;
  std::size_t index = 0;
  Rational oracle;
  Rational formula;
};

struct StreamComparison {
  std::string stream;  // "a", "b", "c" or "B(1)"
  std::size_t compared = 0;
  std::size_t matches = 0;
  std::vector<StreamMismatch> mismatches{};
  std::optional<std::size_t> first_mismatch() const;
};

struct ConventionCandidate {
  LambdaConvention convention;
  ThirdLambdaReading reading;
  std::vector<StreamComparison> streams{};  // a, b, c
  std::size_t mismatch_count = 0;
  bool c0_matches = false;
  std::optional<std::size_t> first_negative_lambda{};
};

/// Report-only reconciliation of the closed forms with the oracle bands.
struct CalibrationReport {
  JacobiPineiroParams params;
  std::size_t compared = 0;
  std::vector<ConventionCandidate> candidates{};
  std::size_t selected = 0;                      // index into candidates
  std::vector<LambdaConvention> c0_conventions{};  // conventions whose c_0 equals the oracle's
  StreamComparison closed_b_at_1{};                // as-printed closed form vs oracle B_n(1)
  std::vector<StreamMismatch> known_discrepancies{};  // residual mismatches of the selected candidate
};

/// Compares a, b, c (n < count) under every convention and third-lambda
/// reading, and the closed B_n(1) for n < count + 1, against the oracle.
CalibrationReport calibrate_conventions(const JacobiPineiroParams& params, const BandedHessenberg<Rational>& oracle,
                                        const std::vector<Rational>& oracle_B_at_1, std::size_t count);

/// Data behind the limit argument: with s_n = (a_n B_{n-2} + b_n B_{n-1}) / B_n
/// and t_n = a_{n+1} B_{n-1} / B_n (values at 1), q obeys
/// q_{n-1} = s_n q_n + t_n q_{n+1}, whose characteristic roots are -27 and 27/8.
template <class T>
struct PoincareDiagnostic {
  std::vector<T> s, t;                       // index n (s[0], s[1], t[0] unused)
  std::vector<UnitScalar<T>> cd_residuals;   // q_{n-1} B_n - q_n (a_n B_{n-2} + b_n B_{n-1}) - q_{n+1} a_{n+1} B_{n-1}
  double max_cd_residual = 0.0;
  Rational s_limit{7, 27};
  Rational t_limit{8, 729};
  Rational roots[2] = {Rational(-27), Rational(27, 8)};
  bool characteristic_ok = false;            // -1 + s r + t r^2 vanishes at both roots
  std::vector<double> q_ratio;               // q_{n+1}/q_n
  std::vector<double> B_ratio;               // B_{n+1}(1)/B_n(1)
  /// Smallest n0 with |s_{2n} - 7/27| strictly decreasing for 2n >= n0 (if any).
  std::optional<std::size_t> s_monotone_from;
};

template <class T>
PoincareDiagnostic<T> poincare_diagnostic(const BandedHessenberg<T>& H, const std::vector<T>& B_at_1,
                                          const std::vector<UnitScalar<T>>& q_at_1, const SymbolicUnit& rho);

}  // namespace mochain
