#include "mochain/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mochain/error.hpp"

namespace mochain {

const char* to_string(RowStatus s) {
  switch (s) {
    case RowStatus::complete: return "complete";
    case RowStatus::truncation_edge: return "truncation_edge";
    case RowStatus::boundary_deficient: return "boundary_deficient";
  }
  return "unknown";
}

template <class T>
T& BandMatrix<T>::at(std::size_t i, std::size_t j) {
  if (!in_band(i, j))
    throw IndexError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") is outside the band");
  return data_[slot(i, j)];
}

namespace {

UnitRatio check_entry(const Rational& h, const UnitPoly& q_from, const UnitPoly& q_to) {
  return UnitRatio(q_from * h, q_to);
}
Real check_entry(const Real& h, const Real& q_from, const Real& q_to) { return h * q_from / q_to; }

double value_of(const Rational& x, const SymbolicUnit&) { return x.to_double(); }
double value_of(const Real& x, const SymbolicUnit&) { return x.to_double(); }
double value_of(const UnitRatio& x, const SymbolicUnit& rho) {
  if (auto r = x.as_rational()) return r->to_double();
  return x.evaluate(rho.value).to_double();
}

int sign_of(const Rational& x, const SymbolicUnit&) { return x.sign(); }
int sign_of(const Real& x, const SymbolicUnit&) { return x.sign(); }
int sign_of(const UnitPoly& x, const SymbolicUnit& rho) {
  return x.is_rational() ? x.coeff(0).sign() : x.evaluate(rho.value).sign();
}
int sign_of(const UnitRatio& x, const SymbolicUnit& rho) {
  if (auto r = x.as_rational()) return r->sign();
  return x.evaluate(rho.value).sign();
}

bool is_exact_one(const Rational& x) { return x == Rational(1); }
bool is_exact_one(const UnitRatio& x) { return x == UnitRatio(Rational(1)); }

template <class S>
bool sums_to_one(const S& sum, bool exact, double tol, const SymbolicUnit& rho) {
  if constexpr (std::is_same_v<S, Real>) {
    (void)exact;
    return std::fabs(value_of(sum, rho) - 1.0) <= tol;
  } else {
    (void)tol;
    return exact && is_exact_one(sum);
  }
}

template <class S>
bool is_negative(const S& x, double tol, const SymbolicUnit& rho) {
  if constexpr (std::is_same_v<S, Real>) return value_of(x, rho) < -tol;
  (void)tol;
  return sign_of(x, rho) < 0;
}

const char* band_name(long offset) {
  switch (offset) {
    case -2: return "a";
    case -1: return "b";
    case 0: return "c";
    default: return "superdiagonal";
  }
}

std::string describe(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

template <class T>
StochasticPair<T> make_stochastic_pair(const BandedHessenberg<T>& H, const std::vector<T>& sigma_II,
                                       const std::vector<UnitScalar<T>>& sigma_I, const SymbolicUnit& rho,
                                       std::size_t n, const StochasticOptions& options) {
  if (n < 3) throw DomainError("stochastic truncation needs at least three states");
  if (H.size() < n || sigma_II.size() < n || sigma_I.size() < n)
    throw SizingError("truncation of size " + std::to_string(n) + " exceeds the available Hessenberg rows");
  constexpr bool exact = std::is_same_v<T, Rational>;
  const double tol = exact ? 0.0 : 1e-12 * static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (sign_of(sigma_II[k], rho) <= 0)
      throw PositivityError("B_" + std::to_string(k) + "(1) normalization is not positive");
    if (sign_of(sigma_I[k], rho) <= 0)
      throw PositivityError("Q_" + std::to_string(k) + "(1) normalization is not positive");
  }

  const T zero = like(H.c.front(), 0);
  StochasticPair<T> p;
  p.rho = rho;
  p.source = H;
  p.sigma_II.assign(sigma_II.begin(), sigma_II.begin() + static_cast<long>(n));
  p.sigma_I.assign(sigma_I.begin(), sigma_I.begin() + static_cast<long>(n));
  p.hatH = BandMatrix<T>(n, 2, 1, zero);
  p.checkH = BandMatrix<CheckScalar<T>>(n, 1, 2, CheckScalar<T>(zero));

  for (std::size_t i = 0; i < n; ++i) {
    T sum = zero;
    for (std::size_t j = i >= 2 ? i - 2 : 0; j <= i + 1 && j < n; ++j) {
      T v = H.entry(i, j) * sigma_II[j] / sigma_II[i];
      const long off = static_cast<long>(j) - static_cast<long>(i);
      if (is_negative(v, tol, rho))
        throw PositivityError("hatH(" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                              describe(value_of(v, rho)) + " is negative (coefficient " + band_name(off) + "_" +
                              std::to_string(i) + ")");
      sum += v;
      p.hatH.at(i, j) = std::move(v);
    }
    p.hat_row_sums.push_back(sum);
  }

  for (std::size_t i = 0; i < n; ++i) {
    CheckScalar<T> sum(zero);
    for (std::size_t m = i >= 1 ? i - 1 : 0; m <= i + 2 && m < n; ++m) {
      CheckScalar<T> v = check_entry(H.entry(m, i), sigma_I[m], sigma_I[i]);
      const long off = static_cast<long>(i) - static_cast<long>(m);
      if (is_negative(v, tol, rho))
        throw PositivityError("checkH(" + std::to_string(i) + "," + std::to_string(m) + ") = " +
                              describe(value_of(v, rho)) + " is negative (coefficient " + band_name(off) + "_" +
                              std::to_string(m) + ")");
      sum = sum + v;
      p.checkH.at(i, m) = std::move(v);
    }
    p.check_row_sums.push_back(std::move(sum));
  }

  const auto classify = [&](const auto& sum, bool edge, bool structural_boundary, const char* which,
                            std::size_t row) {
    if (edge) return RowStatus::truncation_edge;
    if (sums_to_one(sum, exact, tol, rho)) return RowStatus::complete;
    if (structural_boundary && options.allow_boundary_deficit) return RowStatus::boundary_deficient;
    throw ConsistencyError(std::string(which) + " row " + std::to_string(row) + " sums to " +
                           describe(value_of(sum, rho)) +
                           " instead of 1 (Hessenberg bands and normalizations do not belong together)");
  };
  for (std::size_t i = 0; i < n; ++i) p.hat_rows.push_back(classify(p.hat_row_sums[i], i + 1 >= n, i < 2, "hatH", i));
  for (std::size_t i = 0; i < n; ++i)
    p.check_rows.push_back(classify(p.check_row_sums[i], i + 2 >= n, i == 0, "checkH", i));
  return p;
}

template <class T>
DualityReport verify_duality(const StochasticPair<T>& pair) {
  DualityReport r;
  constexpr bool exact = std::is_same_v<T, Rational>;
  r.exact = exact;
  const std::size_t n = pair.size();
  for (std::size_t i = 0; i < n; ++i)
    for (int k = -1; k <= 2; ++k) {
      const long m_signed = static_cast<long>(i) - k;
      if (m_signed < 0 || m_signed >= static_cast<long>(n)) continue;
      const auto m = static_cast<std::size_t>(m_signed);
      const CheckScalar<T> rhs =
          check_entry(pair.sigma_II[m] * pair.hatH(m, i) / pair.sigma_II[i], pair.sigma_I[m], pair.sigma_I[i]);
      const CheckScalar<T> diff = pair.checkH(i, m) - rhs;
      ++r.checked;
      r.max_residual = std::max(r.max_residual, std::fabs(value_of(diff, pair.rho)));
      if constexpr (exact) {
        if (!diff.is_zero()) r.exact = false;
      }
    }
  return r;
}

template <class T>
TransposedLimitReport verify_transposed_limit(const StochasticPair<T>& pair, std::size_t window) {
  const std::size_t n = pair.size();
  if (n < window + 10) throw SizingError("transposed-limit check needs a truncation of at least window + 10");
  TransposedLimitReport r;
  r.first_row = 2;
  for (std::size_t i = 2; i + 1 < n; ++i) {
    double worst = 0.0;
    for (int k = -2; k <= 1; ++k) {
      const std::size_t j = static_cast<std::size_t>(static_cast<long>(i) + k);
      const double d = std::fabs(value_of(pair.checkH(i, j), pair.rho) - value_of(pair.hatH(j, i), pair.rho));
      worst = std::max(worst, d);
    }
    r.discrepancy.push_back(worst);
  }
  const auto row_of = [&](std::size_t idx) { return idx + r.first_row; };
  std::vector<double> xs, ys;
  for (std::size_t idx = 0; idx < r.discrepancy.size(); ++idx) {
    const std::size_t row = row_of(idx);
    const double d = r.discrepancy[idx];
    if (3 * row < n) r.head_max = std::max(r.head_max, d);
    if (3 * row >= 2 * n) {
      r.tail_max = std::max(r.tail_max, d);
      if (d > 0.0) {
        xs.push_back(static_cast<double>(row));
        ys.push_back(std::log10(d));
      }
    }
    if (row + 1 + window >= n) r.window_max = std::max(r.window_max, d);
  }
  if (xs.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
    r.decay_slope = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  r.decreasing = r.tail_max < r.head_max || (r.tail_max == 0.0 && r.head_max == 0.0);
  return r;
}

BandedOperator BandedOperator::from_hessenberg(const BandedHessenberg<Real>& H, bool extend_constant) {
  const std::size_t size = H.size();
  if (size < 3) throw DomainError("Hessenberg operator needs at least three rows");
  std::vector<double> a, b, c;
  for (std::size_t i = 0; i < size; ++i) {
    a.push_back(H.a[i].to_double());
    b.push_back(H.b[i].to_double());
    c.push_back(H.c[i].to_double());
  }
  if (extend_constant) {
    const auto near = [](double x, double y) { return std::fabs(x - y) <= 1e-12 * std::max(1.0, std::fabs(y)); };
    for (std::size_t i = 2; i < size; ++i)
      if (!near(a[i], a.back()) || !near(b[i], b.back()) || !near(c[i], c.back()))
        throw UnsupportedError("constant extension needs constant bands from row 2 on");
  }
  BandedOperator op;
  op.lower = 2;
  op.upper = 1;
  if (!extend_constant) op.finite_size = size;
  op.entry = [a, b, c, size, extend_constant](std::size_t i, std::size_t j) -> std::optional<double> {
    if (i >= size && !extend_constant) return std::nullopt;
    const std::size_t r = std::min(i, size - 1);
    const long d = static_cast<long>(j) - static_cast<long>(i);
    switch (d) {
      case 1: return 1.0;
      case 0: return i < size ? c[i] : c[r];
      case -1: return i < size ? b[i] : b[r];
      case -2: return i < size ? a[i] : a[r];
      default: return 0.0;
    }
  };
  return op;
}

BandedOperator BandedOperator::tridiagonal(double sub, double diag, double super) {
  BandedOperator op;
  op.lower = 1;
  op.upper = 1;
  op.entry = [=](std::size_t i, std::size_t j) -> std::optional<double> {
    const long d = static_cast<long>(j) - static_cast<long>(i);
    return d == -1 ? sub : (d == 0 ? diag : (d == 1 ? super : 0.0));
  };
  return op;
}

namespace {

// Symmetric band storage: m[i][d] = M(i, i + d), 0 <= d <= w.
using SymBand = std::vector<std::vector<double>>;

bool positive_definite_shift(const SymBand& m, std::size_t w, double s) {
  const std::size_t n = m.size();
  SymBand l(n, std::vector<double>(w + 1, 0.0));  // l[i][d] = L(i + d, i)
  for (std::size_t j = 0; j < n; ++j) {
    double diag = s - m[j][0];
    for (std::size_t k = j >= w ? j - w : 0; k < j; ++k) diag -= l[k][j - k] * l[k][j - k];
    if (!(diag > 0.0)) return false;
    const double root = std::sqrt(diag);
    l[j][0] = root;
    for (std::size_t d = 1; d <= w && j + d < n; ++d) {
      const std::size_t i = j + d;
      double v = -m[j][d];
      for (std::size_t k = i >= w ? i - w : 0; k < j; ++k) v -= l[k][i - k] * l[k][j - k];
      l[j][d] = v / root;
    }
  }
  return true;
}

}  // namespace

double truncation_norm(const BandedOperator& op, std::size_t n, double tol) {
  if (n == 0) return 0.0;
  if (op.finite_size && n > *op.finite_size) throw SizingError("truncation exceeds the operator's available rows");
  const auto lo = static_cast<std::size_t>(op.lower), up = static_cast<std::size_t>(op.upper);
  const std::size_t w = lo + up;
  SymBand m(n, std::vector<double>(w + 1, 0.0));
  double bound = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j0 = i >= lo ? i - lo : 0, j1 = std::min(n - 1, i + up);
    std::vector<double> row;
    for (std::size_t j = j0; j <= j1; ++j) row.push_back(op.entry(i, j).value_or(0.0));
    for (std::size_t p = 0; p < row.size(); ++p)
      for (std::size_t q = p; q < row.size(); ++q) m[j0 + p][q - p] += row[p] * row[q];
  }
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t d = 0; d <= w; ++d) {
      if (i + d < n) s += std::fabs(m[i][d]);
      if (d > 0 && i >= d) s += std::fabs(m[i - d][d]);
    }
    bound = std::max(bound, s);
  }
  double lo_s = 0.0, hi_s = bound * (1.0 + 1e-12) + 1e-300;
  while (hi_s - lo_s > tol * hi_s) {
    const double mid = 0.5 * (lo_s + hi_s);
    (positive_definite_shift(m, w, mid) ? hi_s : lo_s) = mid;
  }
  return std::sqrt(hi_s);
}

NormEstimate estimate_norm(const BandedOperator& op, double tol, std::size_t max_n) {
  NormEstimate e;
  std::size_t n = 64;
  if (op.finite_size) max_n = std::min(max_n, *op.finite_size);
  n = std::min(n, max_n);
  for (;;) {
    e.truncations.push_back(n);
    e.estimates.push_back(truncation_norm(op, n));
    e.value = e.estimates.back();
    const std::size_t k = e.estimates.size();
    if (k >= 2 && std::fabs(e.estimates[k - 1] - e.estimates[k - 2]) <= tol * std::max(1.0, e.value)) return e;
    if (n >= max_n)
      throw NumericError("operator norm estimate did not stabilize to " + describe(tol) + " within " +
                         std::to_string(n) + " rows (last " + describe(e.value) + ")");
    n = std::min(2 * n, max_n);
  }
}

RescaledOperator rescale_to_unit_norm(const BandedHessenberg<Real>& H, std::optional<double> declared_norm,
                                      bool extend_constant) {
  RescaledOperator r;
  r.original = H;
  const BandedOperator op = BandedOperator::from_hessenberg(H, extend_constant);
  if (declared_norm) {
    if (!(*declared_norm > 0.0)) throw DomainError("declared norm must be positive");
    r.norm = *declared_norm;
    r.norm_declared = true;
  } else {
    r.estimate = estimate_norm(op);
    r.norm = r.estimate.value;
  }
  const int digits = H.c.front().digits();
  const Real norm(r.norm, digits);
  const Real n2 = norm * norm, n3 = n2 * norm;
  for (std::size_t i = 0; i < H.size(); ++i) {
    r.scaled.a.push_back(H.a[i] / n3);
    r.scaled.b.push_back(H.b[i] / n2);
    r.scaled.c.push_back(H.c[i] / norm);
    r.sigma.push_back(pow(norm, static_cast<long>(i)));
  }
  const std::size_t n = r.estimate.truncations.empty() ? std::min<std::size_t>(H.size(), 256)
                                                      : r.estimate.truncations.back();
  BandedOperator scaled_op = BandedOperator::from_hessenberg(r.scaled, extend_constant);
  r.scaled_norm = truncation_norm(scaled_op, std::min(n, scaled_op.finite_size.value_or(n)));
  return r;
}

#define MOCHAIN_INSTANTIATE(T)                                                                               \
  template class BandMatrix<T>;                                                                              \
  template StochasticPair<T> make_stochastic_pair(const BandedHessenberg<T>&, const std::vector<T>&,         \
                                                  const std::vector<UnitScalar<T>>&, const SymbolicUnit&,    \
                                                  std::size_t, const StochasticOptions&);                    \
  template DualityReport verify_duality(const StochasticPair<T>&);                                          \
  template TransposedLimitReport verify_transposed_limit(const StochasticPair<T>&, std::size_t);

MOCHAIN_INSTANTIATE(Rational)
MOCHAIN_INSTANTIATE(Real)
#undef MOCHAIN_INSTANTIATE
template class BandMatrix<UnitRatio>;

}  // namespace mochain
