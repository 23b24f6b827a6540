#pragma once

// Coefficient generation and certified evaluation for the q-series families.
//
// Every family has unit constant term and is generated by a term-ratio
// recurrence c_{k+1} = c_k * ratio(k). Each family also supplies a bound
// B(k) >= sup_{j >= k} |ratio(j)|, nonincreasing in k, which turns a partial
// sum into a certified truncation: on |z| <= R with rho = B(N) R < 1,
//   sum_{k > N} |c_k| R^k <= |c_N| R^N rho / (1 - rho).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qzeros/precision.hpp"

namespace qzeros {

/// sum_n (a;q)_n q^{alpha n^2} z^n / (q;q)_n. When `terminating_n` is set the
/// numerator parameter is a = q^{-n} exactly and the series is a degree-n
/// polynomial; `a` is then ignored.
struct RamanujanA {
  Decimal alpha = 1;
  Decimal a = 0;
  Decimal q = 0.5;
  std::optional<unsigned> terminating_n;
};

/// Factor (q^{-n}; q)_k / (q; q)_k.
struct TerminatingFactor {
  unsigned n = 1;
  Decimal q = 0.5;
};

/// Factor (-a; q)_k / (q; q)_k.
struct ShiftedFactor {
  Decimal a = 0;
  Decimal q = 0.5;
};

/// Factor 1 / (q, q^beta; q)_k.
struct DenominatorFactor {
  Decimal beta = 1;
  Decimal q = 0.5;
};

/// Product family
///   sum_k prod(terminating) prod(shifted) q^{alpha k^2} (s z)^k / prod(denominators)
/// with s = (-1)^{#terminating}. Terminating factors make it a polynomial of
/// degree min n_j; without them it is entire for alpha > 0.
struct GeneralizedQ {
  Decimal alpha = 1;
  Decimal q = 0.5;
  std::vector<TerminatingFactor> terminating;
  std::vector<ShiftedFactor> shifted;
  std::vector<DenominatorFactor> denominators;
};

/// q -> 1 polynomial limit: sum_k prod(-n_j)_k / prod(beta_r)_k ((-1)^m x)^k / (k!)^{m+l}.
struct LimitPoly {
  std::vector<unsigned> n;
  std::vector<Decimal> beta;
};

/// q -> 1 entire limit: sum_k z^k / ((k!)^{m+l} prod(beta_r)_k), l = beta.size().
struct LimitEntire {
  unsigned m = 0;
  std::vector<Decimal> beta;
};

/// sum_n (a_1..a_r;q)_n / (b_1..b_s;q)_n q^{alpha n^2} z^n.
struct RAS {
  Decimal alpha = 1;
  Decimal q = 0.5;
  std::vector<Decimal> a;
  std::vector<Decimal> b;
};

/// Basic hypergeometric series
///   sum_n (a;q)_n / (q, b;q)_n (-q^{(n-1)/2})^{n(s+1-r)} z^n.
struct RPhiS {
  Decimal q = 0.5;
  std::vector<Decimal> a;
  std::vector<Decimal> b;
};

/// Normalized q-Bessel series j_nu^{(kind)} as a power series in u = z^2.
struct QBessel {
  int kind = 2;
  Decimal nu = 0;
  Decimal q = 0.5;
};

using SeriesSpec = std::variant<RamanujanA, GeneralizedQ, LimitPoly, LimitEntire, RAS, RPhiS, QBessel>;

/// Stable family tag: ramanujan-a, generalized-q, limit-poly, limit-entire,
/// ras, rphis, qbessel1, qbessel2, qbessel3.
std::string family_name(const SeriesSpec& spec);

/// Throws DomainError when parameters violate the family's domain.
void validate(const SeriesSpec& spec);

/// Degree when the family is a polynomial by construction.
std::optional<std::size_t> terminating_degree(const SeriesSpec& spec);

struct CoefficientSequence {
  std::vector<Real> coeffs;
  bool terminating = false;
  std::optional<std::size_t> degree;
  std::optional<SeriesSpec> source;
  unsigned precision_bits = 0;

  /// Wraps raw values as a finite sequence (degree = last nonzero index).
  static CoefficientSequence from_values(std::vector<Real> values, unsigned precision_bits = 0);

  [[nodiscard]] std::size_t size() const { return coeffs.size(); }
};

struct TruncationCertificate {
  std::size_t N = 0;
  Real R;
  Real tail;
};

struct Evaluation {
  Complex value;
  TruncationCertificate cert;
};

/// c_0..c_N by the multiplicative recurrence. Coefficients past a
/// terminating degree are exact zeros.
CoefficientSequence coefficients(const SeriesSpec& spec, std::size_t N, const PrecisionContext& ctx);

/// Certified value at z. N grows until the tail is at most
/// eps_id * max(1, |partial sum|); the returned tail also covers the rounding
/// of the final Horner sum. Throws ConvergenceError past n_max.
Evaluation evaluate(const SeriesSpec& spec, const Complex& z, const PrecisionContext& ctx,
                    std::size_t n_max = 10'000);

/// Smallest N (multiple of 8, or the degree for polynomials) whose certified
/// tail on |z| <= R is at most eps_id.
TruncationCertificate truncation_degree(const SeriesSpec& spec, const Real& R, const PrecisionContext& ctx,
                                        std::size_t n_max = 10'000);

/// j_nu^{(kind)}(z; q), the even entire function given by the normalized
/// q-Bessel series.
Complex qbessel_normalized(int kind, const Decimal& nu, const Decimal& q, const Complex& z,
                           const PrecisionContext& ctx);

/// Coefficients of the q-scaled series c_k (1-q)^{s k}: s = 2l when the spec
/// has terminating factors, s = m + 2l otherwise (m shifted factors with
/// a = 0). All bases must equal spec.q.
CoefficientSequence scaled_limit_coefficients(const GeneralizedQ& spec, std::size_t N, const PrecisionContext& ctx);

/// The q -> 1 target of scaled_limit_coefficients.
SeriesSpec limit_target(const GeneralizedQ& spec);

/// Horner evaluation of sum c_k x^k.
Complex polyval(std::span<const Real> coeffs, const Complex& z);
Real polyval(std::span<const Real> coeffs, const Real& x);

}  // namespace qzeros
