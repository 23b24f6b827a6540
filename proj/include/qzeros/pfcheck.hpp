#pragma once

// Total-positivity checks for coefficient sequences: Toeplitz minors, the
// root criterion for finite sequences, PF-preserving transforms and Turan
// ratios.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qzeros/precision.hpp"
#include "qzeros/series.hpp"

namespace qzeros {

struct MinorViolation {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  Real value;
};

/// Minors of order <= max_order of the window x window block (a_{j-i}).
/// Nonnegative minors are necessary for PF, not sufficient.
struct MinorReport {
  std::size_t window = 0;
  std::size_t max_order = 0;
  std::size_t minors_checked = 0;
  Real min_minor;
  std::optional<MinorViolation> violation;  // first minor below -eps_id
  bool pf_consistent = false;
  std::string fingerprint;
};

struct MinorOptions {
  /// Cap on C(window, max_order)^2.
  double budget = 5e6;
};

/// Enumerates minors by order, then row set, then column set (both
/// lexicographic). Throws DomainError for window > 14, max_order > 5 or
/// window > length, and CostGuardError past the budget.
MinorReport toeplitz_minors(const CoefficientSequence& seq, std::size_t window, std::size_t max_order,
                            const PrecisionContext& ctx, MinorOptions opts = {});

/// A finite nonnegative sequence is PF iff its generating polynomial has
/// only real nonpositive zeros. Throws DomainError on negative entries.
bool pf_finite_via_roots(const CoefficientSequence& seq, const PrecisionContext& ctx);

enum class ClosureKind {
  Hadamard,           // a_k b_k
  DivideFactorial,    // a_k / k!
  FactorialHadamard,  // k! a_k b_k
};

CoefficientSequence closure_transform(ClosureKind kind, const CoefficientSequence& a,
                                      const std::optional<CoefficientSequence>& b, const PrecisionContext& ctx);

std::string closure_name(ClosureKind kind);

struct RatioReport {
  std::vector<std::size_t> indices;  // n for each entry of ratios
  std::vector<Real> ratios;          // c_n^2 / (c_{n+1} c_{n-1})
  std::vector<std::size_t> skipped;  // n with c_{n+1} c_{n-1} = 0
  Real min_ratio;
  bool passes_4 = false;
  std::string fingerprint;
};

/// Ratios for 1 <= n < length - 1. Throws DomainError on negative entries.
RatioReport turan_ratios(const CoefficientSequence& seq, const PrecisionContext& ctx);

struct ConditionCheck {
  bool holds = false;
  Real lhs;  // prod (1 - a_j) prod (1 - b_k q)
  Real rhs;  // 4 q^(2 alpha)
};

/// Sufficient condition for the ras family to have only negative zeros.
/// Requires alpha > 0 and q, a_j, b_k in (0, 1).
ConditionCheck condition_310(const Decimal& alpha, const Decimal& q, const std::vector<Decimal>& as,
                             const std::vector<Decimal>& bs, const PrecisionContext& ctx);

/// FNV-1a over the full-precision decimal coefficients.
std::string sequence_fingerprint(const CoefficientSequence& seq);

}  // namespace qzeros
