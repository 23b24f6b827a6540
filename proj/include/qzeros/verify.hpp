#pragma once

// Verification suites: parameter sweeps that check the zero-reality
// theorems, the identity web, the q -> 1 limits and the order formula.
// Reports are deterministic for fixed (grid, seed, precision) and carry no
// timings.

#include <cstdint>
#include <string>
#include <vector>

#include "qzeros/precision.hpp"
#include "qzeros/series.hpp"

namespace qzeros {

struct Metric {
  std::string name;
  Real value;
};

struct Failure {
  std::string instance;
  std::string reason;
};

struct VerificationReport {
  std::string tag;
  std::size_t run = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;
  std::vector<Metric> metrics;  // worst-case values
  std::vector<Failure> failures;
  std::vector<std::string> notes;

  [[nodiscard]] bool ok() const { return passed == run && failures.empty(); }
  [[nodiscard]] const Real* metric(const std::string& name) const;

  void record(const std::string& instance, bool ok, const std::string& reason = {});
  void worst_max(const std::string& name, const Real& value);
  void worst_min(const std::string& name, const Real& value);
};

struct PolyGrid {
  std::vector<Decimal> qs{0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<Decimal> alphas{0, 0.5, 1, 2};
  unsigned n_min = 1;
  unsigned n_max = 8;
  std::size_t random_instances = 50;
  std::uint64_t seed = 20240601;
};

struct Func1Grid {
  std::vector<Decimal> as{0, 0.5, 2};
  std::vector<Decimal> qs{0.3, 0.5, 0.7};
  std::vector<Decimal> alphas{0.5, 1};
  std::size_t K = 5;
  bool precision_doubling = true;
};

struct Func2Grid {
  std::vector<Decimal> qs{0.3, 0.4, 0.5};
  std::vector<Decimal> alphas{1, 1.5};
  std::vector<std::pair<std::vector<Decimal>, std::vector<Decimal>>> parameter_sets{
      {{}, {}},          {{0.05}, {}},    {{0.3}, {}},           {{}, {0.2}},
      {{}, {0.6}},       {{0.05}, {0.6}}, {{0.05, 0.3}, {0.2}},  {{0.9}, {}},
  };
  std::size_t K = 5;
  std::size_t ratio_terms = 40;
};

struct IdentityGrid {
  std::vector<Decimal> qs{0.3, 0.5, 0.7};
  std::size_t samples = 20;
  /// Small bases for the truncated Bessel products, where eight zeros
  /// already carry the product to working precision on a usable disk.
  std::vector<Decimal> product_qs{0.001, 0.002, 0.005};
  std::size_t product_zeros = 8;
};

struct LimitGrid {
  /// q_j = 1 - 2^(-j).
  unsigned j_min = 3;
  unsigned j_max = 10;
  std::size_t coefficient_count = 8;
  /// Required gap(q_{j-1}) / gap(q_j) over the final three steps. First-order
  /// convergence in 1 - q approaches 2 from either side.
  double min_gap_ratio = 1.9;
};

struct OrderGrid {
  std::vector<std::pair<unsigned, unsigned>> m_l{{0, 1}, {1, 1}, {0, 2}, {2, 1}};
  std::size_t K = 200;
  double tolerance = 0.05;
};

struct GridSpec {
  PolyGrid poly;
  Func1Grid func1;
  Func2Grid func2;
  IdentityGrid identities;
  LimitGrid limits;
  OrderGrid order;
};

/// Terminating A-polynomials have all positive zeros.
VerificationReport verify_poly_positive(const PolyGrid& grid, const PrecisionContext& ctx);
/// Random product polynomials and their q -> 1 limits have all negative zeros.
VerificationReport verify_poly_negative(const PolyGrid& grid, const PrecisionContext& ctx);
VerificationReport verify_thm_poly(const PolyGrid& grid, const PrecisionContext& ctx);

/// First K zeros of the entire families are real and negative, and stable
/// under N -> N + 16 and precision doubling.
VerificationReport verify_thm_func1(const Func1Grid& grid, const PrecisionContext& ctx);

/// On instances satisfying condition_310: Turan ratios >= 4 and first K
/// zeros negative. Other instances are skipped.
VerificationReport verify_thm_func2(const Func2Grid& grid, const PrecisionContext& ctx);

VerificationReport verify_identities(const IdentityGrid& grid, const PrecisionContext& ctx);

VerificationReport verify_limits(const LimitGrid& grid, const PrecisionContext& ctx);

struct OrderEstimate {
  Real value;  // log Gamma(K + 1) / (-log a_K)
  Real raw;    // K log K / (-log a_K)
  Real target;  // 1 / (m + 2 l)
};

/// Order of the limit entire family from its K-th coefficient. Requires K >= 50.
OrderEstimate estimate_order(const LimitEntire& spec, std::size_t K, const PrecisionContext& ctx);

VerificationReport verify_order(const OrderGrid& grid, const PrecisionContext& ctx);

/// Suite names accepted by run_suite: poly, func1, func2, identities,
/// limits, order.
const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown name.
VerificationReport run_suite(const std::string& name, const GridSpec& grid, const PrecisionContext& ctx);

/// Parameter echo used in failure records and tables.
std::string describe(const SeriesSpec& spec);

}  // namespace qzeros
