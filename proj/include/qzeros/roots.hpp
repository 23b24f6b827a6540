#pragma once

// Zeros of polynomials and leading zeros of the entire families.

#include <cstddef>
#include <optional>
#include <vector>

#include "qzeros/precision.hpp"
#include "qzeros/series.hpp"

namespace qzeros {

enum class ZeroOrdering {
  ByRealPart,  // ascending real part, ties by imaginary part
  ByModulus,   // ascending modulus (first K zeros of an entire function)
};

struct Zero {
  Complex value;
  Real residual;   // |p(z)|
  Real condition;  // sum |c_j| |z|^j / (|z| |p'(z)|)
  bool real = false;
};

struct RealnessReport {
  bool all_real = false;
  bool all_negative = false;
  bool all_positive = false;
  Real max_imag_ratio;  // max |Im z| / (|z| + 1) over simple zeros and cluster centroids
  /// Observed sign changes of the function across the bracket points.
  std::size_t sign_change_count = 0;
  /// Zeros accounted for by the bracket pattern (clusters count with multiplicity).
  std::size_t certified_count = 0;
  /// Zeros in clusters of two or more (relative spread below sqrt(eps_real)).
  /// A cluster of size m is represented by its centroid refined with Newton
  /// on p^(m-1), and counts as one real zero of multiplicity m when that point
  /// passes the imaginary-part test. A complex pair closer than the cluster
  /// resolution therefore reads as a real double zero, and multiplicities
  /// whose spread u^(1/m) exceeds the resolution are not recognized.
  std::size_t clustered_count = 0;
};

/// Truncation and guard data behind an entire-function zero set.
struct EntireCertificate {
  std::size_t N = 0;
  Real R;
  Real tail;
  Real guard_min;  // min sampled |p_N| on |z| = R
  std::size_t guard_samples = 0;
  Real separation_min;  // min |p_N| at midpoints of consecutive zeros
  Real stability_delta;  // max relative change of the K zeros for N -> N + delta_n
  std::size_t delta_n = 0;
  std::size_t roots_in_disk = 0;
};

struct ZeroSet {
  std::vector<Zero> zeros;
  ZeroOrdering ordering = ZeroOrdering::ByRealPart;
  std::optional<RealnessReport> realness;
  std::optional<EntireCertificate> certificate;
  std::optional<SeriesSpec> spec;
  unsigned precision_bits = 0;

  [[nodiscard]] std::vector<Complex> values() const;
};

struct RootOptions {
  std::size_t max_sweeps = 200;
};

/// All zeros of sum c_k x^k by Aberth-Ehrlich iteration. Starting points sit
/// on circles whose radii come from the upper convex hull of log|c_k|. A root
/// is converged once its correction is below 2^(-bits/2) |z| or its residual
/// is at the rounding level. Throws DomainError for degree 0 and
/// ConvergenceError (with the best iterates) past max_sweeps.
ZeroSet find_poly_roots(const CoefficientSequence& coeffs, const PrecisionContext& ctx, RootOptions opts = {});

/// Dual realness check: imaginary parts within eps_real, and the sign
/// pattern of p at brackets between the computed real parts accounts for
/// every zero (a cluster of multiplicity m changes sign iff m is odd).
/// Throws InconsistencyError when the two disagree.
RealnessReport certify_real_roots(const CoefficientSequence& coeffs, const ZeroSet& zeros,
                                  const PrecisionContext& ctx);

struct EntireOptions {
  std::size_t delta_n = 16;
  std::size_t guard_samples = 256;
  int guard_margin = 4;
  std::size_t max_attempts = 40;
  std::size_t n_max = 10'000;
};

/// The K smallest-modulus zeros of a non-terminating series, ordered by
/// modulus. Uses a certified truncation p_N on |z| <= R, a sampled Rouche
/// guard on |z| = R, a midpoint separation guard, and a stability check
/// against p_{N + delta_n}. The guards are sampled, not rigorous.
/// Throws GuardError when the guards cannot be met.
ZeroSet locate_entire_zeros(const SeriesSpec& spec, std::size_t K, const PrecisionContext& ctx,
                            EntireOptions opts = {});

/// f(0) prod_k (1 - z / zeta_k) over the given zeros; f(0) = 1 for every family.
Complex hadamard_product(const ZeroSet& zeros, const Complex& z, const PrecisionContext& ctx);

/// Locates K zeros of spec and returns hadamard_product at z.
Complex hadamard_reconstruct(const SeriesSpec& spec, std::size_t K, const Complex& z, const PrecisionContext& ctx);

}  // namespace qzeros
