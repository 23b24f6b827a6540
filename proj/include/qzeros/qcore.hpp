#pragma once

// q-Pochhammer symbols and rising factorials.

#include <cstddef>
#include <span>

#include "qzeros/precision.hpp"

namespace qzeros {

/// (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k). Any real q; (a;q)_0 = 1.
Complex qpoch_finite(const Complex& a, const Real& q, std::size_t n);
Real qpoch_finite(const Real& a, const Real& q, std::size_t n);

/// (a_1,...,a_m;q)_n; the empty list gives 1.
Complex qpoch_multi(std::span<const Complex> as, const Real& q, std::size_t n);

struct InfiniteProduct {
  Complex value;
  /// Bound on |log(true / value)|.
  Real tail_bound;
  /// Number of factors multiplied.
  std::size_t factors = 0;
};

/// (a;q)_inf for 0 < q < 1 by direct multiplication. Stops after K factors
/// once |a| q^K / (1 - q) < eps_id and |a| q^K < 1/2; the reported bound is
/// 2 |a| q^K / (1 - q). Throws DomainError outside 0 < q < 1.
InfiniteProduct qpoch_infinite(const Complex& a, const Real& q, const PrecisionContext& ctx);

/// (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
Real rising_factorial(const Real& a, std::size_t n);

}  // namespace qzeros
