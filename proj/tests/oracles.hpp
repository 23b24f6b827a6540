#pragma once

// Reference computations for the tests. Nothing here calls into the
// library's recurrences or root finders.

#include <functional>

#include "qzeros/precision.hpp"

namespace oracle {

using qzeros::Real;

inline Real rel_err(const Real& a, const Real& b) {
  const Real scale = boost::multiprecision::abs(b);
  return boost::multiprecision::abs(a - b) / (scale == 0 ? Real(1) : scale);
}

/// (a;q)_n as an explicit product.
inline Real qpoch(const Real& a, const Real& q, unsigned n) {
  Real p(1);
  for (unsigned k = 0; k < n; ++k) p *= 1 - a * boost::multiprecision::pow(q, k);
  return p;
}

/// sum_n (a;q)_n q^{alpha n^2} z^n / (q;q)_n, each term built from scratch.
inline Real ramanujan_sum(const Real& alpha, const Real& a, const Real& q, const Real& z, unsigned terms = 400) {
  Real s(0);
  for (unsigned n = 0; n < terms; ++n) {
    s += qpoch(a, q, n) * boost::multiprecision::pow(q, alpha * n * n) * boost::multiprecision::pow(z, n) /
         qpoch(q, q, n);
  }
  return s;
}

/// sum_k z^k / (k!)^2.
inline Real bessel_limit_sum(const Real& z) {
  const unsigned terms = 200;
  Real s(0), t(1);
  for (unsigned k = 0; k < terms; ++k) {
    s += t;
    t *= z / Real((k + 1) * (k + 1));
  }
  return s;
}

/// Bisection on a sign change of f over [lo, hi].
inline Real bisect(const std::function<Real(const Real&)>& f, Real lo, Real hi, unsigned iters = 200) {
  const bool neg_lo = f(lo) < 0;
  for (unsigned i = 0; i < iters; ++i) {
    const Real mid = (lo + hi) / 2;
    if ((f(mid) < 0) == neg_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

}  // namespace oracle
