#include "qzeros/qcore.hpp"

#include "qzeros/errors.hpp"

namespace qzeros {

namespace {

constexpr std::size_t kMaxInfiniteFactors = 10'000'000;

}  // namespace

Complex qpoch_finite(const Complex& a, const Real& q, std::size_t n) {
  Complex prod(Real(1, q.precision()), Real(0, q.precision()));
  Real qk(1, q.precision());
  for (std::size_t k = 0; k < n; ++k) {
    prod *= Complex(1 - a.re * qk, -a.im * qk);
    qk *= q;
  }
  return prod;
}

Real qpoch_finite(const Real& a, const Real& q, std::size_t n) {
  Real prod(1, q.precision());
  Real qk(1, q.precision());
  for (std::size_t k = 0; k < n; ++k) {
    prod *= 1 - a * qk;
    qk *= q;
  }
  return prod;
}

Complex qpoch_multi(std::span<const Complex> as, const Real& q, std::size_t n) {
  Complex prod(Real(1, q.precision()), Real(0, q.precision()));
  for (const auto& a : as) prod *= qpoch_finite(a, q, n);
  return prod;
}

InfiniteProduct qpoch_infinite(const Complex& a_in, const Real& q_in, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const Real q = lift(q_in);
  if (!(q > 0 && q < 1)) throw DomainError("infinite q-Pochhammer product requires 0 < q < 1");
  const Complex a = lift(a_in);
  const Real mag = abs(a);
  const Real one_minus_q = 1 - q;
  const Real half(0.5);

  InfiniteProduct out{Complex(1), Real(0), 0};
  if (mag == 0) return out;

  // tail = |a| q^k / (1 - q) bounds sum_{j >= k} |a| q^j
  Real qk(1);
  Real term = mag;
  while (true) {
    if (term / one_minus_q < ctx.eps_id && term < half) break;
    if (out.factors >= kMaxInfiniteFactors) {
      throw ConvergenceError("infinite q-Pochhammer product did not reach its tail bound");
    }
    out.value *= Complex(1 - a.re * qk, -a.im * qk);
    qk *= q;
    term = mag * qk;
    ++out.factors;
  }
  out.tail_bound = 2 * term / one_minus_q;
  return out;
}

Real rising_factorial(const Real& a, std::size_t n) {
  Real prod(1, a.precision());
  for (std::size_t k = 0; k < n; ++k) prod *= a + static_cast<long>(k);
  return prod;
}

}  // namespace qzeros
