#include <doctest.h>

#include "oracles.hpp"
#include "qzeros/errors.hpp"
#include "qzeros/qcore.hpp"

using namespace qzeros;

TEST_CASE("finite q-Pochhammer") {
  PrecisionScope scope(256);
  const Real q("0.7"), a("0.3");
  CHECK(qpoch_finite(a, q, 0) == 1);
  CHECK(qpoch_finite(Real(1), q, 3) == 0);
  CHECK(oracle::rel_err(qpoch_finite(a, q, 5), oracle::qpoch(a, q, 5)) < pow2(-240));
  // mpmath qp(0.3, 0.7, 5)
  CHECK(oracle::rel_err(qpoch_finite(a, q, 5), Real("0.392689198434883")) < Real("1e-14"));
}

TEST_CASE("finite q-Pochhammer with complex argument and negative base") {
  PrecisionScope scope(256);
  const Complex a(Real("0.25"), Real("-1.5"));
  const Real q("-0.6");
  Complex expect(1);
  Real qk(1);
  for (int k = 0; k < 7; ++k) {
    expect = expect * Complex(1 - a.re * qk, -a.im * qk);
    qk *= q;
  }
  const Complex got = qpoch_finite(a, q, 7);
  CHECK(abs(got - expect) < pow2(-240));
}

TEST_CASE("multi-argument product is the product of single symbols") {
  PrecisionScope scope(256);
  const std::vector<Complex> as{Complex(Real("0.1")), Complex(Real("0.4")), Complex(Real("-2"))};
  const Real q("0.45");
  const Complex got = qpoch_multi(as, q, 6);
  Complex expect(1);
  for (const auto& a : as) expect = expect * qpoch_finite(a, q, 6);
  CHECK(abs(got - expect) < pow2(-240));
  CHECK(abs(qpoch_multi({}, q, 6) - Complex(1)) == 0);
}

TEST_CASE("infinite q-Pochhammer matches a high-precision reference") {
  const auto ctx = PrecisionContext::with_bits(256);
  PrecisionScope scope(ctx);
  const Real q("0.5");
  const auto p = qpoch_infinite(Complex(q), q, ctx);
  // mpmath qp(0.5, 0.5) at 80 digits
  const Real ref("0.288788095086602421278899721929230780088911904840685784114741066184902240906847");
  CHECK(oracle::rel_err(p.value.re, ref) < ctx.eps_id);
  CHECK(p.tail_bound <= ctx.eps_id);
  CHECK(p.factors > 0);
}

TEST_CASE("infinite product with zero argument is exactly one") {
  const auto ctx = PrecisionContext::with_bits(128);
  const auto p = qpoch_infinite(Complex(0), Real("0.9"), ctx);
  CHECK(p.value.re == 1);
  CHECK(p.factors == 0);
}

TEST_CASE("infinite product rejects q outside (0, 1)") {
  const auto ctx = PrecisionContext::with_bits(128);
  CHECK_THROWS_AS(qpoch_infinite(Complex(Real("0.5")), Real("1"), ctx), DomainError);
  CHECK_THROWS_AS(qpoch_infinite(Complex(Real("0.5")), Real("-0.5"), ctx), DomainError);
}

TEST_CASE("rising factorial") {
  PrecisionScope scope(128);
  CHECK(rising_factorial(Real(1), 5) == 120);
  CHECK(rising_factorial(Real("0.5"), 0) == 1);
  CHECK(rising_factorial(Real(-3), 4) == 0);
  CHECK(rising_factorial(Real("0.5"), 3) == Real("1.875"));
}

TEST_CASE("precision context defaults") {
  const auto ctx = PrecisionContext::with_bits(256);
  CHECK(ctx.eps_id == pow2(-128));
  CHECK(ctx.eps_real == pow2(-64));
  CHECK_THROWS_AS(PrecisionContext::with_bits(32), DomainError);
  CHECK(ctx.tightened(16).eps_id == pow2(-144));
}

TEST_CASE("decimal parameters validate eagerly") {
  CHECK_THROWS_AS(Decimal("abc"), DomainError);
  CHECK_THROWS_AS(Decimal(""), DomainError);
  CHECK(Decimal("0.1").text() == "0.1");
  PrecisionScope scope(512);
  CHECK(boost::multiprecision::abs(Decimal("0.1").value() * 10 - 1) < pow2(-500));
}
