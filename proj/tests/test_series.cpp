#include <doctest.h>

#include "oracles.hpp"
#include "qzeros/errors.hpp"
#include "qzeros/series.hpp"

using namespace qzeros;
namespace mp = boost::multiprecision;

namespace {

RamanujanA ramanujan(Decimal alpha, Decimal a, Decimal q) {
  RamanujanA s;
  s.alpha = alpha;
  s.a = a;
  s.q = q;
  return s;
}

}  // namespace

TEST_CASE("family names") {
  CHECK(family_name(RamanujanA{}) == "ramanujan-a");
  CHECK(family_name(GeneralizedQ{}) == "generalized-q");
  CHECK(family_name(LimitPoly{{2}, {}}) == "limit-poly");
  CHECK(family_name(LimitEntire{}) == "limit-entire");
  CHECK(family_name(RAS{}) == "ras");
  CHECK(family_name(RPhiS{}) == "rphis");
  CHECK(family_name(QBessel{1, 0, 0.5}) == "qbessel1");
  CHECK(family_name(QBessel{3, 0, 0.5}) == "qbessel3");
}

TEST_CASE("coefficients agree with the closed form") {
  const auto ctx = PrecisionContext::with_bits(256);
  PrecisionScope scope(ctx);
  const auto seq = coefficients(ramanujan(1, 0, 0.5), 12, ctx);
  REQUIRE(seq.size() == 13);
  CHECK_FALSE(seq.terminating);
  const Real q("0.5");
  for (unsigned k = 0; k <= 12; ++k) {
    const Real expect = mp::pow(q, k * k) / oracle::qpoch(q, q, k);
    CHECK(oracle::rel_err(seq.coeffs[k], expect) < pow2(-240));
  }
}

TEST_CASE("shifted numerator parameter") {
  const auto ctx = PrecisionContext::with_bits(256);
  PrecisionScope scope(ctx);
  const auto seq = coefficients(ramanujan(0.5, -0.5, 0.3), 10, ctx);
  const Real q("0.3"), a("-0.5");
  for (unsigned k = 0; k <= 10; ++k) {
    const Real expect = oracle::qpoch(a, q, k) * mp::pow(q, Real("0.5") * k * k) / oracle::qpoch(q, q, k);
    CHECK(oracle::rel_err(seq.coeffs[k], expect) < pow2(-240));
  }
}

TEST_CASE("terminating instance is a polynomial") {
  const auto ctx = PrecisionContext::with_bits(256);
  RamanujanA s = ramanujan(1, 0, 0.5);
  s.terminating_n = 3;
  REQUIRE(terminating_degree(s).has_value());
  CHECK(*terminating_degree(s) == 3);
  const auto seq = coefficients(s, 6, ctx);
  CHECK(seq.terminating);
  CHECK(seq.coeffs[4] == 0);
  CHECK(seq.coeffs[6] == 0);
  CHECK(seq.coeffs[3] != 0);
}

TEST_CASE("limit family coefficients") {
  const auto ctx = PrecisionContext::with_bits(256);
  PrecisionScope scope(ctx);
  const auto seq = coefficients(LimitEntire{0, {1}}, 10, ctx);
  Real fact(1);
  for (unsigned k = 0; k <= 10; ++k) {
    if (k > 0) fact *= k;
    CHECK(oracle::rel_err(seq.coeffs[k], 1 / (fact * fact)) < pow2(-240));
  }
  // (-4)_k (-x)^k / k! gives the binomial row of (1 + x)^4.
  const auto poly = coefficients(LimitPoly{{4}, {}}, 4, ctx);
  const int binom[] = {1, 4, 6, 4, 1};
  for (unsigned k = 0; k <= 4; ++k) CHECK(oracle::rel_err(poly.coeffs[k], Real(binom[k])) < pow2(-240));
}

TEST_CASE("evaluation matches a direct sum and a reference value") {
  const auto ctx = PrecisionContext::with_bits(256);
  PrecisionScope scope(ctx);
  const auto spec = ramanujan(1, 0, 0.5);
  const auto ev = evaluate(spec, Complex(Real(-1)), ctx);
  // mpmath at 60 digits
  const Real ref("0.160763788932088725715809675889951990861737603295040391573672");
  CHECK(oracle::rel_err(ev.value.re, ref) < ctx.eps_id);
  CHECK(mp::abs(ev.value.im) == 0);
  CHECK(ev.cert.tail <= ctx.eps_id * rmax(Real(1), mp::abs(ev.value.re)));
  const auto ev2 = evaluate(spec, Complex(Real("2.5")), ctx);
  CHECK(oracle::rel_err(ev2.value.re, oracle::ramanujan_sum(Real(1), Real(0), Real("0.5"), Real("2.5"))) <
        ctx.eps_id);
}

TEST_CASE("evaluation at the origin is one") {
  const auto ctx = PrecisionContext::with_bits(128);
  CHECK(evaluate(ramanujan(1, 0, 0.5), Complex(0), ctx).value.re == 1);
  CHECK(evaluate(QBessel{2, 0, 0.5}, Complex(0), ctx).value.re == 1);
  CHECK(evaluate(LimitEntire{1, {2}}, Complex(0), ctx).value.re == 1);
}

TEST_CASE("truncation degree for a fixed disk") {
  const auto ctx = PrecisionContext::with_bits(256);
  PrecisionScope scope(ctx);
  const auto cert = truncation_degree(ramanujan(1, 0, 0.5), Real(10), ctx);
  CHECK(cert.N == 16);
  CHECK(cert.tail <= ctx.eps_id);
  // The certificate is honest: the omitted tail on |z| = R is below it.
  const auto seq = coefficients(ramanujan(1, 0, 0.5), 80, ctx);
  Real omitted(0);
  for (std::size_t k = cert.N + 1; k <= 80; ++k) omitted += seq.coeffs[k] * mp::pow(Real(10), k);
  CHECK(omitted <= cert.tail);
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(validate(ramanujan(1, 0, 1.5)), DomainError);
  CHECK_THROWS_AS(validate(ramanujan(1, 0, 0)), DomainError);
  CHECK_THROWS_AS(validate(ramanujan(-1, 0, 0.5)), DomainError);
  CHECK_THROWS_AS(validate(LimitPoly{{}, {}}), DomainError);
  CHECK_NOTHROW(validate(QBessel{2, 0.5, 0.6}));
}

TEST_CASE("q-scaled coefficients approach the limit family") {
  const auto ctx = PrecisionContext::with_bits(256);
  PrecisionScope scope(ctx);
  GeneralizedQ g;
  g.alpha = 1;
  g.q = "0.999";
  g.denominators = {{1, "0.999"}};
  const auto target = limit_target(g);
  REQUIRE(std::holds_alternative<LimitEntire>(target));
  CHECK(std::get<LimitEntire>(target).m == 0);
  const auto sc = scaled_limit_coefficients(g, 6, ctx);
  const auto tc = coefficients(target, 6, ctx);
  for (std::size_t k = 0; k <= 6; ++k) CHECK(mp::abs(sc.coeffs[k] - tc.coeffs[k]) < Real("0.05"));
}

TEST_CASE("from_values records the degree") {
  const auto seq = CoefficientSequence::from_values({Real(1), Real(2), Real(0), Real(0)});
  REQUIRE(seq.degree.has_value());
  CHECK(*seq.degree == 1);
  CHECK(seq.terminating);
}
