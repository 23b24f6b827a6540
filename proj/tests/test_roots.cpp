#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>

#include "oracles.hpp"
#include "qzeros/errors.hpp"
#include "qzeros/roots.hpp"

using namespace qzeros;
namespace mp = boost::multiprecision;

namespace {

CoefficientSequence poly(std::initializer_list<const char*> cs, unsigned bits = 256) {
  PrecisionScope scope(bits);
  std::vector<Real> v;
  for (const char* c : cs) v.emplace_back(c);
  return CoefficientSequence::from_values(std::move(v), bits);
}

RamanujanA terminating(unsigned n, Decimal q, Decimal alpha) {
  RamanujanA s;
  s.alpha = alpha;
  s.q = q;
  s.terminating_n = n;
  return s;
}

}  // namespace

TEST_CASE("degree-one instance has the zero 1") {
  const auto ctx = PrecisionContext::with_bits(256);
  PrecisionScope scope(ctx);
  const auto seq = coefficients(terminating(1, 0.5, 1), 1, ctx);
  const auto zs = find_poly_roots(seq, ctx);
  REQUIRE(zs.zeros.size() == 1);
  CHECK(oracle::rel_err(zs.zeros[0].value.re, Real(1)) < pow2(-240));
}

TEST_CASE("quadratic instance against the quadratic formula") {
  const auto ctx = PrecisionContext::with_bits(256);
  PrecisionScope scope(ctx);
  const auto seq = coefficients(terminating(2, 0.5, 1), 2, ctx);
  const Real& c = seq.coeffs[0];
  const Real& b = seq.coeffs[1];
  const Real& a = seq.coeffs[2];
  const Real disc = mp::sqrt(b * b - 4 * a * c);
  const Real r1 = (-b - disc) / (2 * a), r2 = (-b + disc) / (2 * a);
  const Real lo = rmin(r1, r2), hi = rmax(r1, r2);
  const auto zs = find_poly_roots(seq, ctx);
  const auto rep = certify_real_roots(seq, zs, ctx);
  REQUIRE(zs.zeros.size() == 2);
  CHECK(oracle::rel_err(zs.zeros[0].value.re, lo) < pow2(-200));
  CHECK(oracle::rel_err(zs.zeros[1].value.re, hi) < pow2(-200));
  CHECK(oracle::rel_err(lo, Real("0.354248688935409")) < Real("1e-14"));
  CHECK(oracle::rel_err(hi, Real("5.645751311064590")) < Real("1e-14"));
  CHECK(rep.all_real);
  CHECK(rep.all_positive);
  CHECK_FALSE(rep.all_negative);
  CHECK(rep.sign_change_count == 2);
}

TEST_CASE("complex pair is not certified real") {
  const auto ctx = PrecisionContext::with_bits(256);
  const auto seq = poly({"1", "0", "1"});
  const auto zs = find_poly_roots(seq, ctx);
  REQUIRE(zs.zeros.size() == 2);
  CHECK(mp::abs(mp::abs(zs.zeros[0].value.im) - 1) < pow2(-200));
  const auto rep = certify_real_roots(seq, zs, ctx);
  CHECK_FALSE(rep.all_real);
}

TEST_CASE("multiple zero is certified as a cluster") {
  const auto ctx = PrecisionContext::with_bits(256);
  const auto seq = poly({"1", "4", "6", "4", "1"});
  const auto zs = find_poly_roots(seq, ctx);
  const auto rep = certify_real_roots(seq, zs, ctx);
  CHECK(rep.all_real);
  CHECK(rep.all_negative);
  CHECK(rep.clustered_count == 4);
  CHECK(rep.certified_count == 4);
  for (const auto& z : zs.zeros) CHECK(mp::abs(z.value.re + 1) < Real("1e-15"));
}

TEST_CASE("zero constant term gives an exact zero root") {
  const auto ctx = PrecisionContext::with_bits(256);
  const auto zs = find_poly_roots(poly({"0", "1", "1"}), ctx);
  REQUIRE(zs.zeros.size() == 2);
  CHECK(mp::abs(zs.zeros[0].value.re + 1) < pow2(-240));
  CHECK(zs.zeros[1].value.re == 0);
  CHECK(zs.zeros[1].value.im == 0);
}

TEST_CASE("zeros are ordered by real part") {
  const auto ctx = PrecisionContext::with_bits(256);
  // (x - 3)(x + 2)(x - 0.5) = x^3 - 1.5 x^2 - 5.5 x + 3
  const auto zs = find_poly_roots(poly({"3", "-5.5", "-1.5", "1"}), ctx);
  REQUIRE(zs.zeros.size() == 3);
  CHECK(zs.zeros[0].value.re < zs.zeros[1].value.re);
  CHECK(zs.zeros[1].value.re < zs.zeros[2].value.re);
  CHECK(mp::abs(zs.zeros[2].value.re - 3) < pow2(-240));
}

TEST_CASE("degree zero is rejected") {
  const auto ctx = PrecisionContext::with_bits(128);
  CHECK_THROWS_AS(find_poly_roots(poly({"2"}, 128), ctx), DomainError);
}

TEST_CASE("entire zeros of the Ramanujan function") {
  const auto ctx = PrecisionContext::with_bits(256);
  PrecisionScope scope(ctx);
  RamanujanA s;
  const auto zs = locate_entire_zeros(s, 3, ctx);
  REQUIRE(zs.zeros.size() == 3);
  // mpmath findroot on the series at 60 digits
  const char* ref[] = {"-1.24821916391190887626950104520512254092891106315256728869009",
                       "-6.51204094741914925505006954382653592318860233644724307020608",
                       "-29.0298303778306666126046589610727387933872552135394732021499"};
  for (int i = 0; i < 3; ++i) CHECK(oracle::rel_err(zs.zeros[i].value.re, Real(ref[i])) < Real("1e-50"));
  REQUIRE(zs.realness.has_value());
  CHECK(zs.realness->all_negative);
  REQUIRE(zs.certificate.has_value());
  CHECK(zs.certificate->stability_delta <= ctx.eps_real);
  CHECK(zs.ordering == ZeroOrdering::ByModulus);
}

TEST_CASE("limit entire zeros match Bessel zeros") {
  const auto ctx = PrecisionContext::with_bits(256);
  PrecisionScope scope(ctx);
  const auto zs = locate_entire_zeros(LimitEntire{0, {1}}, 5, ctx);
  REQUIRE(zs.zeros.size() == 5);
  for (int i = 0; i < 5; ++i) {
    const double j = boost::math::cyl_bessel_j_zero(0.0, i + 1);
    const Real expect = -Real(j / 2) * Real(j / 2);
    CHECK(oracle::rel_err(zs.zeros[i].value.re, expect) < Real("1e-12"));
    const Real x = zs.zeros[i].value.re;
    const Real b = oracle::bisect(oracle::bessel_limit_sum, x * Real("1.001"), x * Real("0.999"));
    CHECK(oracle::rel_err(x, b) < Real("1e-50"));
  }
}

TEST_CASE("q-Bessel zeros in u are positive and increasing") {
  const auto ctx = PrecisionContext::with_bits(256);
  const auto zs = locate_entire_zeros(QBessel{2, 0.5, 0.5}, 5, ctx);
  REQUIRE(zs.realness.has_value());
  CHECK(zs.realness->all_positive);
  for (std::size_t i = 1; i < zs.zeros.size(); ++i) CHECK(zs.zeros[i - 1].value.re < zs.zeros[i].value.re);
}

TEST_CASE("Hadamard product of a polynomial's zeros reproduces it") {
  const auto ctx = PrecisionContext::with_bits(256);
  PrecisionScope scope(ctx);
  const auto seq = coefficients(terminating(5, 0.3, 0.5), 5, ctx);
  const auto zs = find_poly_roots(seq, ctx);
  const Complex z(Real("0.7"), Real("0.2"));
  const Complex direct = polyval(seq.coeffs, z);
  CHECK(abs(hadamard_product(zs, z, ctx) - direct) < pow2(-180));
}

TEST_CASE("high multiplicity zeros within the cluster resolution") {
  const auto ctx = PrecisionContext::with_bits(256);
  for (unsigned n : {5u, 6u, 7u}) {
    const auto seq = coefficients(LimitPoly{{n}, {}}, n, ctx);
    const auto rep = certify_real_roots(seq, find_poly_roots(seq, ctx), ctx);
    CHECK(rep.all_negative);
    CHECK(rep.clustered_count == n);
    CHECK(rep.max_imag_ratio <= ctx.eps_real);
  }
}
