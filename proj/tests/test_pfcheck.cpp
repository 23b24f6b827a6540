#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qzeros/errors.hpp"
#include "qzeros/pfcheck.hpp"

using namespace qzeros;
namespace mp = boost::multiprecision;

namespace {

CoefficientSequence seq_of(std::initializer_list<const char*> cs, unsigned bits = 256) {
  PrecisionScope scope(bits);
  std::vector<Real> v;
  for (const char* c : cs) v.emplace_back(c);
  return CoefficientSequence::from_values(std::move(v), bits);
}

// Determinant by Gaussian elimination with partial pivoting.
Real det(std::vector<std::vector<Real>> m) {
  const std::size_t n = m.size();
  Real d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (mp::abs(m[r][c]) > mp::abs(m[p][c])) p = r;
    if (m[p][c] == 0) return Real(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Real f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

// Smallest minor of order <= max_order of the window x window Toeplitz block.
Real brute_min_minor(const std::vector<Real>& a, std::size_t window, std::size_t max_order) {
  auto entry = [&](std::size_t i, std::size_t j) -> Real {
    if (j < i || j - i >= a.size()) return Real(0);
    return a[j - i];
  };
  Real best = std::numeric_limits<Real>::infinity();
  for (std::size_t m = 1; m <= max_order; ++m) {
    std::vector<bool> rsel(window, false), csel(window, false);
    std::fill(rsel.begin(), rsel.begin() + m, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + m, true);
      do {
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 0; i < window; ++i) {
          if (rsel[i]) rows.push_back(i);
          if (csel[i]) cols.push_back(i);
        }
        std::vector<std::vector<Real>> sub(m, std::vector<Real>(m));
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j) sub[i][j] = entry(rows[i], cols[j]);
        best = rmin(best, det(sub));
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
  }
  return best;
}

}  // namespace

TEST_CASE("finite PF sequences via roots") {
  const auto ctx = PrecisionContext::with_bits(256);
  CHECK(pf_finite_via_roots(seq_of({"1", "2", "1"}), ctx));
  CHECK(pf_finite_via_roots(seq_of({"1", "3", "0.5"}), ctx));
  CHECK_FALSE(pf_finite_via_roots(seq_of({"1", "0", "1"}), ctx));
  CHECK_FALSE(pf_finite_via_roots(seq_of({"1", "1", "1"}), ctx));
  CHECK(pf_finite_via_roots(seq_of({"0", "0", "5", "0"}), ctx));
  CHECK_THROWS_AS(pf_finite_via_roots(seq_of({"1", "-1"}), ctx), DomainError);
  CHECK_THROWS_AS(pf_finite_via_roots(seq_of({"0", "0"}), ctx), DomainError);
}

TEST_CASE("minor enumeration finds the first violation") {
  const auto ctx = PrecisionContext::with_bits(256);
  const auto rep = toeplitz_minors(seq_of({"1", "0", "1"}), 3, 2, ctx);
  CHECK_FALSE(rep.pf_consistent);
  REQUIRE(rep.violation.has_value());
  CHECK(rep.violation->rows == std::vector<std::size_t>{0, 1});
  CHECK(rep.violation->cols == std::vector<std::size_t>{1, 2});
  CHECK(rep.violation->value == -1);
}

TEST_CASE("minor enumeration agrees with a brute-force determinant") {
  const auto ctx = PrecisionContext::with_bits(256);
  PrecisionScope scope(ctx);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> digit(0, 9);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<Real> a;
    for (int k = 0; k < 6; ++k) a.emplace_back(digit(rng));
    if (a[0] == 0) a[0] = 1;
    const auto seq = CoefficientSequence::from_values(a, ctx.bits);
    const auto rep = toeplitz_minors(seq, 6, 3, ctx);
    CHECK(mp::abs(rep.min_minor - brute_min_minor(a, 6, 3)) < pow2(-200));
  }
}

TEST_CASE("binomial rows have nonnegative minors") {
  const auto ctx = PrecisionContext::with_bits(256);
  const auto rep = toeplitz_minors(seq_of({"1", "4", "6", "4", "1"}), 5, 4, ctx);
  CHECK(rep.pf_consistent);
  CHECK_FALSE(rep.violation.has_value());
  CHECK(rep.min_minor >= 0);
}

TEST_CASE("minor argument guards") {
  const auto ctx = PrecisionContext::with_bits(128);
  const auto s = seq_of({"1", "2", "1"}, 128);
  CHECK_THROWS_AS(toeplitz_minors(s, 0, 1, ctx), DomainError);
  CHECK_THROWS_AS(toeplitz_minors(s, 4, 2, ctx), DomainError);
  CHECK_THROWS_AS(toeplitz_minors(s, 3, 6, ctx), DomainError);
  std::vector<Real> many(14, Real(1));
  CHECK_THROWS_AS(toeplitz_minors(CoefficientSequence::from_values(many, 128), 14, 5, ctx, MinorOptions{1e3}),
                  CostGuardError);
}

TEST_CASE("closure transforms") {
  const auto ctx = PrecisionContext::with_bits(256);
  const auto a = seq_of({"1", "2", "1"});
  const auto b = seq_of({"1", "3", "3"});
  const auto h = closure_transform(ClosureKind::Hadamard, a, b, ctx);
  CHECK(h.coeffs == std::vector<Real>{Real(1), Real(6), Real(3)});
  const auto d = closure_transform(ClosureKind::DivideFactorial, a, std::nullopt, ctx);
  CHECK(d.coeffs == std::vector<Real>{Real(1), Real(2), Real("0.5")});
  const auto f = closure_transform(ClosureKind::FactorialHadamard, a, b, ctx);
  CHECK(f.coeffs == std::vector<Real>{Real(1), Real(6), Real(6)});
  CHECK_THROWS_AS(closure_transform(ClosureKind::Hadamard, a, std::nullopt, ctx), DomainError);
  CHECK(closure_name(ClosureKind::Hadamard) != closure_name(ClosureKind::DivideFactorial));
}

TEST_CASE("Turan ratios of binomial rows") {
  const auto ctx = PrecisionContext::with_bits(256);
  PrecisionScope scope(ctx);
  const unsigned n = 6;
  std::vector<Real> c;
  Real binom(1);
  for (unsigned k = 0; k <= n; ++k) {
    c.push_back(binom);
    binom = binom * (n - k) / (k + 1);
  }
  const auto rep = turan_ratios(CoefficientSequence::from_values(c, ctx.bits), ctx);
  REQUIRE(rep.ratios.size() == n - 1);
  for (std::size_t i = 0; i < rep.ratios.size(); ++i) {
    const unsigned k = static_cast<unsigned>(rep.indices[i]);
    const Real expect = Real((k + 1) * (n - k + 1)) / Real(k * (n - k));
    CHECK(oracle::rel_err(rep.ratios[i], expect) < pow2(-240));
  }
  CHECK_FALSE(rep.passes_4);
}

TEST_CASE("Turan ratios skip zero denominators") {
  const auto ctx = PrecisionContext::with_bits(128);
  const auto rep = turan_ratios(seq_of({"1", "1", "0", "1", "1"}, 128), ctx);
  CHECK(rep.skipped.size() == 2);
}

TEST_CASE("sufficient condition at the boundary") {
  const auto ctx = PrecisionContext::with_bits(256);
  const auto c = condition_310(1, 0.5, {}, {}, ctx);
  CHECK(c.holds);
  CHECK(c.lhs == c.rhs);
  CHECK_FALSE(condition_310(1, 0.5, {0.9}, {}, ctx).holds);
  CHECK_THROWS_AS(condition_310(1, 1.5, {}, {}, ctx), DomainError);
}

TEST_CASE("fingerprints") {
  const auto a = seq_of({"1", "2", "1"});
  const auto b = seq_of({"1", "2", "1.0000001"});
  CHECK(sequence_fingerprint(a) == sequence_fingerprint(seq_of({"1", "2", "1"})));
  CHECK(sequence_fingerprint(a) != sequence_fingerprint(b));
  CHECK(sequence_fingerprint(a).rfind("fnv1a64:", 0) == 0);
  CHECK(sequence_fingerprint(a).size() == 8 + 16);
}
