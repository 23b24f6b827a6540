// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "qzeros/pfcheck.hpp"
#include "qzeros/roots.hpp"
#include "qzeros/verify.hpp"

using namespace qzeros;
namespace mp = boost::multiprecision;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(const Real& x) { return to_decimal(x, 3); }

Real metric_or(const VerificationReport& rep, const std::string& name, const Real& fallback) {
  const Real* m = rep.metric(name);
  return m ? *m : fallback;
}

std::string counts(const VerificationReport& rep) {
  return std::to_string(rep.passed) + "/" + std::to_string(rep.run) + " instances";
}

const Real kImagBound("1e-30");

Outcome poly_positive(const PrecisionContext& ctx) {
  const auto rep = verify_poly_positive(PolyGrid{}, ctx);
  const Real imag = metric_or(rep, "max_imag_ratio", Real(1));
  return {rep.ok() && rep.run == 5 * 4 * 8 && imag <= kImagBound,
          counts(rep) + ", max imag ratio " + sci(imag) + " (bound 1e-30)"};
}

Outcome poly_negative(const PrecisionContext& ctx) {
  const auto rep = verify_poly_negative(PolyGrid{}, ctx);
  return {rep.ok() && rep.run == 2 * 50, counts(rep) + " (50 products and their limits) with negative zeros"};
}

// Smallest zero of sum z^k / (k!)^2 at six significant digits.
Outcome func1(const PrecisionContext& ctx) {
  const auto rep = verify_thm_func1(Func1Grid{}, ctx);
  const Real trunc = metric_or(rep, "max_truncation_delta", Real(1));
  const Real prec = metric_or(rep, "max_precision_delta", Real(1));
  PrecisionScope scope(ctx);
  const auto zs = locate_entire_zeros(LimitEntire{0, {1}}, 5, ctx);
  const Real z = zs.zeros.front().value.re;
  const Real oracle_zero = oracle::bisect(oracle::bessel_limit_sum, Real(-2), Real(-1));
  const Real printed = -mp::pow(Real("2.404826") / 2, 2);
  const std::string z6 = to_decimal(z, 6);
  const bool digits_ok = z6 == to_decimal(oracle_zero, 6) && z6 == to_decimal(printed, 6);
  const bool ok = rep.ok() && trunc <= kImagBound && prec <= kImagBound && digits_ok && zs.realness->all_negative;
  return {ok, counts(rep) + ", N+16 delta " + sci(trunc) + ", precision-doubling delta " + sci(prec) +
                  ", first zero " + z6 + " vs bisection " + to_decimal(oracle_zero, 6) + " vs -(2.404826/2)^2 " +
                  to_decimal(printed, 6)};
}

Outcome func2(const PrecisionContext& ctx) {
  const auto rep = verify_thm_func2(Func2Grid{}, ctx);
  const Real ratio = metric_or(rep, "min_turan_ratio", Real(0));
  const Real* boundary = rep.metric("boundary_ratio_deviation");
  const bool ok = rep.ok() && ratio >= 4 - kImagBound && boundary != nullptr && *boundary == 0;
  return {ok, counts(rep) + " (" + std::to_string(rep.skipped) + " skipped by the condition), min ratio " +
                  to_decimal(ratio, 12) + ", boundary deviation " + (boundary ? sci(*boundary) : "missing")};
}

Outcome identities(const PrecisionContext& ctx) {
  const IdentityGrid grid;
  const auto rep = verify_identities(grid, ctx);
  const Real bound = pow2(-128);
  std::size_t families = 0;
  for (const auto& m : rep.metrics)
    if (m.name.rfind("max_residual.", 0) == 0) ++families;
  const Real worst = metric_or(rep, "max_residual", Real(1));
  const bool ok = rep.ok() && worst <= bound && rep.run == families * grid.samples;
  return {ok, counts(rep) + " over " + std::to_string(families) + " identities, max residual " + sci(worst) +
                  " (bound 2^-128 = " + sci(bound) + ")"};
}

// Sequence from prod (x + r_j) with random r_j > 0, or plain random entries.
std::vector<Real> random_sequence(std::mt19937_64& rng, bool from_roots, int d) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Real> c;
  if (from_roots) {
    c = {Real(1)};
    for (int j = 0; j < d; ++j) {
      const Real r(std::round((0.05 + 4.95 * unit(rng)) * 1e4) / 1e4);
      std::vector<Real> next(c.size() + 1, Real(0));
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k] += r * c[k];
        next[k + 1] += c[k];
      }
      c = next;
    }
  } else {
    for (int k = 0; k <= d; ++k) c.emplace_back(std::round(unit(rng) * 1e4) / 1e4);
    if (c.back() == 0) c.back() = Real(1);
  }
  return c;
}

bool minors_nonnegative(const CoefficientSequence& seq, const PrecisionContext& ctx, Real& worst) {
  const std::size_t window = std::min<std::size_t>(10, seq.coeffs.size());
  const auto rep = toeplitz_minors(seq, window, std::min<std::size_t>(4, window), ctx);
  worst = rmin(worst, rep.min_minor);
  return rep.min_minor >= -pow2(-128);
}

Outcome pf_machinery(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  std::mt19937_64 rng(20240607);
  std::uniform_int_distribution<int> degree(1, 8);
  std::size_t pf_count = 0, implication_failures = 0;
  Real worst_minor = std::numeric_limits<Real>::infinity();
  for (int i = 0; i < 100; ++i) {
    const auto seq = CoefficientSequence::from_values(random_sequence(rng, i % 2 == 0, degree(rng)), ctx.bits);
    if (!pf_finite_via_roots(seq, ctx)) continue;
    ++pf_count;
    if (!minors_nonnegative(seq, ctx, worst_minor)) ++implication_failures;
  }
  std::size_t closure_failures = 0;
  for (int i = 0; i < 100; ++i) {
    const int d = degree(rng);
    const auto a = CoefficientSequence::from_values(random_sequence(rng, true, d), ctx.bits);
    const auto b = CoefficientSequence::from_values(random_sequence(rng, true, d), ctx.bits);
    for (auto kind : {ClosureKind::Hadamard, ClosureKind::DivideFactorial, ClosureKind::FactorialHadamard}) {
      const auto t = closure_transform(kind, a, kind == ClosureKind::DivideFactorial ? std::nullopt
                                                                                       : std::optional(b),
                                       ctx);
      Real ignored = std::numeric_limits<Real>::infinity();
      if (!pf_finite_via_roots(t, ctx) || !minors_nonnegative(t, ctx, ignored)) ++closure_failures;
    }
  }
  const bool ok = implication_failures == 0 && closure_failures == 0 && pf_count > 0;
  return {ok, std::to_string(pf_count) + "/100 sequences PF by roots, " + std::to_string(implication_failures) +
                  " with a minor below -2^-128 (min minor " + sci(worst_minor) + "), " +
                  std::to_string(closure_failures) + "/300 closure failures"};
}

Outcome order(const PrecisionContext& ctx) {
  const OrderGrid grid;
  std::ostringstream detail;
  bool ok = true;
  for (const auto& [m, l] : grid.m_l) {
    const auto est = estimate_order(LimitEntire{m, std::vector<Decimal>(l, Decimal(1))}, grid.K, ctx);
    const Real err = mp::abs(est.value - est.target) / est.target;
    ok = ok && err <= Real("0.05");
    detail << "(" << m << "," << l << ") " << to_decimal(est.value, 6) << " vs " << to_decimal(est.target, 6)
           << "; ";
  }
  std::string s = detail.str();
  s.resize(s.size() - 2);
  return {ok, "K=200: " + s + " (tolerance 5%)"};
}

Outcome determinism() {
  std::ostringstream out1, err1, out2, err2;
  const int c1 = cli::run({"verify", "all"}, out1, err1);
  const int c2 = cli::run({"verify", "all"}, out2, err2);
  const bool same = out1.str() == out2.str();
  return {same && c1 == c2 && !out1.str().empty(),
          "verify all exit " + std::to_string(c1) + "/" + std::to_string(c2) + ", " +
              std::to_string(out1.str().size()) + " bytes, " + (same ? "identical" : "different")};
}

}  // namespace

int main() {
  const auto ctx = PrecisionContext::with_bits(256);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"positive zeros of the terminating grid", [&] { return poly_positive(ctx); }},
      {"negative zeros of random products and limits", [&] { return poly_negative(ctx); }},
      {"first five zeros of the entire families", [&] { return func1(ctx); }},
      {"Turan ratios under the sufficient condition", [&] { return func2(ctx); }},
      {"identity residuals", [&] { return identities(ctx); }},
      {"PF machinery", [&] { return pf_machinery(ctx); }},
      {"order estimates", [&] { return order(ctx); }},
      {"determinism of verify all", [] { return determinism(); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("criterion %zu %s: %s | %s [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), secs);
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
