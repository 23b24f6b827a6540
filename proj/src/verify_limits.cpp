#include <algorithm>

#include "qzeros/errors.hpp"
#include "qzeros/roots.hpp"
#include "qzeros/verify.hpp"

namespace qzeros {

namespace mp = boost::multiprecision;

namespace {

struct LimitCase {
  GeneralizedQ spec;
  bool entire;
};

GeneralizedQ with_base(GeneralizedQ g, const Decimal& q) {
  g.q = q;
  for (auto& t : g.terminating) t.q = q;
  for (auto& s : g.shifted) s.q = q;
  for (auto& d : g.denominators) d.q = q;
  return g;
}

std::vector<LimitCase> limit_cases() {
  std::vector<LimitCase> out;
  GeneralizedQ p1;
  p1.alpha = 1;
  p1.terminating = {{2, 0.5}};
  p1.denominators = {{1, 0.5}};
  out.push_back({p1, false});
  GeneralizedQ p2;
  p2.alpha = 0.5;
  p2.terminating = {{3, 0.5}, {4, 0.5}};
  p2.denominators = {{1.5, 0.5}};
  out.push_back({p2, false});
  // Entire case at alpha = l + m/2 with a_j = 0.
  GeneralizedQ e1;
  e1.alpha = 1.5;
  e1.shifted = {{0, 0.5}};
  e1.denominators = {{1, 0.5}};
  out.push_back({e1, true});
  GeneralizedQ e2;
  e2.alpha = 1;
  e2.denominators = {{2, 0.5}};
  out.push_back({e2, true});
  return out;
}

// Decimal text of 1 - 2^-j; exact in binary.
Decimal q_step(unsigned j) {
  PrecisionScope scope(64);
  return Decimal((1 - pow2(-static_cast<long>(j))).str(0, std::ios_base::fixed));
}

Real factorial(std::size_t k) {
  Real f(1);
  for (std::size_t i = 2; i <= k; ++i) f *= Real(static_cast<long>(i));
  return f;
}

// Max over targets of the relative distance to the nearest computed zero.
Real zero_gap(const ZeroSet& computed, const ZeroSet& target) {
  Real worst(0);
  for (const auto& t : target.zeros) {
    Real best = std::numeric_limits<Real>::infinity();
    for (const auto& c : computed.zeros) best = rmin(best, abs(c.value - t.value) / abs(t.value));
    worst = rmax(worst, best);
  }
  return worst;
}

}  // namespace

VerificationReport verify_limits(const LimitGrid& grid, const PrecisionContext& ctx) {
  VerificationReport rep;
  rep.tag = "limits";
  if (grid.j_max < grid.j_min + 3) throw DomainError("limit sequence needs at least four q values");
  PrecisionScope scope(ctx);
  rep.worst_min("min_gap_ratio", std::numeric_limits<Real>::infinity());

  for (const auto& lc : limit_cases()) {
    const SeriesSpec target = limit_target(with_base(lc.spec, 0.5));
    const std::string name = "scaled " + describe(with_base(lc.spec, 0.5)) + " -> " + describe(target);
    try {
      const std::size_t count =
          lc.entire ? grid.coefficient_count : std::min(grid.coefficient_count, *terminating_degree(target));
      const auto tc = coefficients(target, count, ctx);
      std::optional<ZeroSet> target_zeros;
      if (!lc.entire) target_zeros = find_poly_roots(tc, ctx);
      const unsigned m_plus_2l =
          static_cast<unsigned>(lc.spec.shifted.size() + 2 * lc.spec.denominators.size());

      std::vector<Real> gaps, root_gaps;
      bool bound_ok = true;
      for (unsigned j = grid.j_min; j <= grid.j_max; ++j) {
        const GeneralizedQ g = with_base(lc.spec, q_step(j));
        const auto sc = scaled_limit_coefficients(g, count, ctx);
        Real gap(0);
        for (std::size_t k = 0; k <= count; ++k) gap = rmax(gap, mp::abs(sc.coeffs[k] - tc.coeffs[k]));
        gaps.push_back(gap);
        if (lc.entire) {
          for (std::size_t k = 0; k <= count; ++k) {
            const Real ratio = mp::abs(sc.coeffs[k]) * mp::pow(factorial(k), Real(m_plus_2l));
            rep.worst_max("max_bound_ratio", ratio);
            if (ratio > 1 + lift(ctx.eps_id)) bound_ok = false;
          }
        } else {
          root_gaps.push_back(zero_gap(find_poly_roots(sc, ctx), *target_zeros));
        }
      }

      bool ok = bound_ok;
      std::string reason = bound_ok ? "" : "scaled coefficient exceeds 1/(k!)^(m+2l)";
      // Gap halving over the final three q-steps.
      for (std::size_t i = gaps.size() - 3; i < gaps.size(); ++i) {
        const Real ratio = gaps[i - 1] / gaps[i];
        rep.worst_min("min_gap_ratio", ratio);
        if (!(ratio >= Real(grid.min_gap_ratio))) {
          ok = false;
          reason += (reason.empty() ? "" : "; ") + std::string("coefficient gap ratio ") + to_decimal(ratio, 6);
        }
      }
      rep.worst_max("final_coefficient_gap", gaps.back());
      if (!root_gaps.empty()) {
        rep.worst_max("final_zero_gap", root_gaps.back());
        for (std::size_t i = root_gaps.size() - 3; i < root_gaps.size(); ++i) {
          if (!(root_gaps[i] < root_gaps[i - 1])) {
            ok = false;
            reason += (reason.empty() ? "" : "; ") + std::string("zero gap did not shrink");
          }
        }
      }
      rep.record(name, ok, reason);
    } catch (const std::exception& e) {
      rep.record(name, false, e.what());
    }
  }
  return rep;
}

OrderEstimate estimate_order(const LimitEntire& spec, std::size_t K, const PrecisionContext& ctx) {
  if (K < 50) throw DomainError("order estimate needs K >= 50");
  if (spec.beta.empty()) throw DomainError("order estimate needs at least one beta");
  PrecisionScope scope(ctx);
  std::vector<Real> betas;
  for (const auto& b : spec.beta) {
    betas.push_back(b.value());
    if (!(betas.back() > 0)) throw DomainError("beta must be > 0");
  }
  const Real mult(static_cast<long>(spec.m + spec.beta.size()));
  Real log_fact(0), neg_log_a(0);
  for (std::size_t k = 1; k <= K; ++k) {
    const Real lk = mp::log(Real(static_cast<long>(k)));
    log_fact += lk;
    neg_log_a += mult * lk;
    for (const auto& b : betas) neg_log_a += mp::log(b + Real(static_cast<long>(k - 1)));
  }
  const Real kk(static_cast<long>(K));
  OrderEstimate out;
  out.value = log_fact / neg_log_a;
  out.raw = kk * mp::log(kk) / neg_log_a;
  out.target = Real(1) / Real(static_cast<long>(spec.m + 2 * spec.beta.size()));
  return out;
}

VerificationReport verify_order(const OrderGrid& grid, const PrecisionContext& ctx) {
  VerificationReport rep;
  rep.tag = "order";
  PrecisionScope scope(ctx);
  rep.worst_max("max_relative_error", Real(0));
  rep.worst_max("max_raw_relative_error", Real(0));
  for (const auto& [m, l] : grid.m_l) {
    const LimitEntire spec{m, std::vector<Decimal>(l, Decimal(1))};
    const std::string name = describe(spec) + " K=" + std::to_string(grid.K);
    try {
      const OrderEstimate est = estimate_order(spec, grid.K, ctx);
      const Real err = mp::abs(est.value - est.target) / est.target;
      const Real raw_err = mp::abs(est.raw - est.target) / est.target;
      rep.worst_max("max_relative_error", err);
      rep.worst_max("max_raw_relative_error", raw_err);
      rep.notes.push_back(name + ": estimate " + to_decimal(est.value, 8) + ", k log k form " + to_decimal(est.raw, 8) +
                          ", target " + to_decimal(est.target, 8));
      rep.record(name, err <= Real(grid.tolerance), "relative error " + to_decimal(err, 6));
    } catch (const std::exception& e) {
      rep.record(name, false, e.what());
    }
  }
  return rep;
}

}  // namespace qzeros
