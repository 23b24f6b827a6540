#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qzeros/errors.hpp"
#include "qzeros/pfcheck.hpp"
#include "qzeros/roots.hpp"
#include "qzeros/verify.hpp"

namespace qzeros {

namespace mp = boost::multiprecision;

const Real* VerificationReport::metric(const std::string& name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return &m.value;
  }
  return nullptr;
}

void VerificationReport::record(const std::string& instance, bool ok, const std::string& reason) {
  ++run;
  if (ok) {
    ++passed;
  } else {
    failures.push_back({instance, reason.empty() ? "check failed" : reason});
  }
}

void VerificationReport::worst_max(const std::string& name, const Real& value) {
  for (auto& m : metrics) {
    if (m.name == name) {
      if (value > m.value) m.value = value;
      return;
    }
  }
  metrics.push_back({name, value});
}

void VerificationReport::worst_min(const std::string& name, const Real& value) {
  for (auto& m : metrics) {
    if (m.name == name) {
      if (value < m.value) m.value = value;
      return;
    }
  }
  metrics.push_back({name, value});
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string join(const std::vector<Decimal>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].text();
  return out + "]";
}

// Uniform double in [lo, hi) rounded to four decimals, so parameters echo
// exactly as decimal text.
Decimal draw(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return Decimal(std::round((lo + (hi - lo) * u) * 1e4) / 1e4);
}

unsigned draw_int(std::mt19937_64& rng, unsigned lo, unsigned hi) {
  return lo + static_cast<unsigned>(rng() % (hi - lo + 1));
}

struct PolyOutcome {
  bool ok = false;
  std::string reason;
  Real imag_ratio;
};

PolyOutcome check_polynomial(const SeriesSpec& spec, bool want_positive, const PrecisionContext& ctx) {
  PolyOutcome out;
  const std::size_t degree = *terminating_degree(spec);
  const auto seq = coefficients(spec, degree, ctx);
  const ZeroSet zeros = find_poly_roots(seq, ctx);
  const RealnessReport rep = certify_real_roots(seq, zeros, ctx);
  out.imag_ratio = rep.max_imag_ratio;
  const bool sign_ok = want_positive ? rep.all_positive : rep.all_negative;
  out.ok = rep.all_real && sign_ok && zeros.zeros.size() == degree;
  if (!out.ok) {
    std::ostringstream msg;
    msg << "all_real=" << rep.all_real << " sign_ok=" << sign_ok << " zeros=" << zeros.zeros.size()
        << " degree=" << degree << " max_imag_ratio=" << to_decimal(rep.max_imag_ratio, 6);
    out.reason = msg.str();
  }
  return out;
}

template <class Fn>
void guarded(VerificationReport& rep, const std::string& instance, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    rep.record(instance, false, e.what());
  }
}

Real relative_gap(const Complex& a, const Complex& b) {
  const Real scale = abs(b);
  return abs(a - b) / (scale == 0 ? Real(1) : scale);
}

// Real zero of spec inside [lo, hi] by bisection on certified values.
Real bisect_zero(const SeriesSpec& spec, Real lo, Real hi, const PrecisionContext& ctx) {
  auto f = [&](const Real& x) { return evaluate(spec, Complex(x), ctx).value.re; };
  Real flo = f(lo);
  const Real fhi = f(hi);
  if ((flo > 0) == (fhi > 0)) throw GuardError("bisection bracket has no sign change");
  for (int it = 0; it < 120; ++it) {
    const Real mid = (lo + hi) / 2;
    const Real fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

}  // namespace

std::string describe(const SeriesSpec& spec) {
  std::ostringstream s;
  s << family_name(spec) << "(";
  std::visit(Overloaded{
                 [&](const RamanujanA& v) {
                   s << "alpha=" << v.alpha.text() << ",q=" << v.q.text();
                   if (v.terminating_n) {
                     s << ",n=" << *v.terminating_n;
                   } else {
                     s << ",a=" << v.a.text();
                   }
                 },
                 [&](const GeneralizedQ& v) {
                   s << "alpha=" << v.alpha.text() << ",q=" << v.q.text() << ",terminating=[";
                   for (std::size_t i = 0; i < v.terminating.size(); ++i)
                     s << (i ? "," : "") << v.terminating[i].n << "@" << v.terminating[i].q.text();
                   s << "],shifted=[";
                   for (std::size_t i = 0; i < v.shifted.size(); ++i)
                     s << (i ? "," : "") << v.shifted[i].a.text() << "@" << v.shifted[i].q.text();
                   s << "],beta=[";
                   for (std::size_t i = 0; i < v.denominators.size(); ++i)
                     s << (i ? "," : "") << v.denominators[i].beta.text() << "@" << v.denominators[i].q.text();
                   s << "]";
                 },
                 [&](const LimitPoly& v) {
                   s << "n=[";
                   for (std::size_t i = 0; i < v.n.size(); ++i) s << (i ? "," : "") << v.n[i];
                   s << "],beta=" << join(v.beta);
                 },
                 [&](const LimitEntire& v) { s << "m=" << v.m << ",beta=" << join(v.beta); },
                 [&](const RAS& v) {
                   s << "alpha=" << v.alpha.text() << ",q=" << v.q.text() << ",a=" << join(v.a) << ",b=" << join(v.b);
                 },
                 [&](const RPhiS& v) { s << "q=" << v.q.text() << ",a=" << join(v.a) << ",b=" << join(v.b); },
                 [&](const QBessel& v) { s << "nu=" << v.nu.text() << ",q=" << v.q.text(); },
             },
             spec);
  s << ")";
  return s.str();
}

VerificationReport verify_poly_positive(const PolyGrid& grid, const PrecisionContext& ctx) {
  VerificationReport rep;
  rep.tag = "poly.positive";
  rep.worst_max("max_imag_ratio", Real(0));
  for (const auto& q : grid.qs) {
    for (const auto& alpha : grid.alphas) {
      for (unsigned n = grid.n_min; n <= grid.n_max; ++n) {
        RamanujanA spec;
        spec.alpha = alpha;
        spec.q = q;
        spec.terminating_n = n;
        const std::string name = describe(spec);
        guarded(rep, name, [&] {
          const auto out = check_polynomial(spec, true, ctx);
          rep.worst_max("max_imag_ratio", out.imag_ratio);
          rep.record(name, out.ok, out.reason);
        });
      }
    }
  }
  return rep;
}

VerificationReport verify_poly_negative(const PolyGrid& grid, const PrecisionContext& ctx) {
  VerificationReport rep;
  rep.tag = "poly.negative";
  rep.worst_max("max_imag_ratio", Real(0));
  std::mt19937_64 rng(grid.seed);
  for (std::size_t i = 0; i < grid.random_instances; ++i) {
    GeneralizedQ spec;
    spec.q = draw(rng, 0.1, 0.9);
    spec.alpha = draw(rng, 0.0, 2.0);
    const unsigned m = draw_int(rng, 1, 2);
    const unsigned l = draw_int(rng, 0, 2);
    LimitPoly target;
    for (unsigned j = 0; j < m; ++j) {
      const unsigned n = draw_int(rng, 1, 5);
      spec.terminating.push_back({n, draw(rng, 0.1, 0.9)});
      target.n.push_back(n);
    }
    for (unsigned r = 0; r < l; ++r) {
      const Decimal beta = draw(rng, 0.2, 3.0);
      spec.denominators.push_back({beta, draw(rng, 0.1, 0.9)});
      target.beta.push_back(beta);
    }
    for (const SeriesSpec& s : {SeriesSpec(spec), SeriesSpec(target)}) {
      const std::string name = describe(s);
      guarded(rep, name, [&] {
        const auto out = check_polynomial(s, false, ctx);
        rep.worst_max("max_imag_ratio", out.imag_ratio);
        rep.record(name, out.ok, out.reason);
      });
    }
  }
  return rep;
}

namespace {

void absorb(VerificationReport& into, const VerificationReport& part) {
  into.run += part.run;
  into.passed += part.passed;
  into.skipped += part.skipped;
  for (const auto& m : part.metrics) into.metrics.push_back({part.tag + "." + m.name, m.value});
  into.failures.insert(into.failures.end(), part.failures.begin(), part.failures.end());
  for (const auto& n : part.notes) into.notes.push_back(part.tag + ": " + n);
}

}  // namespace

VerificationReport verify_thm_poly(const PolyGrid& grid, const PrecisionContext& ctx) {
  VerificationReport rep;
  rep.tag = "poly";
  absorb(rep, verify_poly_positive(grid, ctx));
  absorb(rep, verify_poly_negative(grid, ctx));
  return rep;
}

namespace {

std::vector<SeriesSpec> func1_instances(const Func1Grid& grid) {
  std::vector<SeriesSpec> out;
  for (const auto& a : grid.as) {
    for (const auto& q : grid.qs) {
      for (const auto& alpha : grid.alphas) {
        RamanujanA spec;
        spec.alpha = alpha;
        spec.q = q;
        // The family is taken at numerator parameter -a.
        spec.a = a.text() == "0" ? Decimal(0) : Decimal("-" + a.text());
        out.push_back(spec);
      }
    }
  }
  GeneralizedQ g1;
  g1.alpha = 0.5;
  g1.q = 0.5;
  g1.shifted = {{0.5, 0.4}};
  g1.denominators = {{0.5, 0.6}};
  out.push_back(g1);
  GeneralizedQ g2;
  g2.alpha = 1;
  g2.q = 0.6;
  g2.shifted = {{0, 0.3}, {1.5, 0.7}};
  out.push_back(g2);
  GeneralizedQ g3;
  g3.alpha = 0.75;
  g3.q = 0.4;
  g3.denominators = {{1, 0.5}, {2.5, 0.3}};
  out.push_back(g3);
  GeneralizedQ g4;
  g4.alpha = 1;
  g4.q = 0.5;
  g4.shifted = {{3, 0.5}};
  g4.denominators = {{1.5, 0.5}};
  out.push_back(g4);
  out.push_back(LimitEntire{0, {1}});
  out.push_back(LimitEntire{1, {1}});
  out.push_back(LimitEntire{0, {1, 2}});
  out.push_back(LimitEntire{1, {2.5}});
  out.push_back(LimitEntire{2, {1}});
  return out;
}

}  // namespace

VerificationReport verify_thm_func1(const Func1Grid& grid, const PrecisionContext& ctx) {
  VerificationReport rep;
  rep.tag = "func1";
  rep.worst_max("max_imag_ratio", Real(0));
  rep.worst_max("max_truncation_delta", Real(0));
  if (grid.precision_doubling) rep.worst_max("max_precision_delta", Real(0));
  const PrecisionContext doubled = PrecisionContext::with_bits(2 * ctx.bits);
  for (const auto& spec : func1_instances(grid)) {
    const std::string name = describe(spec);
    guarded(rep, name, [&] {
      const ZeroSet zs = locate_entire_zeros(spec, grid.K, ctx);
      const auto& real = *zs.realness;
      rep.worst_max("max_imag_ratio", real.max_imag_ratio);
      rep.worst_max("max_truncation_delta", zs.certificate->stability_delta);
      bool ok = real.all_real && real.all_negative && zs.zeros.size() == grid.K;
      std::string reason = ok ? "" : "zeros not certified real negative";
      if (ok && grid.precision_doubling) {
        const ZeroSet hi = locate_entire_zeros(spec, grid.K, doubled);
        Real delta(0);
        for (std::size_t k = 0; k < grid.K; ++k) delta = rmax(delta, relative_gap(zs.zeros[k].value, hi.zeros[k].value));
        rep.worst_max("max_precision_delta", delta);
        if (!(delta <= ctx.eps_real)) {
          ok = false;
          reason = "zeros moved by " + to_decimal(delta, 6) + " under precision doubling";
        }
      }
      rep.record(name, ok, reason);
    });
  }

  // Bisection cross-check of the smallest zero of sum z^k / (k!)^2.
  const SeriesSpec bessel = LimitEntire{0, {1}};
  const std::string name = describe(bessel) + " bisection";
  guarded(rep, name, [&] {
    PrecisionScope scope(ctx);
    const ZeroSet zs = locate_entire_zeros(bessel, 1, ctx);
    const Real z = lift(zs.zeros.front().value.re);
    const Real root = bisect_zero(bessel, z * Real(1.001), z * Real(0.999), ctx);
    const Real gap = mp::abs(root - z) / mp::abs(root);
    rep.worst_max("bisection_relative_gap", gap);
    rep.notes.push_back("smallest zero of " + describe(bessel) + ": " + to_decimal(root, 20));
    rep.record(name, gap <= Real(5e-7), "bisection disagrees: relative gap " + to_decimal(gap, 6));
  });
  return rep;
}

VerificationReport verify_thm_func2(const Func2Grid& grid, const PrecisionContext& ctx) {
  VerificationReport rep;
  rep.tag = "func2";
  rep.worst_max("max_imag_ratio", Real(0));
  for (const auto& q : grid.qs) {
    for (const auto& alpha : grid.alphas) {
      for (const auto& [as, bs] : grid.parameter_sets) {
        const RAS spec{alpha, q, as, bs};
        const std::string name = describe(spec);
        ConditionCheck cond;
        try {
          cond = condition_310(alpha, q, as, bs, ctx);
        } catch (const std::exception& e) {
          rep.record(name, false, e.what());
          continue;
        }
        if (!cond.holds) {
          ++rep.skipped;
          rep.notes.push_back("skipped " + name + ": condition lhs " + to_decimal(cond.lhs, 6) + " < rhs " +
                              to_decimal(cond.rhs, 6));
          continue;
        }
        guarded(rep, name, [&] {
          const auto seq = coefficients(spec, grid.ratio_terms, ctx);
          const RatioReport ratios = turan_ratios(seq, ctx);
          rep.worst_min("min_turan_ratio", ratios.min_ratio);
          if (as.empty() && bs.empty() && cond.lhs == cond.rhs) {
            PrecisionScope scope(ctx);
            Real dev(0);
            for (const auto& r : ratios.ratios) dev = rmax(dev, mp::abs(r - 4));
            rep.worst_max("boundary_ratio_deviation", dev);
          }
          const ZeroSet zs = locate_entire_zeros(spec, grid.K, ctx);
          rep.worst_max("max_imag_ratio", zs.realness->max_imag_ratio);
          const bool negative = zs.realness->all_real && zs.realness->all_negative;
          std::string reason;
          if (!ratios.passes_4) reason = "Turan ratio below 4: " + to_decimal(ratios.min_ratio, 10);
          if (!negative) reason += (reason.empty() ? "" : "; ") + std::string("zeros not certified negative");
          rep.record(name, ratios.passes_4 && negative, reason);
        });
      }
    }
  }
  return rep;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"poly", "func1", "func2", "identities", "limits", "order"};
  return names;
}

VerificationReport run_suite(const std::string& name, const GridSpec& grid, const PrecisionContext& ctx) {
  if (name == "poly") return verify_thm_poly(grid.poly, ctx);
  if (name == "func1") return verify_thm_func1(grid.func1, ctx);
  if (name == "func2") return verify_thm_func2(grid.func2, ctx);
  if (name == "identities") return verify_identities(grid.identities, ctx);
  if (name == "limits") return verify_limits(grid.limits, ctx);
  if (name == "order") return verify_order(grid.order, ctx);
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace qzeros
