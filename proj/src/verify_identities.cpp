#include <cmath>
#include <functional>
#include <map>

#include "qzeros/errors.hpp"
#include "qzeros/qcore.hpp"
#include "qzeros/roots.hpp"
#include "qzeros/verify.hpp"

namespace qzeros {

namespace mp = boost::multiprecision;

namespace {

Real pi() { return 4 * mp::atan(Real(1)); }

// Deterministic low-discrepancy points in the disk |z| <= radius.
Complex sample_point(std::size_t j, const Real& radius) {
  const double golden = 0.6180339887498949;
  const double frac_r = std::fmod(0.5 + golden * static_cast<double>(j), 1.0);
  const double frac_t = std::fmod(0.25 + 0.7548776662466927 * static_cast<double>(j), 1.0);
  const Real r = radius * (Real(0.1) + Real(0.9) * Real(frac_r));
  return polar(r, 2 * pi() * Real(frac_t));
}

// Sum of term(0) + term(1) + ... where |term(k+1) / term(k)| <= ratio(n) for
// all k >= n, with ratio nonincreasing. Stops once the geometric tail is
// below tol * max(1, |sum|).
Complex direct_sum(const std::function<Complex(std::size_t)>& term, const std::function<Real(std::size_t)>& ratio,
                   const Real& tol, std::size_t n_max = 5000) {
  Complex sum(0);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const Complex t = term(n);
    sum += t;
    const Real rho = ratio(n);
    if (rho < 1) {
      const Real tail = abs(t) * rho / (1 - rho);
      if (tail <= tol * rmax(Real(1), abs(sum))) return sum;
    }
  }
  throw ConvergenceError("direct summation did not reach its tolerance");
}

Complex cpow(const Complex& z, std::size_t n) {
  Complex out(1);
  for (std::size_t i = 0; i < n; ++i) out *= z;
  return out;
}

Real rpow(const Real& x, const Real& e) { return mp::pow(x, e); }

Real residual(const Complex& lhs, const Complex& rhs) { return abs(lhs - rhs) / rmax(Real(1), abs(lhs)); }

struct Sample {
  std::string instance;
  Complex lhs;
  Complex rhs;
};

class IdentityRunner {
 public:
  IdentityRunner(VerificationReport& rep, const PrecisionContext& ctx) : rep_(rep), ctx_(ctx) {}

  void run(const std::string& name, std::size_t samples, const std::function<Sample(std::size_t)>& make) {
    const std::string metric = "max_residual." + name;
    rep_.worst_max(metric, Real(0));
    for (std::size_t j = 0; j < samples; ++j) {
      std::string instance = name + "#" + std::to_string(j);
      try {
        PrecisionScope scope(ctx_);
        const Sample s = make(j);
        instance = name + " " + s.instance;
        const Real r = residual(s.lhs, s.rhs);
        rep_.worst_max(metric, r);
        rep_.worst_max("max_residual", r);
        rep_.record(instance, r <= ctx_.eps_id, "residual " + to_decimal(r, 6));
      } catch (const std::exception& e) {
        rep_.record(instance, false, e.what());
      }
    }
  }

 private:
  VerificationReport& rep_;
  const PrecisionContext& ctx_;
};

std::string zdesc(const Complex& z) { return "z=" + to_decimal(z.re, 8) + (z.im < 0 ? "" : "+") + to_decimal(z.im, 8) + "i"; }

// Smallest zeros u_n of the kind-2 q-Bessel series in u = z^2, and the sum of
// 1 / u_n over the zeros not located.
struct BesselZeros {
  ZeroSet zeros;
  Real omitted;
};

BesselZeros bessel_zeros(const Decimal& nu, const Decimal& q, std::size_t K, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  BesselZeros out{locate_entire_zeros(QBessel{2, nu, q}, K, ctx), Real(0)};
  // The product has unit constant term, so sum_n 1/u_n = -c_1.
  const auto c = coefficients(QBessel{2, nu, q}, 1, ctx);
  Real total = -lift(c.coeffs[1]);
  for (const auto& z : out.zeros.zeros) total -= 1 / lift(z.value.re);
  out.omitted = mp::abs(total);
  return out;
}

}  // namespace

VerificationReport verify_identities(const IdentityGrid& grid, const PrecisionContext& ctx_in) {
  VerificationReport rep;
  rep.tag = "identities";
  // Truncation tails sit 16 bits below the residual threshold.
  const PrecisionContext ctx = ctx_in.tightened(16);
  PrecisionScope scope(ctx);
  const Real tol = lift(ctx.eps_id);
  IdentityRunner runner(rep, ctx_in);
  const std::size_t S = grid.samples;
  auto q_at = [&](std::size_t j) { return grid.qs[j % grid.qs.size()]; };

  // Terminating A-polynomial at alpha = 1/2 against the Stieltjes-Wigert sum
  // S_n(x;q) = sum_k q^{k^2} (-x)^k / ((q;q)_k (q;q)_{n-k}) at x = z q^{-1/2-n}.
  Real alternate(0);
  runner.run("stieltjes-wigert", S, [&](std::size_t j) {
    const Decimal qd = q_at(j);
    const Real q = qd.value();
    const unsigned n = static_cast<unsigned>(j % 9);
    const Complex z = sample_point(j, Real(2));
    RamanujanA spec;
    spec.alpha = 0.5;
    spec.q = qd;
    spec.terminating_n = n;
    auto sw = [&](const Complex& x) {
      Complex s(0);
      for (unsigned k = 0; k <= n; ++k) {
        s += rpow(q, Real(k * k)) * cpow(-x, k) / (qpoch_finite(q, q, k) * qpoch_finite(q, q, n - k));
      }
      return qpoch_finite(q, q, n) * s;
    };
    const Complex lhs = evaluate(spec, z, ctx).value;
    const Complex rhs = sw(z * rpow(q, Real(-0.5) - Real(n)));
    alternate = rmax(alternate, residual(lhs, sw(z * rpow(q, Real(0.5) - Real(n)))));
    return Sample{"q=" + qd.text() + " n=" + std::to_string(n) + " " + zdesc(z), lhs, rhs};
  });
  rep.notes.push_back("stieltjes-wigert: with argument z q^(1/2-n) the residual reaches " + to_decimal(alternate, 6));

  runner.run("ramanujan-a", S, [&](std::size_t j) {
    const Decimal qd = q_at(j);
    const Real q = qd.value();
    const Complex z = sample_point(j, Real(3));
    RamanujanA spec;
    spec.alpha = 1;
    spec.a = 0;
    spec.q = qd;
    // A_q(w) = sum q^{n^2} (-w)^n / (q;q)_n at w = -z.
    const Complex w = -z;
    const Real wm = abs(w);
    const Complex rhs = direct_sum([&](std::size_t n) { return rpow(q, Real(n * n)) * cpow(-w, n) / qpoch_finite(q, q, n); },
                                   [&](std::size_t n) { return rpow(q, Real(2 * n + 1)) * wm / (1 - q); }, tol);
    return Sample{"q=" + qd.text() + " " + zdesc(z), evaluate(spec, z, ctx).value, rhs};
  });

  runner.run("partial-theta", S, [&](std::size_t j) {
    const Decimal qd = q_at(j);
    const Real q = qd.value();
    const Complex z = sample_point(j, Real(3));
    RamanujanA spec;
    spec.alpha = 1;
    spec.a = qd;
    spec.q = qd;
    const Real zm = abs(z);
    const Complex rhs = direct_sum([&](std::size_t n) { return rpow(q, Real(n * n)) * cpow(z, n); },
                                   [&](std::size_t n) { return rpow(q, Real(2 * n + 1)) * zm; }, tol);
    return Sample{"q=" + qd.text() + " " + zdesc(z), evaluate(spec, z, ctx).value, rhs};
  });

  // sum (-a;q)_n z^n / (q;q)_n = (-az;q)_inf / (z;q)_inf for |z| < 1.
  const std::vector<Decimal> binomial_as{0, 0.5, 2};
  runner.run("q-binomial", S, [&](std::size_t j) {
    const Decimal qd = q_at(j);
    const Real q = qd.value();
    const Decimal a = binomial_as[(j / grid.qs.size()) % binomial_as.size()];
    const Complex z = sample_point(j, Real(0.6));
    RamanujanA spec;
    spec.alpha = 0;
    spec.a = a.text() == "0" ? Decimal(0) : Decimal("-" + a.text());
    spec.q = qd;
    const Complex lhs = evaluate(spec, z, ctx).value;
    const Complex rhs = qpoch_infinite(-(a.value() * z), q, ctx).value / qpoch_infinite(z, q, ctx).value;
    return Sample{"q=" + qd.text() + " a=" + a.text() + " " + zdesc(z), lhs, rhs};
  });

  // sum_k (q^{-n};q)_k (-z)^k / (q;q)_k = (-z q^{-n};q)_n.
  alternate = 0;
  runner.run("terminating-q-binomial", S, [&](std::size_t j) {
    const Decimal qd = q_at(j);
    const Real q = qd.value();
    const unsigned n = 1 + static_cast<unsigned>(j % 8);
    const Complex z = sample_point(j, Real(2));
    RamanujanA spec;
    spec.alpha = 0;
    spec.q = qd;
    spec.terminating_n = n;
    const Complex lhs = evaluate(spec, -z, ctx).value;
    const Complex rhs = qpoch_finite(-(z * rpow(q, -Real(n))), q, n);
    alternate = rmax(alternate, residual(lhs, qpoch_finite(-(z * rpow(q, Real(n))), q, n)));
    return Sample{"q=" + qd.text() + " n=" + std::to_string(n) + " " + zdesc(z), lhs, rhs};
  });
  rep.notes.push_back("terminating-q-binomial: the product (-q^n z;q)_n leaves a residual of " +
                      to_decimal(alternate, 6));

  // Truncated Bessel products. The sample disk is sized so the omitted
  // factors stay below 2^-(bits/2 + 4).
  const std::vector<Decimal> nus{0, 0.5};
  std::map<std::pair<std::string, std::string>, BesselZeros> cache;
  auto zeros_for = [&](const Decimal& nu, const Decimal& q) -> BesselZeros& {
    auto key = std::make_pair(nu.text(), q.text());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, bessel_zeros(nu, q, grid.product_zeros, ctx_in)).first;
    return it->second;
  };
  auto disk_for = [&](const BesselZeros& bz) {
    const Real budget = pow2(-static_cast<long>(ctx_in.bits / 2 + 4));
    return bz.omitted == 0 ? Real(1) : rmin(Real(1), budget / bz.omitted);
  };
  auto product_config = [&](std::size_t j) {
    const Decimal q = grid.product_qs[j % grid.product_qs.size()];
    const Decimal nu = nus[(j / grid.product_qs.size()) % nus.size()];
    return std::make_pair(nu, q);
  };
  for (std::size_t c = 0; c < grid.product_qs.size() * nus.size(); ++c) {
    const auto [nu, q] = product_config(c);
    try {
      const auto& bz = zeros_for(nu, q);
      rep.notes.push_back("bessel products nu=" + nu.text() + " q=" + q.text() + ": disk |z^2| <= " +
                          to_decimal(disk_for(bz), 6));
    } catch (const std::exception& e) {
      rep.notes.push_back("bessel zeros nu=" + nu.text() + " q=" + q.text() + " unavailable: " + e.what());
    }
  }

  runner.run("bessel-product", S, [&](std::size_t j) {
    const auto [nu, qd] = product_config(j);
    const auto& bz = zeros_for(nu, qd);
    const Complex z = sample_point(j, mp::sqrt(disk_for(bz)));
    const Complex lhs = qbessel_normalized(2, nu, qd, z, ctx);
    const Complex rhs = hadamard_product(bz.zeros, z * z, ctx);
    return Sample{"nu=" + nu.text() + " q=" + qd.text() + " " + zdesc(z), lhs, rhs};
  });

  // sum (x/4)^n / (q, q^{nu+1};q)_n (x/4;q)_inf = prod (1 + x / u_n).
  runner.run("bessel-kind1-product", S, [&](std::size_t j) {
    const auto [nu, qd] = product_config(j);
    const Real q = qd.value();
    const Real qnu1 = rpow(q, nu.value() + 1);
    const auto& bz = zeros_for(nu, qd);
    const Complex x = sample_point(j, disk_for(bz));
    const Complex x4 = x / Real(4);
    const Real x4m = abs(x4);
    const Complex series = direct_sum(
        [&](std::size_t n) { return cpow(x4, n) / (qpoch_finite(q, q, n) * qpoch_finite(qnu1, q, n)); },
        [&](std::size_t n) {
          return x4m / ((1 - rpow(q, Real(n + 1))) * (1 - qnu1 * rpow(q, Real(n))));
        },
        tol);
    const Complex lhs = series * qpoch_infinite(x4, q, ctx).value;
    const Complex rhs = hadamard_product(bz.zeros, -x, ctx);
    return Sample{"nu=" + nu.text() + " q=" + qd.text() + " x=" + zdesc(x).substr(2), lhs, rhs};
  });

  // j^(1)(z) (-z^2/4;q)_inf = j^(2)(z) for |z| < 2.
  runner.run("bessel-kind1-kind2", S, [&](std::size_t j) {
    const Decimal qd = q_at(j);
    const Decimal nu = nus[(j / grid.qs.size()) % nus.size()];
    const Complex z = sample_point(j, Real(1.5));
    const Complex lhs = qbessel_normalized(1, nu, qd, z, ctx) * qpoch_infinite(-(z * z) / Real(4), qd.value(), ctx).value;
    const Complex rhs = qbessel_normalized(2, nu, qd, z, ctx);
    return Sample{"nu=" + nu.text() + " q=" + qd.text() + " " + zdesc(z), lhs, rhs};
  });

  // Base inversion p -> Q = 1/p; the Q > 1 side is summed from finite
  // products.
  const std::vector<Decimal> inversion_nus{0, 0.5, 1.5};
  for (int relation = 1; relation <= 3; ++relation) {
    runner.run("bessel-inversion-" + std::to_string(relation), S, [&](std::size_t j) {
      const Decimal pd = q_at(j);
      const Decimal nu = inversion_nus[(j / grid.qs.size()) % inversion_nus.size()];
      const Real p = pd.value();
      const Real Q = 1 / p;
      const Real v = nu.value();
      const Real Qnu1 = rpow(Q, v + 1);
      const Complex z = sample_point(j, Real(0.9));
      auto den = [&](std::size_t n) { return qpoch_finite(Q, Q, n) * qpoch_finite(Qnu1, Q, n); };
      auto shrink = [&](std::size_t n) {
        return (1 - rpow(Q, -Real(n + 1))) * (1 - rpow(Q, -(v + Real(n + 1))));
      };
      Complex lhs, rhs;
      if (relation == 1) {
        // j^(1)(z;p) = j^(2)(sqrt(Q) z; Q)
        lhs = qbessel_normalized(1, nu, pd, z, ctx);
        const Complex w2 = Q * z * z;
        const Complex step = -(w2 * rpow(Q, v)) / Real(4);
        const Real zz4 = abs(z * z) / 4;
        rhs = direct_sum([&](std::size_t n) { return rpow(Q, Real(n * n)) * cpow(step, n) / den(n); },
                         [&](std::size_t n) { return zz4 / shrink(n); }, tol);
      } else if (relation == 2) {
        // j^(2)(z;p) = j^(1)(sqrt(Q) z; Q)
        lhs = qbessel_normalized(2, nu, pd, z, ctx);
        const Complex step = -(Q * z * z) / Real(4);
        const Real sm = abs(step);
        rhs = direct_sum([&](std::size_t n) { return cpow(step, n) / den(n); },
                         [&](std::size_t n) {
                           return sm / mp::abs((1 - rpow(Q, Real(n + 1))) * (1 - Qnu1 * rpow(Q, Real(n))));
                         },
                         tol);
      } else {
        // j^(3)(z;p) = j^(3)(Q^{nu/2} z; Q)
        lhs = qbessel_normalized(3, nu, pd, z, ctx);
        const Complex step = -(rpow(Q, v) * z * z) / Real(4);
        const Real sm = abs(step);
        rhs = direct_sum(
            [&](std::size_t n) { return rpow(Q, Real(n * (n + 1) / 2)) * cpow(step, n) / den(n); },
            [&](std::size_t n) {
              return sm * rpow(Q, Real(n + 1)) / mp::abs((1 - rpow(Q, Real(n + 1))) * (1 - Qnu1 * rpow(Q, Real(n))));
            },
            tol);
      }
      return Sample{"nu=" + nu.text() + " p=" + pd.text() + " " + zdesc(z), lhs, rhs};
    });
  }

  // 1A1 with denominator q reduces to the A-family.
  const std::vector<Decimal> ras_as{0.3, -0.5, 2};
  const std::vector<Decimal> ras_alphas{0.5, 1};
  runner.run("ras-reduction", S, [&](std::size_t j) {
    const Decimal qd = q_at(j);
    const Decimal a = ras_as[(j / grid.qs.size()) % ras_as.size()];
    const Decimal alpha = ras_alphas[j % ras_alphas.size()];
    const Complex z = sample_point(j, Real(3));
    RamanujanA spec;
    spec.alpha = alpha;
    spec.a = a;
    spec.q = qd;
    const Complex lhs = evaluate(spec, z, ctx).value;
    const Complex rhs = evaluate(RAS{alpha, qd, {a}, {qd}}, z, ctx).value;
    return Sample{"alpha=" + alpha.text() + " a=" + a.text() + " q=" + qd.text() + " " + zdesc(z), lhs, rhs};
  });

  // rAs at alpha = d/2 with denominators (q, b) and argument (-1/sqrt q)^d z
  // equals r-phi-s, d = s + 1 - r.
  struct PhiCase {
    std::vector<Decimal> a, b;
  };
  const std::vector<PhiCase> phi_cases{{{0.3}, {0.6}}, {{}, {}}, {{0.2, 0.5}, {0.4, 0.7}}, {{}, {0.5}}};
  runner.run("rphis-reduction", S, [&](std::size_t j) {
    const Decimal qd = q_at(j);
    const Real q = qd.value();
    const PhiCase& pc = phi_cases[(j / grid.qs.size()) % phi_cases.size()];
    const long d = static_cast<long>(pc.b.size()) + 1 - static_cast<long>(pc.a.size());
    const Complex z = sample_point(j, Real(2));
    std::vector<Decimal> b{qd};
    b.insert(b.end(), pc.b.begin(), pc.b.end());
    const Decimal alpha = d % 2 == 0 ? Decimal(static_cast<int>(d / 2)) : Decimal(static_cast<double>(d) / 2);
    const Complex w = z * rpow(-1 / mp::sqrt(q), Real(d));
    const Complex lhs = evaluate(RAS{alpha, qd, pc.a, b}, w, ctx).value;
    const Complex rhs = evaluate(RPhiS{qd, pc.a, pc.b}, z, ctx).value;
    return Sample{"d=" + std::to_string(d) + " q=" + qd.text() + " " + zdesc(z), lhs, rhs};
  });

  return rep;
}

}  // namespace qzeros
