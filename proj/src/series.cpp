#include "qzeros/series.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "qzeros/errors.hpp"

namespace qzeros {

namespace mp = boost::multiprecision;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Real ipow(const Real& x, long e) { return mp::pow(x, Real(e)); }

Real infinity() { return std::numeric_limits<Real>::infinity(); }

Real base_in_unit_interval(const Decimal& q, const char* what) {
  Real v = q.value();
  if (!(v > 0 && v < 1)) {
    throw DomainError(std::string(what) + " must satisfy 0 < q < 1 (got " + q.text() + ")");
  }
  return v;
}

Real nonnegative_alpha(const Decimal& alpha) {
  Real v = alpha.value();
  if (v < 0) throw DomainError("alpha must be >= 0 (got " + alpha.text() + ")");
  return v;
}

Real positive_beta(const Decimal& beta) {
  Real v = beta.value();
  if (!(v > 0)) throw DomainError("beta must be > 0 (got " + beta.text() + ")");
  return v;
}

Real nonzero_denominator(Real d) {
  if (d == 0) throw DomainError("denominator parameter produces a vanishing factor");
  return d;
}

// Term-ratio recurrence for one family, materialized at the current precision.
struct Recurrence {
  std::function<Real(std::size_t)> ratio;
  std::function<Real(std::size_t)> bound;
  std::optional<std::size_t> degree;
};

Recurrence make_recurrence(const RamanujanA& s) {
  const Real alpha = nonnegative_alpha(s.alpha);
  const Real q = base_in_unit_interval(s.q, "q");
  const Real qa = mp::pow(q, alpha);
  Recurrence rec;
  if (s.terminating_n) {
    const long n = *s.terminating_n;
    rec.degree = static_cast<std::size_t>(n);
    rec.ratio = [=](std::size_t k) -> Real {
      const long kk = static_cast<long>(k);
      if (kk == n) return Real(0);
      return (1 - ipow(q, kk - n)) * ipow(qa, 2 * kk + 1) / (1 - ipow(q, kk + 1));
    };
    rec.bound = [=](std::size_t k) -> Real {
      const long kk = static_cast<long>(k);
      if (kk >= n) return Real(0);
      return (1 + ipow(q, kk - n)) * ipow(qa, 2 * kk + 1) / (1 - ipow(q, kk + 1));
    };
    return rec;
  }
  const Real a = s.a.value();
  rec.ratio = [=](std::size_t k) -> Real {
    const long kk = static_cast<long>(k);
    return (1 - a * ipow(q, kk)) * ipow(qa, 2 * kk + 1) / (1 - ipow(q, kk + 1));
  };
  rec.bound = [=](std::size_t k) -> Real {
    const long kk = static_cast<long>(k);
    return (1 + mp::abs(a) * ipow(q, kk)) * ipow(qa, 2 * kk + 1) / (1 - ipow(q, kk + 1));
  };
  return rec;
}

Recurrence make_recurrence(const GeneralizedQ& s) {
  struct Term {
    long n;
    Real q;
  };
  struct Shift {
    Real a, q;
  };
  struct Den {
    Real qbeta, q;
  };
  const Real alpha = nonnegative_alpha(s.alpha);
  const Real q = base_in_unit_interval(s.q, "q");
  const Real qa = mp::pow(q, alpha);
  std::vector<Term> terms;
  std::vector<Shift> shifts;
  std::vector<Den> dens;
  for (const auto& t : s.terminating) terms.push_back({static_cast<long>(t.n), base_in_unit_interval(t.q, "q_j")});
  for (const auto& f : s.shifted) shifts.push_back({f.a.value(), base_in_unit_interval(f.q, "q_j")});
  for (const auto& d : s.denominators) {
    const Real qr = base_in_unit_interval(d.q, "q_r");
    dens.push_back({mp::pow(qr, positive_beta(d.beta)), qr});
  }
  const int sign = (terms.size() % 2 == 0) ? 1 : -1;

  Recurrence rec;
  if (!terms.empty()) {
    long deg = terms.front().n;
    for (const auto& t : terms) deg = std::min(deg, t.n);
    rec.degree = static_cast<std::size_t>(deg);
  }
  rec.ratio = [=](std::size_t k) -> Real {
    const long kk = static_cast<long>(k);
    Real r = ipow(qa, 2 * kk + 1);
    for (const auto& t : terms) {
      if (kk == t.n) return Real(0);
      r *= (1 - ipow(t.q, kk - t.n)) / (1 - ipow(t.q, kk + 1));
    }
    for (const auto& f : shifts) r *= (1 + f.a * ipow(f.q, kk)) / (1 - ipow(f.q, kk + 1));
    for (const auto& d : dens) {
      const Real qk = ipow(d.q, kk);
      r /= (1 - qk * d.q) * (1 - d.qbeta * qk);
    }
    return sign * r;
  };
  rec.bound = [=](std::size_t k) -> Real {
    const long kk = static_cast<long>(k);
    Real r = ipow(qa, 2 * kk + 1);
    for (const auto& t : terms) {
      if (kk >= t.n) return Real(0);
      r *= (1 + ipow(t.q, kk - t.n)) / (1 - ipow(t.q, kk + 1));
    }
    for (const auto& f : shifts) r *= (1 + mp::abs(f.a) * ipow(f.q, kk)) / (1 - ipow(f.q, kk + 1));
    for (const auto& d : dens) {
      const Real qk = ipow(d.q, kk);
      r /= (1 - qk * d.q) * (1 - d.qbeta * qk);
    }
    return r;
  };
  return rec;
}

Recurrence make_recurrence(const LimitPoly& s) {
  if (s.n.empty()) throw DomainError("limit polynomial needs at least one n_j");
  std::vector<Real> betas;
  for (const auto& b : s.beta) betas.push_back(positive_beta(b));
  const std::vector<long> ns(s.n.begin(), s.n.end());
  const long power = static_cast<long>(ns.size() + betas.size());
  const int sign = (ns.size() % 2 == 0) ? 1 : -1;
  Recurrence rec;
  rec.degree = static_cast<std::size_t>(*std::min_element(ns.begin(), ns.end()));
  rec.ratio = [=](std::size_t k) -> Real {
    const long kk = static_cast<long>(k);
    Real num(sign);
    for (long n : ns) num *= kk - n;
    if (num == 0) return num;
    Real den = ipow(Real(kk + 1), power);
    for (const auto& b : betas) den *= b + kk;
    return num / den;
  };
  rec.bound = [=](std::size_t k) -> Real {
    const long kk = static_cast<long>(k);
    Real num(1);
    for (long n : ns) {
      if (kk >= n) return Real(0);
      num *= n;
    }
    Real den = ipow(Real(kk + 1), power);
    for (const auto& b : betas) den *= b + kk;
    return num / den;
  };
  return rec;
}

Recurrence make_recurrence(const LimitEntire& s) {
  std::vector<Real> betas;
  for (const auto& b : s.beta) betas.push_back(positive_beta(b));
  const long power = static_cast<long>(s.m + betas.size());
  Recurrence rec;
  rec.ratio = [=](std::size_t k) -> Real {
    const long kk = static_cast<long>(k);
    Real den = ipow(Real(kk + 1), power);
    for (const auto& b : betas) den *= b + kk;
    return 1 / den;
  };
  rec.bound = rec.ratio;
  return rec;
}

Recurrence make_recurrence(const RAS& s) {
  const Real alpha = nonnegative_alpha(s.alpha);
  const Real q = base_in_unit_interval(s.q, "q");
  const Real qa = mp::pow(q, alpha);
  std::vector<Real> as, bs;
  for (const auto& a : s.a) as.push_back(a.value());
  for (const auto& b : s.b) bs.push_back(b.value());
  Recurrence rec;
  rec.ratio = [=](std::size_t k) -> Real {
    const long kk = static_cast<long>(k);
    const Real qk = ipow(q, kk);
    Real r = ipow(qa, 2 * kk + 1);
    for (const auto& a : as) r *= 1 - a * qk;
    for (const auto& b : bs) r /= nonzero_denominator(1 - b * qk);
    return r;
  };
  rec.bound = [=](std::size_t k) -> Real {
    const long kk = static_cast<long>(k);
    const Real qk = ipow(q, kk);
    Real r = ipow(qa, 2 * kk + 1);
    for (const auto& a : as) r *= 1 + mp::abs(a) * qk;
    for (const auto& b : bs) {
      const Real d = 1 - mp::abs(b) * qk;
      if (d <= 0) return infinity();
      r /= d;
    }
    return r;
  };
  return rec;
}

Recurrence make_recurrence(const RPhiS& s) {
  const Real q = base_in_unit_interval(s.q, "q");
  std::vector<Real> as, bs;
  for (const auto& a : s.a) as.push_back(a.value());
  for (const auto& b : s.b) bs.push_back(b.value());
  const long excess = static_cast<long>(bs.size()) + 1 - static_cast<long>(as.size());
  const int sign = (excess % 2 == 0) ? 1 : -1;
  Recurrence rec;
  rec.ratio = [=](std::size_t k) -> Real {
    const long kk = static_cast<long>(k);
    const Real qk = ipow(q, kk);
    Real r = sign * ipow(q, kk * excess) / (1 - qk * q);
    for (const auto& a : as) r *= 1 - a * qk;
    for (const auto& b : bs) r /= nonzero_denominator(1 - b * qk);
    return r;
  };
  rec.bound = [=](std::size_t k) -> Real {
    // sup over j >= k only decreases when the q-power does not grow.
    if (excess < 0) return infinity();
    const long kk = static_cast<long>(k);
    const Real qk = ipow(q, kk);
    Real r = ipow(q, kk * excess) / (1 - qk * q);
    for (const auto& a : as) r *= 1 + mp::abs(a) * qk;
    for (const auto& b : bs) {
      const Real d = 1 - mp::abs(b) * qk;
      if (d <= 0) return infinity();
      r /= d;
    }
    return r;
  };
  return rec;
}

Recurrence make_recurrence(const QBessel& s) {
  if (s.kind < 1 || s.kind > 3) throw DomainError("q-Bessel kind must be 1, 2 or 3");
  const Real nu = s.nu.value();
  if (!(nu > -1)) throw DomainError("q-Bessel order must satisfy nu > -1 (got " + s.nu.text() + ")");
  const Real q = base_in_unit_interval(s.q, "q");
  const Real qnu = mp::pow(q, nu);
  const Real qnu1 = qnu * q;
  const int kind = s.kind;
  auto magnitude = [=](std::size_t k) -> Real {
    const long kk = static_cast<long>(k);
    const Real qk = ipow(q, kk);
    Real f;
    switch (kind) {
      case 1: f = Real(1) / 4; break;
      case 2: f = ipow(q, 2 * kk + 1) * qnu / 4; break;
      default: f = qk * q / 4; break;
    }
    return f / ((1 - qk * q) * (1 - qnu1 * qk));
  };
  Recurrence rec;
  rec.ratio = [=](std::size_t k) -> Real { return -magnitude(k); };
  rec.bound = magnitude;
  return rec;
}

Recurrence make_recurrence(const SeriesSpec& spec) {
  return std::visit([](const auto& s) { return make_recurrence(s); }, spec);
}

}  // namespace

std::string family_name(const SeriesSpec& spec) {
  return std::visit(Overloaded{
                        [](const RamanujanA&) -> std::string { return "ramanujan-a"; },
                        [](const GeneralizedQ&) -> std::string { return "generalized-q"; },
                        [](const LimitPoly&) -> std::string { return "limit-poly"; },
                        [](const LimitEntire&) -> std::string { return "limit-entire"; },
                        [](const RAS&) -> std::string { return "ras"; },
                        [](const RPhiS&) -> std::string { return "rphis"; },
                        [](const QBessel& b) -> std::string { return "qbessel" + std::to_string(b.kind); },
                    },
                    spec);
}

void validate(const SeriesSpec& spec) {
  PrecisionScope scope(128);
  (void)make_recurrence(spec);
}

std::optional<std::size_t> terminating_degree(const SeriesSpec& spec) {
  PrecisionScope scope(128);
  return make_recurrence(spec).degree;
}

CoefficientSequence CoefficientSequence::from_values(std::vector<Real> values, unsigned precision_bits) {
  CoefficientSequence seq;
  seq.coeffs = std::move(values);
  seq.terminating = true;
  seq.precision_bits = precision_bits;
  for (std::size_t k = seq.coeffs.size(); k-- > 0;) {
    if (seq.coeffs[k] != 0) {
      seq.degree = k;
      break;
    }
  }
  if (!seq.degree && !seq.coeffs.empty()) seq.degree = 0;
  return seq;
}

CoefficientSequence coefficients(const SeriesSpec& spec, std::size_t N, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const Recurrence rec = make_recurrence(spec);
  CoefficientSequence seq;
  seq.source = spec;
  seq.precision_bits = ctx.bits;
  seq.degree = rec.degree;
  seq.terminating = rec.degree.has_value();
  seq.coeffs.reserve(N + 1);
  seq.coeffs.emplace_back(1);
  bool ended = false;
  for (std::size_t k = 0; k < N; ++k) {
    if (ended) {
      seq.coeffs.emplace_back(0);
      continue;
    }
    Real next = seq.coeffs.back() * rec.ratio(k);
    if (next == 0) {
      ended = true;
      if (!seq.degree) {
        seq.degree = k;
        seq.terminating = true;
      }
    }
    seq.coeffs.push_back(std::move(next));
  }
  return seq;
}

Complex polyval(std::span<const Real> coeffs, const Complex& z) {
  if (coeffs.empty()) return Complex(0);
  Complex acc(coeffs.back());
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    acc *= z;
    acc.re += coeffs[k];
  }
  return acc;
}

Real polyval(std::span<const Real> coeffs, const Real& x) {
  if (coeffs.empty()) return Real(0);
  Real acc = coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

Evaluation evaluate(const SeriesSpec& spec, const Complex& z_in, const PrecisionContext& ctx, std::size_t n_max) {
  PrecisionScope scope(ctx);
  const Complex z = lift(z_in);
  const Recurrence rec = make_recurrence(spec);
  const Real R = abs(z);

  std::vector<Real> coeffs{Real(1)};
  Complex partial(1);
  Complex power(1);
  Real abs_term(1);   // |c_N| R^N
  Real abs_sum(1);    // sum |c_k| R^k, for the rounding bound
  Real tail(0);
  std::size_t N = 0;
  while (true) {
    if (rec.degree && N == *rec.degree) break;
    if (R == 0) break;
    const Real rho = rec.bound(N) * R;
    if (rho < 1) {
      tail = abs_term * rho / (1 - rho);
      if (tail <= ctx.eps_id * rmax(Real(1), abs(partial))) break;
    }
    if (N >= n_max) {
      throw ConvergenceError("series evaluation: ratio bound < 1 not established within " + std::to_string(n_max) +
                             " terms");
    }
    const Real r = rec.ratio(N);
    if (r == 0) {
      tail = 0;
      break;
    }
    coeffs.push_back(coeffs.back() * r);
    ++N;
    power *= z;
    partial += coeffs.back() * power;
    abs_term = mp::abs(coeffs.back()) * mp::pow(R, Real(static_cast<long>(N)));
    abs_sum += abs_term;
  }
  Evaluation out;
  out.value = polyval(coeffs, z);
  const Real rounding = 4 * Real(static_cast<long>(N + 1)) * ctx.unit_roundoff() * abs_sum;
  out.cert = TruncationCertificate{N, R, tail + rounding};
  return out;
}

TruncationCertificate truncation_degree(const SeriesSpec& spec, const Real& R_in, const PrecisionContext& ctx,
                                        std::size_t n_max) {
  PrecisionScope scope(ctx);
  const Real R = lift(R_in);
  if (!(R > 0)) throw DomainError("truncation radius must be positive");
  const Recurrence rec = make_recurrence(spec);
  if (rec.degree) return {*rec.degree, R, Real(0)};

  Real coeff(1);
  for (std::size_t N = 0;; ++N) {
    if (N % 8 == 0) {
      const Real rho = rec.bound(N) * R;
      if (rho < 1) {
        const Real tail = mp::abs(coeff) * mp::pow(R, Real(static_cast<long>(N))) * rho / (1 - rho);
        if (tail <= ctx.eps_id) return {N, R, tail};
      }
    }
    if (N >= n_max) {
      throw ConvergenceError("truncation degree: ratio bound < 1 not established within " + std::to_string(n_max) +
                             " terms");
    }
    const Real r = rec.ratio(N);
    if (r == 0) return {N, R, Real(0)};
    coeff *= r;
  }
}

Complex qbessel_normalized(int kind, const Decimal& nu, const Decimal& q, const Complex& z,
                           const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const Complex zz = lift(z);
  return evaluate(QBessel{kind, nu, q}, zz * zz, ctx).value;
}

namespace {

struct LimitShape {
  bool polynomial;
  long scaling;
};

LimitShape check_limit_shape(const GeneralizedQ& spec) {
  const Real q = base_in_unit_interval(spec.q, "q");
  auto same = [&](const Decimal& b) {
    if (b.value() != q) throw DomainError("q-limit scaling requires every base to equal q");
  };
  for (const auto& t : spec.terminating) same(t.q);
  for (const auto& f : spec.shifted) same(f.q);
  for (const auto& d : spec.denominators) same(d.q);
  const long ell = static_cast<long>(spec.denominators.size());
  if (!spec.terminating.empty()) {
    if (!spec.shifted.empty()) throw DomainError("polynomial q-limit takes no shifted factors");
    return {true, 2 * ell};
  }
  for (const auto& f : spec.shifted) {
    if (f.a.value() != 0) throw DomainError("entire q-limit requires shifted factors with a = 0");
  }
  return {false, static_cast<long>(spec.shifted.size()) + 2 * ell};
}

}  // namespace

CoefficientSequence scaled_limit_coefficients(const GeneralizedQ& spec, std::size_t N, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const LimitShape shape = check_limit_shape(spec);
  CoefficientSequence seq = coefficients(spec, N, ctx);
  const Real step = ipow(1 - spec.q.value(), shape.scaling);
  Real scale(1);
  for (auto& c : seq.coeffs) {
    c *= scale;
    scale *= step;
  }
  return seq;
}

SeriesSpec limit_target(const GeneralizedQ& spec) {
  PrecisionScope scope(128);
  const LimitShape shape = check_limit_shape(spec);
  std::vector<Decimal> betas;
  for (const auto& d : spec.denominators) betas.push_back(d.beta);
  if (shape.polynomial) {
    LimitPoly p;
    for (const auto& t : spec.terminating) p.n.push_back(t.n);
    p.beta = std::move(betas);
    return p;
  }
  return LimitEntire{static_cast<unsigned>(spec.shifted.size()), std::move(betas)};
}

}  // namespace qzeros
