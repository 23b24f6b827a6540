#include "qzeros/roots.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "qzeros/errors.hpp"

namespace qzeros {

namespace mp = boost::multiprecision;

std::vector<Complex> ZeroSet::values() const {
  std::vector<Complex> out;
  out.reserve(zeros.size());
  for (const auto& z : zeros) out.push_back(z.value);
  return out;
}

namespace {

Real pi() { return 4 * mp::atan(Real(1)); }

struct HullEdge {
  std::size_t from;
  std::size_t to;
  Real radius;
};

// Upper convex hull of (k, log|c_k|). Edge (i, j) predicts j - i roots of
// modulus about (|c_i| / |c_j|)^(1 / (j - i)).
std::vector<HullEdge> newton_polygon(std::span<const Real> c) {
  struct Point {
    std::size_t k;
    double y;
  };
  std::vector<Point> hull;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    const Point p{k, static_cast<double>(mp::log(mp::abs(c[k])))};
    while (hull.size() >= 2) {
      const Point& o = hull[hull.size() - 2];
      const Point& a = hull.back();
      const double cross = static_cast<double>(a.k - o.k) * (p.y - o.y) - (a.y - o.y) * static_cast<double>(p.k - o.k);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  std::vector<HullEdge> edges;
  for (std::size_t e = 1; e < hull.size(); ++e) {
    const std::size_t i = hull[e - 1].k;
    const std::size_t j = hull[e].k;
    const Real ratio = mp::abs(c[i]) / mp::abs(c[j]);
    edges.push_back({i, j, mp::pow(ratio, Real(1) / Real(static_cast<long>(j - i)))});
  }
  return edges;
}

struct HornerResult {
  Complex p;
  Complex dp;
};

HornerResult horner_with_derivative(std::span<const Real> c, const Complex& z) {
  Complex p(c.back());
  Complex dp(0);
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p *= z;
    p.re += c[k];
  }
  return {p, dp};
}

// sum |c_k| r^k
Real magnitude_sum(std::span<const Real> c, const Real& r) {
  Real acc = mp::abs(c.back());
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * r + mp::abs(c[k]);
  return acc;
}

bool by_real_part(const Complex& a, const Complex& b) {
  if (a.re != b.re) return a.re < b.re;
  return a.im < b.im;
}

std::vector<Complex> aberth(std::span<const Real> c, const PrecisionContext& ctx, const RootOptions& opts) {
  const std::size_t d = c.size() - 1;
  const Real tol = pow2(-static_cast<long>(ctx.bits / 2));
  const Real noise_factor = 4 * Real(static_cast<long>(d + 1)) * ctx.unit_roundoff();
  const Real two_pi = 2 * pi();

  std::vector<Complex> z;
  z.reserve(d);
  const auto edges = newton_polygon(c);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::size_t count = edges[e].to - edges[e].from;
    for (std::size_t t = 0; t < count; ++t) {
      const Real theta = two_pi * Real(static_cast<long>(t)) / Real(static_cast<long>(count)) +
                         two_pi * Real(static_cast<long>(e)) / Real(static_cast<long>(d)) + Real(0.7);
      z.push_back(polar(edges[e].radius, theta));
    }
  }

  std::vector<bool> done(d, false);
  std::size_t remaining = d;
  for (std::size_t sweep = 0; sweep < opts.max_sweeps && remaining > 0; ++sweep) {
    for (std::size_t i = 0; i < d; ++i) {
      if (done[i]) continue;
      const auto [p, dp] = horner_with_derivative(c, z[i]);
      const Real zmag = abs(z[i]);
      if (abs(p) <= noise_factor * magnitude_sum(c, zmag)) {
        done[i] = true;
        --remaining;
        continue;
      }
      if (dp.re == 0 && dp.im == 0) {
        z[i] += Complex(tol * (1 + zmag), tol * (1 + zmag));
        continue;
      }
      const Complex ratio = p / dp;
      Complex repulsion(0);
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        Complex diff = z[i] - z[j];
        if (diff.re == 0 && diff.im == 0) diff = Complex(tol * (1 + zmag), Real(0));
        repulsion += Complex(1) / diff;
      }
      const Complex w = ratio / (Complex(1) - ratio * repulsion);
      z[i] -= w;
      if (abs(w) <= tol * abs(z[i])) {
        done[i] = true;
        --remaining;
      }
    }
  }
  if (remaining > 0) {
    throw ConvergenceError("Aberth iteration did not converge within " + std::to_string(opts.max_sweeps) + " sweeps",
                           z);
  }
  return z;
}

Zero describe_zero(std::span<const Real> c, const Complex& z, const PrecisionContext& ctx) {
  Zero out;
  out.value = z;
  const auto [p, dp] = horner_with_derivative(c, z);
  out.residual = abs(p);
  const Real zmag = abs(z);
  const Real denom = (zmag == 0 ? Real(1) : zmag) * abs(dp);
  out.condition = denom == 0 ? std::numeric_limits<Real>::infinity() : magnitude_sum(c, zmag) / denom;
  out.real = mp::abs(z.im) / (zmag + 1) <= ctx.eps_real;
  return out;
}

int sign_of(const Real& v, const Real& noise) {
  if (mp::abs(v) <= noise) return 0;
  return v > 0 ? 1 : -1;
}

Real bracket_between(const Real& a, const Real& b) {
  if ((a > 0 && b > 0) || (a < 0 && b < 0)) {
    const Real g = mp::sqrt(a * b);
    return a > 0 ? g : -g;
  }
  return (a + b) / 2;
}

// Realness of `zs` on the real axis of f. Zeros within sqrt(eps_real)
// (relative) of each other form a cluster, judged by its centroid: a cluster
// of multiplicity m spreads like u^(1/m) while its centroid stays accurate.
// Across each cluster f must change sign exactly when m is odd.
// A zero of multiplicity m is a simple zero of p^(m-1). Newton on that
// derivative from the cluster centroid recovers the zero to working
// precision; the centroid is kept if the iteration leaves the cluster.
Complex refine_cluster(std::span<const Real> c, std::size_t m, const Complex& centroid, const Real& radius,
                       const PrecisionContext& ctx) {
  if (m < 2 || c.size() <= m) return centroid;
  std::vector<Real> d(c.size() - (m - 1));
  for (std::size_t k = 0; k < d.size(); ++k) {
    Real f(1);
    for (std::size_t j = k + 1; j <= k + m - 1; ++j) f *= Real(static_cast<long>(j));
    d[k] = c[k + m - 1] * f;
  }
  std::vector<Real> dd(d.size() - 1);
  for (std::size_t k = 0; k < dd.size(); ++k) dd[k] = d[k + 1] * Real(static_cast<long>(k + 1));
  const Real u = ctx.unit_roundoff();
  Complex z = centroid;
  for (int it = 0; it < 100; ++it) {
    const Complex slope = polyval(dd, z);
    if (abs(slope) == 0) break;
    const Complex step = polyval(d, z) / slope;
    z = z - step;
    if (abs(z - centroid) > radius) return centroid;
    if (abs(step) <= 4 * u * (1 + abs(z))) break;
  }
  return z;
}

RealnessReport certify_on_axis(const std::vector<Complex>& zs, std::span<const Real> coeffs,
                               const std::function<Real(const Real&)>& eval,
                               const std::function<Real(const Real&)>& noise, const std::optional<Real>& lo_outer,
                               const std::optional<Real>& hi_outer, bool origin_usable, const PrecisionContext& ctx) {
  RealnessReport rep;
  rep.max_imag_ratio = 0;
  if (zs.empty()) {
    rep.all_real = true;
    return rep;
  }

  std::vector<Complex> sorted = zs;
  std::sort(sorted.begin(), sorted.end(), by_real_part);
  struct Group {
    Real center;
    std::size_t multiplicity;
  };
  std::vector<Group> groups;
  const Real cluster_tol = mp::sqrt(ctx.eps_real);
  auto close_group = [&](const Complex& sum, std::size_t count, const Complex& anchor) {
    const Real radius = 2 * cluster_tol * (1 + abs(anchor));
    const Complex centroid =
        refine_cluster(coeffs, count, sum / Real(static_cast<long>(count)), radius, ctx);
    rep.max_imag_ratio = rmax(rep.max_imag_ratio, mp::abs(centroid.im) / (abs(centroid) + 1));
    groups.push_back({centroid.re, count});
  };
  Complex anchor = sorted.front();
  Complex sum = sorted.front();
  std::size_t count = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (abs(sorted[i] - anchor) <= cluster_tol * (1 + abs(anchor))) {
      sum += sorted[i];
      ++count;
      continue;
    }
    close_group(sum, count, anchor);
    anchor = sorted[i];
    sum = sorted[i];
    count = 1;
  }
  close_group(sum, count, anchor);

  const bool all_neg = std::all_of(groups.begin(), groups.end(), [](const Group& g) { return g.center < 0; });
  const bool all_pos = std::all_of(groups.begin(), groups.end(), [](const Group& g) { return g.center > 0; });
  const bool origin_lo = all_pos && origin_usable;
  const bool origin_hi = all_neg && origin_usable;

  std::vector<Real> brackets;
  const Real& first = groups.front().center;
  const Real& last = groups.back().center;
  brackets.push_back(origin_lo ? Real(0) : lo_outer ? *lo_outer : first - (1 + mp::abs(first)));
  for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
    brackets.push_back(bracket_between(groups[g].center, groups[g + 1].center));
  }
  brackets.push_back(origin_hi ? Real(0) : hi_outer ? *hi_outer : last + (1 + mp::abs(last)));

  std::vector<int> signs;
  signs.reserve(brackets.size());
  for (const auto& t : brackets) signs.push_back(sign_of(eval(t), noise(t)));

  for (std::size_t g = 0; g < groups.size(); ++g) {
    const int left = signs[g];
    const int right = signs[g + 1];
    const bool changed = left * right < 0;
    if (changed) ++rep.sign_change_count;
    const bool odd = groups[g].multiplicity % 2 == 1;
    if (left != 0 && right != 0 && changed == odd) rep.certified_count += groups[g].multiplicity;
    if (groups[g].multiplicity > 1) rep.clustered_count += groups[g].multiplicity;
  }

  const bool imag_ok = rep.max_imag_ratio <= ctx.eps_real;
  const bool brackets_ok = rep.certified_count == zs.size();
  if (imag_ok != brackets_ok) {
    throw InconsistencyError("realness checks disagree: imaginary parts " + std::string(imag_ok ? "pass" : "fail") +
                             ", sign brackets account for " + std::to_string(rep.certified_count) + " of " +
                             std::to_string(zs.size()) + " zeros");
  }
  rep.all_real = imag_ok && brackets_ok;
  rep.all_negative = rep.all_real && all_neg && origin_hi;
  rep.all_positive = rep.all_real && all_pos && origin_lo;
  return rep;
}

std::span<const Real> active_coefficients(const CoefficientSequence& seq) {
  std::size_t deg = seq.coeffs.empty() ? 0 : seq.coeffs.size() - 1;
  while (deg > 0 && seq.coeffs[deg] == 0) --deg;
  return std::span<const Real>(seq.coeffs.data(), seq.coeffs.empty() ? 0 : deg + 1);
}

}  // namespace

ZeroSet find_poly_roots(const CoefficientSequence& seq, const PrecisionContext& ctx, RootOptions opts) {
  PrecisionScope scope(ctx);
  std::vector<Real> full;
  for (const auto& c : active_coefficients(seq)) full.push_back(lift(c));
  if (full.size() < 2) throw DomainError("root finding needs degree >= 1 with nonzero leading coefficient");

  std::size_t zero_roots = 0;
  while (full[zero_roots] == 0) ++zero_roots;
  const std::span<const Real> reduced(full.data() + zero_roots, full.size() - zero_roots);

  std::vector<Complex> roots(zero_roots, Complex(0));
  if (reduced.size() >= 2) {
    const auto found = aberth(reduced, ctx, opts);
    roots.insert(roots.end(), found.begin(), found.end());
  }
  std::sort(roots.begin(), roots.end(), by_real_part);

  ZeroSet out;
  out.ordering = ZeroOrdering::ByRealPart;
  out.spec = seq.source;
  out.precision_bits = ctx.bits;
  for (const auto& z : roots) out.zeros.push_back(describe_zero(full, z, ctx));
  return out;
}

RealnessReport certify_real_roots(const CoefficientSequence& seq, const ZeroSet& zeros, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  std::vector<Real> c;
  for (const auto& v : active_coefficients(seq)) c.push_back(lift(v));
  if (c.size() < 2) throw DomainError("realness certification needs degree >= 1");
  if (zeros.zeros.size() != c.size() - 1) {
    throw DomainError("zero set size does not match the polynomial degree");
  }
  const Real noise_factor = 8 * Real(static_cast<long>(c.size())) * ctx.unit_roundoff();
  auto eval = [&](const Real& t) { return polyval(c, t); };
  auto noise = [&](const Real& t) { return noise_factor * magnitude_sum(c, mp::abs(t)); };
  std::vector<Complex> zs;
  for (const auto& z : zeros.zeros) zs.push_back(lift(z.value));
  return certify_on_axis(zs, c, eval, noise, std::nullopt, std::nullopt, c.front() != 0, ctx);
}

namespace {

// Newton-polygon estimate of the modulus of the `index`-th zero (1-based).
Real estimated_modulus(std::span<const Real> c, std::size_t index) {
  const auto edges = newton_polygon(c);
  if (edges.empty()) return Real(1);
  for (const auto& e : edges) {
    if (e.to >= index) return e.radius;
  }
  return edges.back().radius;
}

}  // namespace

ZeroSet locate_entire_zeros(const SeriesSpec& spec, std::size_t K, const PrecisionContext& ctx, EntireOptions opts) {
  if (K < 1) throw DomainError("zero count K must be at least 1");
  if (terminating_degree(spec)) throw DomainError("spec is a polynomial; use find_poly_roots");
  PrecisionScope scope(ctx);

  const auto probe = coefficients(spec, 2 * K + 8, ctx);
  Real R = 2 * estimated_modulus(probe.coeffs, K + 1);
  const Real margin(opts.guard_margin);
  const Real two_pi = 2 * pi();
  std::string last_issue = "no attempt made";

  for (std::size_t attempt = 0; attempt < opts.max_attempts; ++attempt) {
    const TruncationCertificate cert = truncation_degree(spec, R, ctx, opts.n_max);
    const std::size_t N = std::max<std::size_t>(cert.N, K + 1);
    const auto seq = coefficients(spec, N + opts.delta_n, ctx);
    const std::vector<Real> pN(seq.coeffs.begin(), seq.coeffs.begin() + static_cast<long>(N) + 1);
    const Real& T = cert.tail;

    const ZeroSet roots_n = find_poly_roots(CoefficientSequence::from_values(pN, ctx.bits), ctx);
    std::vector<Complex> inside;
    for (const auto& z : roots_n.zeros) {
      if (abs(z.value) < R) inside.push_back(z.value);
    }
    if (inside.size() < K + 1) {
      last_issue = "disk holds " + std::to_string(inside.size()) + " zeros, need " + std::to_string(K + 1);
      R *= 2;
      continue;
    }

    Real guard_min = std::numeric_limits<Real>::infinity();
    for (std::size_t j = 0; j < opts.guard_samples; ++j) {
      const Real theta = two_pi * (Real(static_cast<long>(j)) + Real(0.5)) / Real(static_cast<long>(opts.guard_samples));
      guard_min = rmin(guard_min, abs(polyval(pN, polar(R, theta))));
    }
    if (!(guard_min > margin * T)) {
      last_issue = "Rouche guard failed on |z| = R";
      R *= Real(1.25);
      continue;
    }

    std::sort(inside.begin(), inside.end(), [](const Complex& a, const Complex& b) { return abs(a) < abs(b); });
    Real separation_min = std::numeric_limits<Real>::infinity();
    for (std::size_t i = 0; i + 1 < inside.size() && i <= K; ++i) {
      const Complex mid = (inside[i] + inside[i + 1]) / Real(2);
      separation_min = rmin(separation_min, abs(polyval(pN, mid)));
    }
    if (!(separation_min > T)) {
      throw GuardError("zeros of the truncation are not separated above the tail bound; raise precision");
    }

    const std::vector<Complex> chosen(inside.begin(), inside.begin() + static_cast<long>(K));
    const ZeroSet roots_long = find_poly_roots(CoefficientSequence::from_values(seq.coeffs, ctx.bits), ctx);
    Real delta(0);
    for (const auto& z : chosen) {
      Real best = std::numeric_limits<Real>::infinity();
      for (const auto& w : roots_long.zeros) best = rmin(best, abs(w.value - z));
      delta = rmax(delta, best / abs(z));
    }
    if (!(delta <= ctx.eps_real)) {
      throw GuardError("zeros moved by " + to_decimal(delta, 6) + " (relative) when N grew by " +
                       std::to_string(opts.delta_n) + "; raise precision or N");
    }

    // Outer brackets from the nearest real in-disk neighbours.
    std::optional<Real> lo_outer, hi_outer;
    Real lo_chosen = chosen.front().re, hi_chosen = chosen.front().re;
    for (const auto& z : chosen) {
      lo_chosen = rmin(lo_chosen, z.re);
      hi_chosen = rmax(hi_chosen, z.re);
    }
    std::optional<Real> lo_neighbor, hi_neighbor;
    for (std::size_t i = K; i < inside.size(); ++i) {
      const Complex& w = inside[i];
      if (mp::abs(w.im) / (abs(w) + 1) > ctx.eps_real) continue;
      if (w.re < lo_chosen && (!lo_neighbor || w.re > *lo_neighbor)) lo_neighbor = w.re;
      if (w.re > hi_chosen && (!hi_neighbor || w.re < *hi_neighbor)) hi_neighbor = w.re;
    }
    lo_outer = lo_neighbor ? bracket_between(*lo_neighbor, lo_chosen) : lo_chosen - (R - mp::abs(lo_chosen)) / 2;
    hi_outer = hi_neighbor ? bracket_between(hi_chosen, *hi_neighbor) : hi_chosen + (R - mp::abs(hi_chosen)) / 2;

    const Real noise_factor = 8 * Real(static_cast<long>(N + 1)) * ctx.unit_roundoff();
    auto eval = [&](const Real& t) { return polyval(pN, t); };
    auto noise = [&](const Real& t) { return margin * T + noise_factor * magnitude_sum(pN, mp::abs(t)); };

    ZeroSet out;
    out.ordering = ZeroOrdering::ByModulus;
    out.spec = spec;
    out.precision_bits = ctx.bits;
    for (const auto& z : chosen) {
      Zero zero = describe_zero(pN, z, ctx);
      zero.residual += T;
      out.zeros.push_back(std::move(zero));
    }
    out.realness = certify_on_axis(chosen, pN, eval, noise, lo_outer, hi_outer, true, ctx);
    out.certificate = EntireCertificate{N,        R,     T, guard_min, opts.guard_samples, separation_min,
                                        delta,    opts.delta_n, inside.size()};
    return out;
  }
  throw GuardError("could not certify " + std::to_string(K) + " zeros: " + last_issue);
}

Complex hadamard_product(const ZeroSet& zeros, const Complex& z_in, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const Complex z = lift(z_in);
  Complex prod(1);
  for (const auto& zero : zeros.zeros) prod *= Complex(1) - z / lift(zero.value);
  return prod;
}

Complex hadamard_reconstruct(const SeriesSpec& spec, std::size_t K, const Complex& z, const PrecisionContext& ctx) {
  return hadamard_product(locate_entire_zeros(spec, K, ctx), z, ctx);
}

}  // namespace qzeros
