#include "qzeros/pfcheck.hpp"

#include <cstdint>
#include <cstdio>
#include <unordered_map>

#include "qzeros/errors.hpp"
#include "qzeros/roots.hpp"

namespace qzeros {

namespace mp = boost::multiprecision;

namespace {

double binomial(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// Lexicographic k-subsets of {0..n-1} as bitmasks.
std::vector<std::uint32_t> subsets(std::size_t n, std::size_t k) {
  std::vector<std::uint32_t> out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::uint32_t mask = 0;
    for (auto i : idx) mask |= 1u << i;
    out.push_back(mask);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<std::size_t> members(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

void require_nonnegative(const CoefficientSequence& seq, const char* what) {
  for (const auto& c : seq.coeffs) {
    if (c < 0) throw DomainError(std::string(what) + " requires nonnegative entries");
  }
}

}  // namespace

std::string sequence_fingerprint(const CoefficientSequence& seq) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ull;
    }
    h ^= 0xff;
    h *= 0x100000001b3ull;
  };
  for (const auto& c : seq.coeffs) feed(to_decimal(c));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

MinorReport toeplitz_minors(const CoefficientSequence& seq, std::size_t window, std::size_t max_order,
                            const PrecisionContext& ctx, MinorOptions opts) {
  if (window == 0 || window > 14) throw DomainError("window must be in 1..14");
  if (max_order == 0 || max_order > 5) throw DomainError("minor order must be in 1..5");
  if (window > seq.size()) throw DomainError("window exceeds sequence length");
  if (max_order > window) max_order = window;
  const double cost = binomial(window, max_order) * binomial(window, max_order);
  if (cost > opts.budget) {
    throw CostGuardError("C(" + std::to_string(window) + "," + std::to_string(max_order) + ")^2 = " +
                         std::to_string(static_cast<long long>(cost)) + " exceeds the minor budget");
  }

  PrecisionScope scope(ctx);
  std::vector<Real> a;
  for (const auto& c : seq.coeffs) a.push_back(lift(c));
  auto entry = [&](std::size_t i, std::size_t j) -> const Real& {
    static const Real zero(0);
    return j >= i ? a[j - i] : zero;
  };

  MinorReport rep;
  rep.window = window;
  rep.max_order = max_order;
  rep.fingerprint = sequence_fingerprint(seq);
  rep.min_minor = std::numeric_limits<Real>::infinity();
  const Real floor = -lift(ctx.eps_id);

  // Order-k minors by expansion along the first row into order-(k-1) minors.
  std::unordered_map<std::uint64_t, Real> previous;
  for (std::size_t k = 1; k <= max_order; ++k) {
    std::unordered_map<std::uint64_t, Real> current;
    const auto masks = subsets(window, k);
    current.reserve(masks.size() * masks.size());
    for (auto rmask : masks) {
      const auto rows = members(rmask);
      const std::uint32_t rest = rmask & ~(1u << rows.front());
      for (auto cmask : masks) {
        Real det(0);
        if (k == 1) {
          det = entry(rows.front(), members(cmask).front());
        } else {
          const auto cols = members(cmask);
          for (std::size_t t = 0; t < k; ++t) {
            const Real& e = entry(rows.front(), cols[t]);
            if (e == 0) continue;
            const std::uint64_t key = (static_cast<std::uint64_t>(rest) << 32) | (cmask & ~(1u << cols[t]));
            const Real term = e * previous.at(key);
            if (t % 2 == 0) {
              det += term;
            } else {
              det -= term;
            }
          }
        }
        ++rep.minors_checked;
        if (det < rep.min_minor) rep.min_minor = det;
        if (!rep.violation && det < floor) rep.violation = MinorViolation{rows, members(cmask), det};
        current.emplace((static_cast<std::uint64_t>(rmask) << 32) | cmask, std::move(det));
      }
    }
    previous = std::move(current);
  }
  rep.pf_consistent = !rep.violation.has_value();
  return rep;
}

bool pf_finite_via_roots(const CoefficientSequence& seq, const PrecisionContext& ctx) {
  require_nonnegative(seq, "PF root test");
  std::size_t lo = 0;
  while (lo < seq.size() && seq.coeffs[lo] == 0) ++lo;
  if (lo == seq.size()) throw DomainError("PF root test needs a nonzero entry");
  std::size_t hi = seq.size() - 1;
  while (seq.coeffs[hi] == 0) --hi;
  if (hi == lo) return true;
  // Zeros at the origin are nonpositive; only the reduced polynomial matters.
  std::vector<Real> reduced(seq.coeffs.begin() + static_cast<long>(lo), seq.coeffs.begin() + static_cast<long>(hi) + 1);
  const auto poly = CoefficientSequence::from_values(std::move(reduced), ctx.bits);
  const ZeroSet zeros = find_poly_roots(poly, ctx);
  const RealnessReport rep = certify_real_roots(poly, zeros, ctx);
  return rep.all_real && rep.all_negative;
}

std::string closure_name(ClosureKind kind) {
  switch (kind) {
    case ClosureKind::Hadamard:
      return "hadamard";
    case ClosureKind::DivideFactorial:
      return "divide_factorial";
    case ClosureKind::FactorialHadamard:
      return "factorial_hadamard";
  }
  return "unknown";
}

CoefficientSequence closure_transform(ClosureKind kind, const CoefficientSequence& a,
                                      const std::optional<CoefficientSequence>& b, const PrecisionContext& ctx) {
  require_nonnegative(a, closure_name(kind).c_str());
  const bool binary = kind != ClosureKind::DivideFactorial;
  if (binary) {
    if (!b) throw DomainError(closure_name(kind) + " needs a second sequence");
    require_nonnegative(*b, closure_name(kind).c_str());
    if (b->size() != a.size()) {
      throw DomainError("sequence lengths differ: " + std::to_string(a.size()) + " vs " + std::to_string(b->size()));
    }
  }
  PrecisionScope scope(ctx);
  std::vector<Real> out;
  out.reserve(a.size());
  Real factorial(1);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k > 0) factorial *= Real(static_cast<long>(k));
    const Real ak = lift(a.coeffs[k]);
    switch (kind) {
      case ClosureKind::Hadamard:
        out.push_back(ak * b->coeffs[k]);
        break;
      case ClosureKind::DivideFactorial:
        out.push_back(ak / factorial);
        break;
      case ClosureKind::FactorialHadamard:
        out.push_back(factorial * ak * b->coeffs[k]);
        break;
    }
  }
  return CoefficientSequence::from_values(std::move(out), ctx.bits);
}

RatioReport turan_ratios(const CoefficientSequence& seq, const PrecisionContext& ctx) {
  require_nonnegative(seq, "Turan ratios");
  PrecisionScope scope(ctx);
  RatioReport rep;
  rep.fingerprint = sequence_fingerprint(seq);
  rep.min_ratio = std::numeric_limits<Real>::infinity();
  for (std::size_t n = 1; n + 1 < seq.size(); ++n) {
    const Real den = lift(seq.coeffs[n + 1]) * seq.coeffs[n - 1];
    if (den == 0) {
      rep.skipped.push_back(n);
      continue;
    }
    const Real c = lift(seq.coeffs[n]);
    Real ratio = c * c / den;
    rep.min_ratio = rmin(rep.min_ratio, ratio);
    rep.indices.push_back(n);
    rep.ratios.push_back(std::move(ratio));
  }
  rep.passes_4 = !rep.ratios.empty() && rep.min_ratio >= 4 - lift(ctx.eps_id);
  return rep;
}

ConditionCheck condition_310(const Decimal& alpha, const Decimal& q, const std::vector<Decimal>& as,
                             const std::vector<Decimal>& bs, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const Real al = alpha.value();
  const Real qq = q.value();
  if (!(al > 0)) throw DomainError("alpha must be positive");
  if (!(qq > 0 && qq < 1)) throw DomainError("q must lie in (0, 1)");
  ConditionCheck out;
  out.lhs = Real(1);
  for (const auto& a : as) {
    const Real v = a.value();
    if (!(v > 0 && v < 1)) throw DomainError("numerator parameter " + a.text() + " must lie in (0, 1)");
    out.lhs *= 1 - v;
  }
  for (const auto& b : bs) {
    const Real v = b.value();
    if (!(v > 0 && v < 1)) throw DomainError("denominator parameter " + b.text() + " must lie in (0, 1)");
    out.lhs *= 1 - v * qq;
  }
  out.rhs = 4 * mp::pow(qq, 2 * al);
  out.holds = out.lhs >= out.rhs;
  return out;
}

}  // namespace qzeros
