#include "qzeros/serialize.hpp"

namespace qzeros {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json decimals(const std::vector<Decimal>& v) {
  Json out = Json::array();
  for (const auto& d : v) out.push_back(d.text());
  return out;
}

std::string ordering_name(ZeroOrdering o) { return o == ZeroOrdering::ByModulus ? "modulus" : "real-part"; }

}  // namespace

std::string format_real(const Real& x, unsigned digits) {
  if (boost::multiprecision::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (boost::multiprecision::isnan(x)) return "nan";
  return to_decimal(x, digits);
}

Json spec_params(const SeriesSpec& spec) {
  Json p = Json::object();
  std::visit(Overloaded{
                 [&](const RamanujanA& v) {
                   p["alpha"] = v.alpha.text();
                   p["q"] = v.q.text();
                   if (v.terminating_n) {
                     p["n"] = *v.terminating_n;
                   } else {
                     p["a"] = v.a.text();
                   }
                 },
                 [&](const GeneralizedQ& v) {
                   p["alpha"] = v.alpha.text();
                   p["q"] = v.q.text();
                   Json t = Json::array(), s = Json::array(), d = Json::array();
                   for (const auto& f : v.terminating) t.push_back({{"n", f.n}, {"q", f.q.text()}});
                   for (const auto& f : v.shifted) s.push_back({{"a", f.a.text()}, {"q", f.q.text()}});
                   for (const auto& f : v.denominators) d.push_back({{"beta", f.beta.text()}, {"q", f.q.text()}});
                   p["terminating"] = t;
                   p["shifted"] = s;
                   p["denominators"] = d;
                 },
                 [&](const LimitPoly& v) {
                   p["n"] = v.n;
                   p["beta"] = decimals(v.beta);
                 },
                 [&](const LimitEntire& v) {
                   p["m"] = v.m;
                   p["beta"] = decimals(v.beta);
                 },
                 [&](const RAS& v) {
                   p["alpha"] = v.alpha.text();
                   p["q"] = v.q.text();
                   p["a"] = decimals(v.a);
                   p["b"] = decimals(v.b);
                 },
                 [&](const RPhiS& v) {
                   p["q"] = v.q.text();
                   p["a"] = decimals(v.a);
                   p["b"] = decimals(v.b);
                 },
                 [&](const QBessel& v) {
                   p["nu"] = v.nu.text();
                   p["q"] = v.q.text();
                 },
             },
             spec);
  return p;
}

Json to_json(const SeriesSpec& spec) { return Json{{"family", family_name(spec)}, {"params", spec_params(spec)}}; }

Json to_json(const CoefficientSequence& seq, unsigned digits) {
  Json j;
  if (seq.source) {
    j["family"] = family_name(*seq.source);
    j["params"] = spec_params(*seq.source);
  } else {
    j["family"] = "values";
    j["params"] = Json::object();
  }
  j["precision_bits"] = seq.precision_bits;
  j["terminating"] = seq.terminating;
  j["degree"] = seq.degree ? Json(*seq.degree) : Json(nullptr);
  Json c = Json::array();
  for (const auto& v : seq.coeffs) c.push_back(format_real(v, digits));
  j["coeffs"] = c;
  return j;
}

Json to_json(const TruncationCertificate& cert, unsigned digits) {
  return Json{{"N", cert.N}, {"R", format_real(cert.R, digits)}, {"tail", format_real(cert.tail, digits)}};
}

Json to_json(const Evaluation& ev, unsigned digits) {
  return Json{{"re", format_real(ev.value.re, digits)},
              {"im", format_real(ev.value.im, digits)},
              {"certificate", to_json(ev.cert, digits)}};
}

Json to_json(const ZeroSet& zs, unsigned digits) {
  Json j;
  j["spec"] = zs.spec ? to_json(*zs.spec) : Json(nullptr);
  j["precision_bits"] = zs.precision_bits;
  j["ordering"] = ordering_name(zs.ordering);
  Json zeros = Json::array();
  for (const auto& z : zs.zeros) {
    zeros.push_back({{"re", format_real(z.value.re, digits)},
                     {"im", format_real(z.value.im, digits)},
                     {"residual", format_real(z.residual, 6)},
                     {"condition", format_real(z.condition, 6)},
                     {"real", z.real}});
  }
  j["zeros"] = zeros;
  if (zs.realness) {
    const auto& r = *zs.realness;
    j["all_real"] = r.all_real;
    j["all_negative"] = r.all_negative;
    j["all_positive"] = r.all_positive;
    j["max_imag_ratio"] = format_real(r.max_imag_ratio, 6);
    j["sign_change_count"] = r.sign_change_count;
    j["certified_count"] = r.certified_count;
    j["clustered_count"] = r.clustered_count;
  }
  if (zs.certificate) {
    const auto& c = *zs.certificate;
    j["certificate"] = {{"N", c.N},
                        {"R", format_real(c.R, 10)},
                        {"tail", format_real(c.tail, 6)},
                        {"guard_min", format_real(c.guard_min, 6)},
                        {"guard_samples", c.guard_samples},
                        {"separation_min", format_real(c.separation_min, 6)},
                        {"stability_delta", format_real(c.stability_delta, 6)},
                        {"delta_n", c.delta_n},
                        {"roots_in_disk", c.roots_in_disk},
                        {"rigorous", false}};
  } else {
    j["certificate"] = nullptr;
  }
  return j;
}

Json to_json(const MinorReport& rep, unsigned digits) {
  Json j;
  j["fingerprint"] = rep.fingerprint;
  j["window"] = rep.window;
  j["max_order"] = rep.max_order;
  j["minors_checked"] = rep.minors_checked;
  j["min_minor"] = format_real(rep.min_minor, digits);
  if (rep.violation) {
    j["violation"] = {{"rows", rep.violation->rows},
                      {"cols", rep.violation->cols},
                      {"value", format_real(rep.violation->value, digits)}};
  } else {
    j["violation"] = nullptr;
  }
  j["pf_consistent"] = rep.pf_consistent;
  j["scope"] = "necessary condition only: nonnegative minors up to the stated order and window";
  return j;
}

Json to_json(const RatioReport& rep, unsigned digits) {
  Json j;
  j["fingerprint"] = rep.fingerprint;
  Json ratios = Json::array();
  for (std::size_t i = 0; i < rep.ratios.size(); ++i) {
    ratios.push_back({{"n", rep.indices[i]}, {"ratio", format_real(rep.ratios[i], digits)}});
  }
  j["ratios"] = ratios;
  j["skipped"] = rep.skipped;
  j["min_ratio"] = format_real(rep.min_ratio, digits);
  j["passes_4"] = rep.passes_4;
  return j;
}

Json to_json(const VerificationReport& rep, unsigned digits) {
  Json j;
  j["suite"] = rep.tag;
  j["run"] = rep.run;
  j["passed"] = rep.passed;
  j["skipped"] = rep.skipped;
  j["ok"] = rep.ok();
  Json metrics = Json::object();
  for (const auto& m : rep.metrics) metrics[m.name] = format_real(m.value, digits == 0 ? 10 : digits);
  j["metrics"] = metrics;
  Json failures = Json::array();
  for (const auto& f : rep.failures) failures.push_back({{"instance", f.instance}, {"reason", f.reason}});
  j["failures"] = failures;
  j["notes"] = rep.notes;
  return j;
}

}  // namespace qzeros
