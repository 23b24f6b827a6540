#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "qzeros/errors.hpp"
#include "qzeros/pfcheck.hpp"
#include "qzeros/roots.hpp"
#include "qzeros/serialize.hpp"
#include "qzeros/verify.hpp"

namespace qzeros::cli {

namespace {

/// Raised for malformed invocations that CLI11 cannot catch by itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

template <class T>
T parse_integer(const std::string& text, const std::string& what) {
  T v{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw DomainError(what + ": expected a nonnegative integer, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw DomainError(what + ": expected true or false, got '" + text + "'");
}

std::vector<Decimal> decimal_list(const std::string& text) {
  std::vector<Decimal> out;
  for (const auto& item : split(text, ',')) out.emplace_back(item);
  return out;
}

// ---------------------------------------------------------------- family flags

struct FamilyArgs {
  std::string family;
  std::map<std::string, std::string> values;  // flag name -> raw text
};

const std::map<std::string, std::set<std::string>>& family_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"ramanujan-a", {"alpha", "a", "q", "n"}},
      {"generalized-q", {"alpha", "q", "terminating", "shifted", "denominators"}},
      {"limit-poly", {"n", "beta"}},
      {"limit-entire", {"m", "beta"}},
      {"ras", {"alpha", "q", "a", "b"}},
      {"rphis", {"q", "a", "b"}},
      {"qbessel1", {"nu", "q"}},
      {"qbessel2", {"nu", "q"}},
      {"qbessel3", {"nu", "q"}},
  };
  return keys;
}

const std::vector<std::string>& family_flag_names() {
  static const std::vector<std::string> names{"alpha", "a",  "q",           "n",        "nu",
                                              "m",     "beta", "b", "terminating", "shifted", "denominators"};
  return names;
}

// "v[@q]" items; the base defaults to `q`.
template <class Factor, class Make>
std::vector<Factor> factor_list(const std::string& text, const Decimal& q, Make make) {
  std::vector<Factor> out;
  for (const auto& item : split(text, ',')) {
    const auto at = item.find('@');
    const std::string v = item.substr(0, at);
    const Decimal base = at == std::string::npos ? q : Decimal(item.substr(at + 1));
    out.push_back(make(v, base));
  }
  return out;
}

SeriesSpec build_spec(const FamilyArgs& fa) {
  const auto it = family_keys().find(fa.family);
  if (it == family_keys().end()) throw DomainError("unknown family '" + fa.family + "'");
  for (const auto& [k, v] : fa.values) {
    if (!it->second.count(k)) throw DomainError("--" + k + " does not apply to family " + fa.family);
  }
  auto get = [&](const std::string& k) -> std::optional<std::string> {
    const auto f = fa.values.find(k);
    if (f == fa.values.end()) return std::nullopt;
    return f->second;
  };
  auto dec = [&](const std::string& k, Decimal dflt) { return get(k) ? Decimal(*get(k)) : dflt; };

  SeriesSpec spec;
  const std::string& f = fa.family;
  if (f == "ramanujan-a") {
    RamanujanA s;
    s.alpha = dec("alpha", 1);
    s.q = dec("q", 0.5);
    if (get("n") && get("a")) throw DomainError("--n and --a are exclusive for ramanujan-a");
    if (get("n")) s.terminating_n = parse_integer<unsigned>(*get("n"), "--n");
    s.a = dec("a", 0);
    spec = s;
  } else if (f == "generalized-q") {
    GeneralizedQ s;
    s.alpha = dec("alpha", 1);
    s.q = dec("q", 0.5);
    const std::string none;
    s.terminating = factor_list<TerminatingFactor>(get("terminating").value_or(none), s.q, [](auto& v, auto& b) {
      return TerminatingFactor{parse_integer<unsigned>(v, "--terminating"), b};
    });
    s.shifted = factor_list<ShiftedFactor>(get("shifted").value_or(none), s.q,
                                           [](auto& v, auto& b) { return ShiftedFactor{Decimal(v), b}; });
    s.denominators = factor_list<DenominatorFactor>(get("denominators").value_or(none), s.q,
                                                    [](auto& v, auto& b) { return DenominatorFactor{Decimal(v), b}; });
    spec = s;
  } else if (f == "limit-poly") {
    LimitPoly s;
    if (!get("n")) throw DomainError("limit-poly needs --n");
    for (const auto& item : split(*get("n"), ',')) s.n.push_back(parse_integer<unsigned>(item, "--n"));
    s.beta = decimal_list(get("beta").value_or(""));
    spec = s;
  } else if (f == "limit-entire") {
    LimitEntire s;
    if (get("m")) s.m = parse_integer<unsigned>(*get("m"), "--m");
    s.beta = decimal_list(get("beta").value_or(""));
    spec = s;
  } else if (f == "ras") {
    RAS s;
    s.alpha = dec("alpha", 1);
    s.q = dec("q", 0.5);
    s.a = decimal_list(get("a").value_or(""));
    s.b = decimal_list(get("b").value_or(""));
    spec = s;
  } else if (f == "rphis") {
    RPhiS s;
    s.q = dec("q", 0.5);
    s.a = decimal_list(get("a").value_or(""));
    s.b = decimal_list(get("b").value_or(""));
    spec = s;
  } else {
    QBessel s;
    s.kind = f.back() - '0';
    s.nu = dec("nu", 0);
    s.q = dec("q", 0.5);
    spec = s;
  }
  validate(spec);
  return spec;
}

// ---------------------------------------------------------------- config

struct Settings {
  unsigned precision = 256;
  std::string format;
  std::string output;
  unsigned digits = 0;
  std::optional<std::uint64_t> seed;
  GridSpec grid;
};

GridSpec extended_grid() {
  GridSpec g;
  g.poly.qs.clear();
  for (int i = 1; i <= 19; ++i) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "0.%02d", 5 * i);
    g.poly.qs.emplace_back(buf);
  }
  g.poly.alphas = {0, 0.25, 0.5, 1, 1.5, 2, 3};
  g.poly.n_max = 16;
  g.poly.random_instances = 1000;
  g.func1.as = {0, 0.25, 0.5, 1, 2, 4};
  g.func1.qs = {0.1, 0.3, 0.5, 0.7, 0.8};
  g.func1.alphas = {0.25, 0.5, 1, 2};
  g.func1.K = 10;
  g.func2.qs = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  g.func2.alphas = {0.5, 1, 1.5, 2, 3};
  g.func2.K = 10;
  g.func2.ratio_terms = 80;
  g.identities.samples = 200;
  g.limits.j_max = 14;
  g.limits.coefficient_count = 12;
  g.order.K = 2000;
  return g;
}

// Applies one key=value grid override.
void apply_setting(Settings& s, const std::string& key, const std::string& value) {
  GridSpec& g = s.grid;
  using Setter = std::function<void(const std::string&)>;
  auto integer = [&](auto& field) {
    return Setter([&field, key](const std::string& v) {
      field = parse_integer<std::remove_reference_t<decltype(field)>>(v, key);
    });
  };
  auto list = [&](std::vector<Decimal>& field) {
    return Setter([&field](const std::string& v) { field = decimal_list(v); });
  };
  auto real = [&](double& field) {
    return Setter([&field, key](const std::string& v) {
      const Decimal d(v);
      field = d.to_double();
    });
  };
  const std::map<std::string, Setter> setters{
      {"precision", integer(s.precision)},
      {"digits", integer(s.digits)},
      {"format", [&](const std::string& v) { s.format = v; }},
      {"seed", [&](const std::string& v) { s.seed = parse_integer<std::uint64_t>(v, key); }},
      {"poly.qs", list(g.poly.qs)},
      {"poly.alphas", list(g.poly.alphas)},
      {"poly.n_min", integer(g.poly.n_min)},
      {"poly.n_max", integer(g.poly.n_max)},
      {"poly.random_instances", integer(g.poly.random_instances)},
      {"func1.as", list(g.func1.as)},
      {"func1.qs", list(g.func1.qs)},
      {"func1.alphas", list(g.func1.alphas)},
      {"func1.K", integer(g.func1.K)},
      {"func1.precision_doubling", [&](const std::string& v) { g.func1.precision_doubling = parse_bool(v, key); }},
      {"func2.qs", list(g.func2.qs)},
      {"func2.alphas", list(g.func2.alphas)},
      {"func2.K", integer(g.func2.K)},
      {"func2.ratio_terms", integer(g.func2.ratio_terms)},
      {"identities.qs", list(g.identities.qs)},
      {"identities.samples", integer(g.identities.samples)},
      {"limits.j_min", integer(g.limits.j_min)},
      {"limits.j_max", integer(g.limits.j_max)},
      {"limits.coefficient_count", integer(g.limits.coefficient_count)},
      {"limits.min_gap_ratio", real(g.limits.min_gap_ratio)},
      {"order.K", integer(g.order.K)},
      {"order.tolerance", real(g.order.tolerance)},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) throw DomainError("unknown setting '" + key + "'");
  it->second(value);
}

std::pair<std::string, std::string> split_assignment(const std::string& line, const std::string& where) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw DomainError(where + ": expected key = value, got '" + line + "'");
  std::string value = trim(line.substr(eq + 1));
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
  return {trim(line.substr(0, eq)), value};
}

void load_config(Settings& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file '" + path + "'");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto [k, v] = split_assignment(line, path + ":" + std::to_string(lineno));
    apply_setting(s, k, v);
  }
}

// ---------------------------------------------------------------- output

using Row = std::vector<std::string>;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(std::ostream& out, const Row& header, const std::vector<Row>& rows) {
  auto line = [&](const Row& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i]);
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void write_table(std::ostream& out, const Row& header, const std::vector<Row>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  auto line = [&](const Row& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      s += r[i];
      if (i + 1 < r.size()) s += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out << s << '\n';
  };
  line(header);
  Row rule;
  for (auto w : width) rule.push_back(std::string(w, '-'));
  line(rule);
  for (const auto& r : rows) line(r);
}

void write_rows(std::ostream& out, const std::string& format, const Row& header, const std::vector<Row>& rows) {
  if (format == "csv") {
    write_csv(out, header, rows);
  } else {
    write_table(out, header, rows);
  }
}

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------- commands

struct Context {
  Settings settings;
  PrecisionContext ctx;
  std::ostream* out;
  std::ostream* err;
};

std::string resolve_format(const Settings& s, const std::string& dflt) {
  const std::string f = s.format.empty() ? dflt : s.format;
  if (f != "json" && f != "csv" && f != "table") throw DomainError("unknown format '" + f + "'");
  return f;
}

ZeroSet compute_zeros(const SeriesSpec& spec, std::optional<std::size_t> count, const PrecisionContext& ctx) {
  if (const auto degree = terminating_degree(spec)) {
    const auto seq = coefficients(spec, *degree, ctx);
    ZeroSet zs = find_poly_roots(seq, ctx);
    if (!zs.zeros.empty()) zs.realness = certify_real_roots(seq, zs, ctx);
    zs.spec = spec;
    zs.precision_bits = ctx.bits;
    return zs;
  }
  if (!count) throw UsageError(family_name(spec) + " is entire: --count K is required");
  return locate_entire_zeros(spec, *count, ctx);
}

int cmd_eval(Context& c, const SeriesSpec& spec, const std::string& z_re, const std::string& z_im) {
  const std::string format = resolve_format(c.settings, "json");
  const unsigned d = c.settings.digits;
  PrecisionScope scope(c.ctx);
  const Complex z{Decimal(z_re).value(), Decimal(z_im).value()};
  const Evaluation ev = evaluate(spec, z, c.ctx);
  if (format == "json") {
    Json j;
    j["spec"] = to_json(spec);
    j["precision_bits"] = c.ctx.bits;
    j["z"] = {{"re", format_real(z.re, d)}, {"im", format_real(z.im, d)}};
    j["value"] = {{"re", format_real(ev.value.re, d)}, {"im", format_real(ev.value.im, d)}};
    j["certificate"] = to_json(ev.cert, d);
    write_json(*c.out, j);
  } else {
    write_rows(*c.out, format, {"family", "z_re", "z_im", "re", "im", "N", "R", "tail"},
               {{family_name(spec), format_real(z.re, d), format_real(z.im, d), format_real(ev.value.re, d),
                 format_real(ev.value.im, d), std::to_string(ev.cert.N), format_real(ev.cert.R, d),
                 format_real(ev.cert.tail, d)}});
  }
  return kPass;
}

int cmd_zeros(Context& c, const SeriesSpec& spec, std::optional<std::size_t> count) {
  const std::string format = resolve_format(c.settings, "json");
  const unsigned d = c.settings.digits;
  if (count && *count == 0) throw UsageError("--count must be positive");
  const ZeroSet zs = compute_zeros(spec, count, c.ctx);
  if (format == "json") {
    write_json(*c.out, to_json(zs, d));
  } else {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < zs.zeros.size(); ++i) {
      const auto& z = zs.zeros[i];
      rows.push_back({std::to_string(i + 1), format_real(z.value.re, d), format_real(z.value.im, d),
                      format_real(z.residual, 6), format_real(z.condition, 6), z.real ? "true" : "false"});
    }
    write_rows(*c.out, format, {"index", "re", "im", "residual", "condition", "real"}, rows);
  }
  return kPass;
}

int cmd_coeffs(Context& c, const SeriesSpec& spec, std::optional<std::size_t> count) {
  const std::string format = resolve_format(c.settings, "json");
  const auto degree = terminating_degree(spec);
  if (!count && !degree) throw UsageError(family_name(spec) + " is entire: --count N is required");
  const std::size_t n = count ? *count : *degree;
  const auto seq = coefficients(spec, n, c.ctx);
  if (format == "json") {
    write_json(*c.out, to_json(seq, c.settings.digits));
  } else {
    std::vector<Row> rows;
    for (std::size_t k = 0; k < seq.coeffs.size(); ++k)
      rows.push_back({std::to_string(k), format_real(seq.coeffs[k], c.settings.digits)});
    write_rows(*c.out, format, {"k", "c"}, rows);
  }
  return kPass;
}

int cmd_pf(Context& c, const CoefficientSequence& seq, std::size_t window, std::size_t order) {
  const std::string format = resolve_format(c.settings, "json");
  const unsigned d = c.settings.digits;
  const bool via_roots = pf_finite_via_roots(seq, c.ctx);
  const std::size_t w = std::min(window, seq.coeffs.size());
  const MinorReport minors = toeplitz_minors(seq, w, std::min(order, w), c.ctx);
  std::optional<RatioReport> ratios;
  if (seq.coeffs.size() >= 3) ratios = turan_ratios(seq, c.ctx);
  if (format == "json") {
    Json j;
    j["fingerprint"] = sequence_fingerprint(seq);
    j["precision_bits"] = c.ctx.bits;
    j["pf_finite_via_roots"] = via_roots;
    j["minors"] = to_json(minors, d);
    j["turan"] = ratios ? to_json(*ratios, d) : Json(nullptr);
    write_json(*c.out, j);
  } else {
    write_rows(*c.out, format, {"fingerprint", "pf_finite_via_roots", "minors_checked", "min_minor", "pf_consistent",
                                "min_turan_ratio"},
               {{sequence_fingerprint(seq), via_roots ? "true" : "false", std::to_string(minors.minors_checked),
                 format_real(minors.min_minor, d), minors.pf_consistent ? "true" : "false",
                 ratios ? format_real(ratios->min_ratio, d) : ""}});
  }
  return kPass;
}

int cmd_verify(Context& c, const std::string& suite) {
  const std::string format = resolve_format(c.settings, "json");
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end()) {
    names = {suite};
  } else {
    std::string known;
    for (const auto& n : suite_names()) known += n + ", ";
    throw DomainError("unknown suite '" + suite + "' (expected one of " + known + "all)");
  }
  GridSpec grid = c.settings.grid;
  if (c.settings.seed) grid.poly.seed = *c.settings.seed;

  std::vector<VerificationReport> reports;
  bool ok = true;
  for (const auto& n : names) {
    reports.push_back(run_suite(n, grid, c.ctx));
    ok = ok && reports.back().ok();
  }
  if (format == "json") {
    Json j;
    j["precision_bits"] = c.ctx.bits;
    j["seed"] = grid.poly.seed;
    j["ok"] = ok;
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r, c.settings.digits));
    j["suites"] = arr;
    write_json(*c.out, j);
  } else {
    std::vector<Row> rows;
    for (const auto& r : reports) {
      rows.push_back({r.tag, std::to_string(r.run), std::to_string(r.passed), std::to_string(r.skipped),
                      std::to_string(r.failures.size()), r.ok() ? "pass" : "FAIL"});
    }
    write_rows(*c.out, format, {"suite", "run", "passed", "skipped", "failures", "status"}, rows);
    if (format == "table") {
      const unsigned d = c.settings.digits == 0 ? 10 : c.settings.digits;
      for (const auto& r : reports) {
        *c.out << '\n' << r.tag << '\n';
        for (const auto& m : r.metrics) *c.out << "  " << m.name << " = " << format_real(m.value, d) << '\n';
        for (const auto& f : r.failures) *c.out << "  FAIL " << f.instance << ": " << f.reason << '\n';
      }
    }
  }
  return ok ? kPass : kFail;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return kUsage;
  if (dynamic_cast<const DomainError*>(&e)) return kDomain;
  return kGuard;
}

int cmd_atlas(Context& c, const FamilyArgs& base, const std::vector<std::string>& grid_args,
              std::optional<std::size_t> count) {
  const std::string format = resolve_format(c.settings, "csv");
  const unsigned d = c.settings.digits;
  if (count && *count == 0) throw UsageError("--count must be positive");
  if (!family_keys().count(base.family)) throw DomainError("unknown family '" + base.family + "'");

  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const auto& g : grid_args) {
    const auto [key, values] = split_assignment(g, "--grid");
    if (!family_keys().at(base.family).count(key))
      throw DomainError("grid key '" + key + "' does not apply to family " + base.family);
    // Commas separate grid values, so list-valued keys take ';' inside a value.
    std::vector<std::string> vs;
    for (auto v : split(values, ',')) {
      std::replace(v.begin(), v.end(), ';', ',');
      vs.push_back(v);
    }
    axes.emplace_back(key, vs);
  }

  Row header;
  for (const auto& [k, v] : axes) header.push_back(k);
  for (const char* h : {"index", "zero", "zero_im", "residual", "error"}) header.emplace_back(h);

  std::vector<Row> rows;
  std::size_t groups = 0, failed = 0;
  int failure_code = kPass;
  std::vector<std::size_t> idx(axes.size(), 0);
  const bool empty = std::any_of(axes.begin(), axes.end(), [](const auto& a) { return a.second.empty(); });
  while (!empty) {
    FamilyArgs fa = base;
    Row prefix;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      fa.values[axes[i].first] = axes[i].second[idx[i]];
      prefix.push_back(axes[i].second[idx[i]]);
    }
    ++groups;
    try {
      const SeriesSpec spec = build_spec(fa);
      ZeroSet zs = compute_zeros(spec, count, c.ctx);
      if (count && zs.zeros.size() > *count) zs.zeros.resize(*count);
      for (std::size_t i = 0; i < zs.zeros.size(); ++i) {
        Row r = prefix;
        const auto& z = zs.zeros[i];
        r.insert(r.end(), {std::to_string(i + 1), format_real(z.value.re, d), format_real(z.value.im, d),
                           format_real(z.residual, 6), ""});
        rows.push_back(r);
      }
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      ++failed;
      if (failure_code == kPass) failure_code = exit_code_for(e);
      Row r = prefix;
      r.insert(r.end(), {"", "", "", "", e.what()});
      rows.push_back(r);
    }
    // Odometer over the axes, last axis fastest.
    std::size_t i = axes.size();
    while (i > 0 && ++idx[i - 1] == axes[i - 1].second.size()) idx[--i] = 0;
    if (i == 0) break;
  }

  if (format == "json") {
    Json j;
    j["family"] = base.family;
    j["precision_bits"] = c.ctx.bits;
    j["count"] = count ? Json(*count) : Json(nullptr);
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json row = Json::object();
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "index") {
          row[header[i]] = r[i].empty() ? Json(nullptr) : Json(std::stoul(r[i]));
        } else {
          row[header[i]] = r[i];
        }
      }
      arr.push_back(row);
    }
    j["rows"] = arr;
    write_json(*c.out, j);
  } else {
    write_rows(*c.out, format, header, rows);
  }
  return groups > 0 && failed == groups ? failure_code : kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-precision q-series evaluation, zero certification and verification suites.", "qzeros"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<unsigned> precision;
  std::string format, output, config;
  std::optional<unsigned> digits;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> sets;
  app.add_option("--precision", precision, "Working precision in bits (>= 64); default from QZEROS_PRECISION or 256");
  app.add_option("--format", format, "Output format: json, csv or table");
  app.add_option("--output", output, "Write output to this path instead of stdout");
  app.add_option("--digits", digits, "Round displayed numbers to this many significant digits (0 = full)");
  app.add_option("--seed", seed, "Seed for randomized grid instances");
  app.add_option("--config", config, "Config file of key = value lines");
  app.add_option("--set", sets, "Override one config key: key=value (repeatable)")->allow_extra_args(false);

  FamilyArgs fa;
  std::map<std::string, std::string> family_values;
  auto add_family_flags = [&](CLI::App* sub) {
    sub->add_option("--family", fa.family, "Series family")->required();
    for (const auto& name : family_flag_names()) {
      sub->add_option_function<std::string>(
          "--" + name, [&family_values, name](const std::string& v) { family_values[name] = v; },
          "Family parameter " + name);
    }
  };
  std::optional<std::size_t> count;

  auto* eval = app.add_subcommand("eval", "Evaluate a series at a point with a truncation certificate");
  add_family_flags(eval);
  std::string z_re = "0", z_im = "0";
  eval->add_option("--z", z_re, "Real part of the argument");
  eval->add_option("--zi", z_im, "Imaginary part of the argument");

  auto* zeros = app.add_subcommand("zeros", "Locate and certify zeros");
  add_family_flags(zeros);
  zeros->add_option("--count", count, "Number of zeros for entire families");

  auto* coeffs = app.add_subcommand("coeffs", "Print coefficients c_0..c_N");
  add_family_flags(coeffs);
  coeffs->add_option("--count", count, "Highest coefficient index N");

  auto* pf = app.add_subcommand("pf", "Total-positivity checks on a finite sequence");
  std::string values;
  std::size_t window = 10, order = 4;
  pf->add_option("--values", values, "Comma-separated nonnegative sequence")->required();
  pf->add_option("--window", window, "Toeplitz window size");
  pf->add_option("--order", order, "Maximum minor order");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  bool extended = false;
  verify->add_option("suite", suite, "poly, func1, func2, identities, limits, order or all")->required();
  verify->add_flag("--extended", extended, "Use the extended grids (long running)");

  auto* atlas = app.add_subcommand("atlas", "Tabulate zeros over a parameter grid");
  std::vector<std::string> grid_args;
  atlas->add_option("--family", fa.family, "Series family")->required();
  for (const auto& name : family_flag_names()) {
    atlas->add_option_function<std::string>(
        "--" + name, [&family_values, name](const std::string& v) { family_values[name] = v; },
        "Fixed family parameter " + name);
  }
  atlas->add_option("--grid", grid_args, "Grid axis key=v1,v2,... (repeatable)")->allow_extra_args(false);
  atlas->add_option("--count", count, "Zeros per grid point");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  fa.values = family_values;

  Context c;
  c.err = &err;
  std::ofstream file;
  try {
    if (const char* env = std::getenv(kPrecisionEnv); env && *env) {
      c.settings.precision = parse_integer<unsigned>(env, kPrecisionEnv);
    }
    if (verify->parsed() && extended) c.settings.grid = extended_grid();
    if (!config.empty()) load_config(c.settings, config);
    for (const auto& s : sets) {
      const auto [k, v] = split_assignment(s, "--set");
      apply_setting(c.settings, k, v);
    }
    if (precision) c.settings.precision = *precision;
    if (!format.empty()) c.settings.format = format;
    if (digits) c.settings.digits = *digits;
    if (seed) c.settings.seed = *seed;
    if (!output.empty()) c.settings.output = output;
    c.ctx = PrecisionContext::with_bits(c.settings.precision);
    resolve_format(c.settings, "json");

    if (!c.settings.output.empty()) {
      file.open(c.settings.output);
      if (!file) throw DomainError("cannot write output file '" + c.settings.output + "'");
      c.out = &file;
    } else {
      c.out = &out;
    }

    if (eval->parsed()) return cmd_eval(c, build_spec(fa), z_re, z_im);
    if (zeros->parsed()) return cmd_zeros(c, build_spec(fa), count);
    if (coeffs->parsed()) return cmd_coeffs(c, build_spec(fa), count);
    if (pf->parsed()) {
      std::vector<Real> v;
      {
        PrecisionScope scope(c.ctx);
        for (const auto& d : decimal_list(values)) v.push_back(d.value());
      }
      if (v.empty()) throw DomainError("--values is empty");
      return cmd_pf(c, CoefficientSequence::from_values(std::move(v), c.ctx.bits), window, order);
    }
    if (verify->parsed()) return cmd_verify(c, suite);
    if (atlas->parsed()) return cmd_atlas(c, fa, grid_args, count);
    return kUsage;
  } catch (const GuardError& e) {
    err << "error: " << e.what() << "\nhint: raise --precision or the truncation degree and retry\n";
    return kGuard;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\nhint: raise --precision and retry\n";
    return kGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace qzeros::cli
