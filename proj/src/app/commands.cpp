#include <chrono>
#include <optional>

#include "app/app.hpp"
#include "hstab/confspace.hpp"
#include "hstab/error.hpp"
#include "hstab/groups.hpp"
#include "hstab/io.hpp"
#include "hstab/spectral.hpp"

#ifndef HSTAB_VERSION
#define HSTAB_VERSION "0.0.0"
#endif

namespace hstab::app {

namespace {

using nlohmann::json;
using complexes::CoefficientModule;
using complexes::HomologyGroup;

// ---- parameter access ----

class Params {
 public:
  explicit Params(const json& j) : j_(j) {
    if (!j_.is_object() && !j_.is_null()) throw ArgumentError("parameters must be a JSON object");
  }

  bool has(const char* key) const { return j_.is_object() && j_.contains(key) && !j_[key].is_null(); }

  long long integer(const char* key, std::optional<long long> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ArgumentError(std::string("missing parameter '") + key + "'");
    }
    const auto& v = j_[key];
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_string()) {
      try {
        std::size_t used = 0;
        const long long x = std::stoll(v.get<std::string>(), &used);
        if (used == v.get<std::string>().size()) return x;
      } catch (const std::exception&) {
      }
    }
    throw ArgumentError(std::string("parameter '") + key + "' must be an integer");
  }

  std::size_t count(const char* key, std::optional<long long> fallback = std::nullopt) const {
    const long long v = integer(key, fallback);
    if (v < 0) throw ArgumentError(std::string("parameter '") + key + "' must be non-negative");
    return static_cast<std::size_t>(v);
  }

  std::string text(const char* key, std::optional<std::string> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ArgumentError(std::string("missing parameter '") + key + "'");
    }
    if (!j_[key].is_string()) throw ArgumentError(std::string("parameter '") + key + "' must be a string");
    return j_[key].get<std::string>();
  }

  /// A string, or an integer rendered in decimal.
  std::string word(const char* key, const std::string& fallback) const {
    if (has(key) && j_[key].is_number_integer()) return std::to_string(j_[key].get<long long>());
    return text(key, fallback);
  }

  bool flag(const char* key) const {
    if (!has(key)) return false;
    if (!j_[key].is_boolean()) throw ArgumentError(std::string("parameter '") + key + "' must be a boolean");
    return j_[key].get<bool>();
  }

 private:
  const json& j_;
};

ojson integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

std::uint64_t prime_param(const Params& p, const char* key) {
  const long long v = p.integer(key);
  if (v < 2 || !linalg::is_prime(static_cast<std::uint64_t>(v)))
    throw ArgumentError(std::string("parameter '") + key + "' must be a prime");
  return static_cast<std::uint64_t>(v);
}

std::string read_input(const Params& p) { return io::read_file(p.text("input")); }

// "z" and "fp:<p>" stand for the module a family is usually read with.
CoefficientModule coefficients(const std::string& family, const std::string& spec) {
  if (spec == "z" || spec.rfind("fp:", 0) == 0) {
    std::string prefix = "trivial-";
    if (family == "alt-braid" || family == "oriented") prefix = "regular-";
    if (family == "sign-twisted") prefix = "sign-";
    return CoefficientModule::parse(prefix + spec);
  }
  return CoefficientModule::parse(spec);
}

ojson homology_rows(const std::vector<HomologyGroup>& groups, int first_degree) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < groups.size(); ++i)
    rows.push_back({{"degree", first_degree + static_cast<int>(i)},
                    {"group", groups[i].to_string()},
                    {"rank", groups[i].rank()}});
  return rows;
}

struct Outcome {
  ojson params = ojson::object();
  ojson rows = ojson::array();
  ojson violations = ojson::array();
  ojson extra = ojson::object();
};

// ---- homology ----

Outcome cmd_homology(const Params& p, const Context& ctx) {
  Outcome out;
  const std::string family = p.text("family");
  out.params["family"] = family;
  if (family == "group") {
    auto g = groups::parse_group(p.text("group"), ctx.limits);
    const int deg = static_cast<int>(p.count("deg", 1));
    const int top = static_cast<int>(p.integer("top", deg + 1));
    out.params["group"] = p.text("group");
    out.params["deg"] = deg;
    out.params["top"] = top;
    if (top <= deg) throw ArgumentError("top must exceed deg");
    auto c = groups::bar_complex(g, top, ctx.limits);
    out.rows = homology_rows(complexes::homology_range(c, 0, deg, ctx), 0);
    return out;
  }
  if (family == "complex") {
    out.params["input"] = p.text("input");
    const auto text = read_input(p);
    auto c = io::complex_from_json(io::parse_json(text, p.text("input")));
    out.rows = homology_rows(complexes::homology_range(c, c.qmin(), c.qmax(), ctx), c.qmin());
    return out;
  }
  const std::size_t n = p.count("n");
  if (n < 1) throw ArgumentError("n must be at least 1");
  const std::string spec = p.text("coeffs", "z");
  const auto m = coefficients(family, spec);
  out.params["n"] = n;
  out.params["coeffs"] = m.to_string();
  if (family == "braid" || family == "unordered") {
    out.rows = homology_rows(confspace::unordered_homology(n, m, ctx), 0);
  } else if (family == "alt-braid" || family == "oriented") {
    if (!m.is_regular()) throw ArgumentError("alt-braid takes z, fp:<p>, regular-z or regular-fp:<p>");
    out.rows = homology_rows(confspace::oriented_homology(n, m.result_ring(), ctx), 0);
  } else if (family == "sign-twisted") {
    if (m.kind != CoefficientModule::Kind::SignZ && m.kind != CoefficientModule::Kind::SignF)
      throw ArgumentError("sign-twisted takes sign coefficients");
    out.rows = homology_rows(confspace::unordered_homology(n, m, ctx), 0);
  } else {
    throw ArgumentError("unknown family '" + family + "'");
  }
  return out;
}

// ---- stability ----

ojson prediction_row(const std::string& family, std::size_t n, int q, const HomologyGroup& source,
                     const HomologyGroup& target, const complexes::InducedMap* map, const confspace::StabilityRow* row,
                     const confspace::Prediction& pred, bool pass) {
  ojson r;
  r["family"] = family;
  r["n"] = n;
  r["q"] = q;
  r["source"] = source.to_string();
  r["target"] = target.to_string();
  const auto cls = map ? map->classification : row->map;
  r["map"] = complexes::to_string(cls);
  r["injective"] = map ? map->injective : row->injective;
  r["surjective"] = map ? map->surjective : row->surjective;
  if (row) r["relative"] = row->relative.to_string();
  r["iso_pred"] = pred.iso;
  r["surj_pred"] = pred.surjective;
  if (row) r["relative_pred"] = pred.relative_vanishes;
  r["pass"] = pass;
  return r;
}

Outcome alt_group_stability(std::size_t n_min, std::size_t n_max, int q_max, const Context& ctx) {
  Outcome out;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    auto g = groups::alternating_group(n, ctx.limits);
    auto h = groups::alternating_group(n + 1, ctx.limits);
    auto f = groups::inclusion(g, h);
    for (int q = 0; q <= q_max; ++q) {
      auto m = groups::induced_map(f, q, q + 1, ctx);
      const auto pred = confspace::predict(confspace::Family::Oriented, n, q);
      bool pass = true;
      if (pred.iso && m.classification != complexes::MapClass::Iso) pass = false;
      if (pred.surjective && !m.surjective) pass = false;
      if (!pass)
        out.violations.push_back("n=" + std::to_string(n) + " q=" + std::to_string(q) + ": " +
                                 complexes::to_string(m.classification) + " outside the predicted behaviour");
      out.rows.push_back(prediction_row("alt-group", n, q, m.source, m.target, &m, nullptr, pred, pass));
    }
  }
  return out;
}

Outcome cmd_stability(const Params& p, const Context& ctx) {
  const std::string family = p.text("family");
  const std::size_t n_min = p.count("nmin", 1);
  const std::size_t n_max = p.count("nmax");
  const int q_max = static_cast<int>(p.count("qmax", 3));
  if (n_min < 1 || n_max < n_min) throw ArgumentError("need 1 <= nmin <= nmax");
  Outcome out;
  out.params["family"] = family;
  out.params["nmin"] = n_min;
  out.params["nmax"] = n_max;
  out.params["qmax"] = q_max;
  if (family == "alt-group") {
    auto r = alt_group_stability(n_min, n_max, q_max, ctx);
    r.params = out.params;
    return r;
  }
  confspace::Family fam;
  CoefficientModule m;
  if (family.rfind("sign-", 0) == 0 && family != "sign-twisted") {
    fam = confspace::Family::SignTwisted;
    m = CoefficientModule::parse(family);
  } else {
    fam = confspace::parse_family(family);
    m = p.has("coeffs") ? coefficients(family, p.text("coeffs")) : confspace::default_module(fam);
  }
  out.params["coeffs"] = m.to_string();
  auto report = confspace::stability_report(fam, n_min, n_max, q_max, m, ctx);
  for (const auto& row : report.rows) {
    auto r = prediction_row(family, row.n, row.q, row.source, row.target, nullptr, &row, row.predicted, row.pass);
    if (!row.injective && !row.source.is_zero()) r["note"] = "not injective";
    out.rows.push_back(std::move(r));
  }
  for (const auto& v : report.violations) out.violations.push_back(v);
  return out;
}

// ---- injective words ----

Integer derangements(std::size_t n) {
  Integer d = 1;  // D_0
  for (std::size_t k = 1; k <= n; ++k) {
    d = d * static_cast<unsigned long>(k);
    if (k % 2) d -= 1; else d += 1;
  }
  return d;
}

Outcome cmd_injective_words(const Params& p, const Context& ctx) {
  Outcome out;
  const std::size_t n = p.count("n");
  if (n < 1) throw ArgumentError("n must be at least 1");
  const bool verify = p.flag("verify");
  out.params["n"] = n;
  out.params["verify"] = verify;
  auto w = delta::wedge_verify(n, ctx);
  const Integer top = derangements(n);
  for (std::size_t i = 0; i < w.reduced.size(); ++i) {
    const int q = static_cast<int>(i) - 1;
    ojson r;
    r["degree"] = q;
    r["group"] = w.reduced[i].to_string();
    if (verify) {
      HomologyGroup expected;
      if (q == static_cast<int>(n) - 1) expected.free_rank = top.get_ui();
      r["expected"] = expected.to_string();
      const bool ok = w.reduced[i] == expected;
      r["pass"] = ok;
      if (!ok) out.violations.push_back("degree " + std::to_string(q) + ": " + w.reduced[i].to_string());
    }
    out.rows.push_back(std::move(r));
  }
  if (verify) {
    out.extra["summary"] = {{"connectivity_ok", w.connectivity_ok},
                            {"top_rank", w.top_rank},
                            {"derangements", integer_json(top)},
                            {"top_torsion_free", w.top_torsion_free},
                            {"euler_consistent", w.euler_consistent}};
    if (!w.pass()) out.violations.push_back("wedge checks failed");
  }
  return out;
}

// ---- spectral sequences ----

Outcome cmd_ss(const Params& p, const Context& ctx) {
  Outcome out;
  const std::string path = p.text("input");
  const std::uint64_t prime = prime_param(p, "prime");
  const std::string page_spec = p.word("page", "inf");
  out.params["input"] = path;
  out.params["prime"] = prime;
  const auto j = io::parse_json(io::read_file(path), path);
  std::optional<spectral::FilteredComplex> f;
  std::string kind;
  if (j.is_object() && j.contains("filtration")) {
    f = io::filtered_from_json(j);
    kind = "filtered-complex";
    if (f->prime() != prime) throw ArgumentError("the complex ring does not match --prime");
  } else if (j.is_object() && j.contains("source")) {
    f = spectral::map_filtration(io::delta_map_from_json(j), prime);
    kind = "map";
  } else {
    auto y = io::delta_set_from_json(j);
    f = y.augmented() ? spectral::augmented_filtration(y, prime) : spectral::skeletal_filtration(y, prime);
    kind = y.augmented() ? "augmented-delta-set" : "delta-set";
  }
  out.params["kind"] = kind;
  const int limit = spectral::limit_index(*f);
  int r = limit;
  if (page_spec != "inf") {
    try {
      std::size_t used = 0;
      r = std::stoi(page_spec, &used);
      if (used != page_spec.size() || r < 1) throw std::invalid_argument(page_spec);
    } catch (const std::exception&) {
      throw ArgumentError("page must be a positive integer or 'inf'");
    }
  }
  out.params["page"] = page_spec;
  auto e = spectral::page(*f, r, ctx);
  ojson row = io::to_json(e);
  if (r >= limit) {
    // Abutment check: total dimensions against the homology of the total complex.
    const auto& c = f->complex();
    ojson totals = ojson::array();
    for (int q = c.qmin(); q <= c.qmax(); ++q) {
      const std::size_t h = complexes::homology(c, q, ctx).free_rank;
      const std::size_t t = e.total_dim(q);
      totals.push_back({{"q", q}, {"page", t}, {"homology", h}});
      if (h != t)
        out.violations.push_back("total degree " + std::to_string(q) + ": page " + std::to_string(t) +
                                 ", homology " + std::to_string(h));
    }
    row["totals"] = totals;
  }
  out.extra["limit_page"] = limit;
  out.rows.push_back(std::move(row));
  return out;
}

// ---- groups ----

Outcome cmd_group_homology(const Params& p, const Context& ctx) {
  Outcome out;
  const std::string spec = p.text("group");
  const int deg = static_cast<int>(p.count("deg", 1));
  const int top = static_cast<int>(p.integer("top", deg + 1));
  if (top <= deg) throw ArgumentError("top must exceed deg");
  out.params["group"] = spec;
  out.params["deg"] = deg;
  out.params["top"] = top;
  auto g = groups::parse_group(spec, ctx.limits);
  if (p.has("into")) {
    const std::string into = p.text("into");
    out.params["into"] = into;
    auto h = groups::parse_group(into, ctx.limits);
    auto f = groups::inclusion(g, h);
    auto m = groups::induced_map(f, deg, top, ctx);
    out.rows.push_back({{"degree", deg},
                        {"source", m.source.to_string()},
                        {"target", m.target.to_string()},
                        {"map", complexes::to_string(m.classification)}});
  } else {
    auto h = groups::group_homology(g, deg, top, ctx);
    out.rows.push_back({{"degree", deg}, {"order", g.order()}, {"group", h.to_string()}});
  }
  return out;
}

// ---- Smith normal form ----

Outcome cmd_snf(const Params& p, const Context& ctx) {
  Outcome out;
  const std::string path = p.text("input");
  out.params["input"] = path;
  linalg::SparseIntegerMatrix m;
  try {
    m = linalg::SparseIntegerMatrix::from_text(io::read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  ojson r;
  r["rows"] = m.rows();
  r["cols"] = m.cols();
  if (p.has("prime")) {
    const auto prime = prime_param(p, "prime");
    out.params["prime"] = prime;
    r["prime"] = prime;
    r["rank"] = linalg::rank_mod_p(m, prime, ctx);
  } else {
    auto s = linalg::smith_normal_form(m, ctx);
    r["rank"] = s.rank;
    ojson factors = ojson::array();
    for (const auto& d : s.invariant_factors) factors.push_back(integer_json(d));
    r["factors"] = factors;
  }
  out.rows.push_back(std::move(r));
  return out;
}

// ---- counterexamples ----

Outcome cmd_counterexample(const Params& p, const Context& ctx) {
  Outcome out;
  const auto prime = prime_param(p, "p");
  const std::size_t lambda = p.count("lambda", 1);
  out.params["p"] = prime;
  out.params["lambda"] = lambda;
  auto c = confspace::counterexample_check(prime, lambda, ctx);
  out.rows.push_back({{"p", c.p},
                      {"lambda", c.lambda},
                      {"n", c.n},
                      {"q", c.q},
                      {"source", c.source.to_string()},
                      {"target", c.target.to_string()},
                      {"map", complexes::to_string(c.map)},
                      {"pass", c.pass()}});
  if (!c.pass()) out.violations.push_back("expected F_p -> 0 with the zero map");
  return out;
}

}  // namespace

const char* version() { return HSTAB_VERSION; }

Report run(std::string_view command, const json& params, const Context& ctx) {
  const auto start = std::chrono::steady_clock::now();
  Params p(params);
  Outcome out;
  if (command == "homology")
    out = cmd_homology(p, ctx);
  else if (command == "stability")
    out = cmd_stability(p, ctx);
  else if (command == "injective-words")
    out = cmd_injective_words(p, ctx);
  else if (command == "ss")
    out = cmd_ss(p, ctx);
  else if (command == "group-homology")
    out = cmd_group_homology(p, ctx);
  else if (command == "snf")
    out = cmd_snf(p, ctx);
  else if (command == "counterexample")
    out = cmd_counterexample(p, ctx);
  else
    throw ArgumentError("unknown command '" + std::string(command) + "'");
  Report r;
  r.pass = out.violations.empty();
  r.body["version"] = HSTAB_VERSION;
  r.body["command"] = std::string(command);
  r.body["params"] = out.params;
  r.body["rows"] = out.rows;
  r.body["pass"] = r.pass;
  r.body["violations"] = out.violations;
  for (auto& [k, v] : out.extra.items()) r.body[k] = v;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace hstab::app
