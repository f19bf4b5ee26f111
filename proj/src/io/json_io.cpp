#include "hstab/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hstab/error.hpp"

namespace hstab::io {

namespace {

using complexes::GroupRingElement;
using complexes::GroupRingEntry;
using complexes::GroupRingMatrix;
using complexes::Ring;
using linalg::SparseIntegerMatrix;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError("field '" + path + "': " + what);
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

long long as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

std::size_t as_index(const json& j, const std::string& path) {
  const long long v = as_int(j, path);
  if (v < 0) fail(path, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

Integer as_integer(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0) fail(path, "invalid integer string");
    return v;
  }
  fail(path, "expected an integer or a decimal string");
}

int degree_key(const std::string& key, const std::string& path) {
  try {
    std::size_t used = 0;
    const int q = std::stoi(key, &used);
    if (used != key.size()) throw std::invalid_argument(key);
    return q;
  } catch (const std::exception&) {
    fail(join(path, key), "key must be an integer degree");
  }
}

SparseIntegerMatrix matrix_from_json(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return SparseIntegerMatrix::from_text(j.get<std::string>());
    } catch (const ParseError& e) {
      fail(path, e.what());
    }
  }
  const std::size_t rows = as_index(field(j, "rows", path), join(path, "rows"));
  const std::size_t cols = as_index(field(j, "cols", path), join(path, "cols"));
  const auto& entries = field(j, "entries", path);
  if (!entries.is_array()) fail(join(path, "entries"), "expected an array");
  std::vector<linalg::Entry> e;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string p = join(path, "entries[" + std::to_string(k) + "]");
    const auto& x = entries[k];
    if (!x.is_array() || x.size() != 3) fail(p, "expected [i, j, v]");
    const std::size_t r = as_index(x[0], p), c = as_index(x[1], p);
    if (r >= rows || c >= cols) fail(p, "index out of bounds");
    e.push_back({r, c, as_integer(x[2], p)});
  }
  return SparseIntegerMatrix::from_triplets(rows, cols, std::move(e));
}

GroupRingMatrix group_ring_matrix_from_json(const json& j, const std::string& path) {
  const std::size_t rows = as_index(field(j, "rows", path), join(path, "rows"));
  const std::size_t cols = as_index(field(j, "cols", path), join(path, "cols"));
  const auto& entries = field(j, "entries", path);
  if (!entries.is_array()) fail(join(path, "entries"), "expected an array");
  std::vector<GroupRingEntry> e;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string p = join(path, "entries[" + std::to_string(k) + "]");
    const auto& x = entries[k];
    if (!x.is_array() || x.size() != 3 || !x[2].is_array() || x[2].size() != 2) fail(p, "expected [i, j, [a, b]]");
    const std::size_t r = as_index(x[0], p), c = as_index(x[1], p);
    if (r >= rows || c >= cols) fail(p, "index out of bounds");
    e.push_back({r, c, {as_integer(x[2][0], p), as_integer(x[2][1], p)}});
  }
  return GroupRingMatrix::from_triplets(rows, cols, std::move(e));
}

json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

std::vector<std::size_t> index_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(as_index(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

}  // namespace

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(std::string(source) + ": line " + std::to_string(line) + " column " + std::to_string(column) +
                     ": malformed JSON");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json to_json(const complexes::HomologyGroup& h) { return h.to_string(); }

json to_json(const complexes::ChainComplex& c) {
  json j;
  j["ring"] = c.ring().to_string();
  j["qmin"] = c.qmin();
  j["qmax"] = c.qmax();
  j["ranks"] = json::array();
  for (auto r : c.ranks()) j["ranks"].push_back(r);
  json b = json::object();
  for (int q = c.qmin() + 1; q <= c.qmax(); ++q) {
    if (c.ring().kind == Ring::Kind::ZC2) {
      const auto& m = c.group_ring_boundary(q);
      json e = json::array();
      for (const auto& x : m.entries()) e.push_back({x.row, x.col, {integer_json(x.value.a), integer_json(x.value.b)}});
      b[std::to_string(q)] = {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", e}};
    } else {
      b[std::to_string(q)] = c.boundary(q).to_text();
    }
  }
  j["boundaries"] = b;
  json labels = json::object();
  for (int q = c.qmin(); q <= c.qmax(); ++q) {
    auto l = c.labels(q);
    if (!l.empty()) labels[std::to_string(q)] = std::vector<std::string>(l.begin(), l.end());
  }
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

complexes::ChainComplex complex_from_json(const json& j) {
  const auto& ring_j = field(j, "ring", "");
  if (!ring_j.is_string()) fail("ring", "expected a string");
  Ring ring;
  try {
    ring = Ring::parse(ring_j.get<std::string>());
  } catch (const ArgumentError& e) {
    fail("ring", e.what());
  }
  const int qmin = static_cast<int>(as_int(field(j, "qmin", ""), "qmin"));
  const int qmax = static_cast<int>(as_int(field(j, "qmax", ""), "qmax"));
  auto ranks = index_list(field(j, "ranks", ""), "ranks");
  if (qmax < qmin - 1 || ranks.size() != static_cast<std::size_t>(qmax - qmin + 1))
    fail("ranks", "expected qmax - qmin + 1 ranks");
  std::map<int, SparseIntegerMatrix> zb;
  std::map<int, GroupRingMatrix> gb;
  if (j.contains("boundaries")) {
    const auto& b = j["boundaries"];
    if (!b.is_object()) fail("boundaries", "expected an object");
    for (const auto& [key, m] : b.items()) {
      const int q = degree_key(key, "boundaries");
      const std::string p = "boundaries." + key;
      if (q <= qmin || q > qmax) fail(p, "degree outside qmin + 1..qmax");
      const std::size_t rows = ranks[static_cast<std::size_t>(q - 1 - qmin)];
      const std::size_t cols = ranks[static_cast<std::size_t>(q - qmin)];
      if (ring.kind == Ring::Kind::ZC2) {
        auto g = group_ring_matrix_from_json(m, p);
        if (g.rows() != rows || g.cols() != cols) fail(p, "shape does not match the ranks");
        gb[q] = std::move(g);
      } else {
        auto z = matrix_from_json(m, p);
        if (z.rows() != rows || z.cols() != cols) fail(p, "shape does not match the ranks");
        zb[q] = std::move(z);
      }
    }
  }
  auto c = ring.kind == Ring::Kind::ZC2 ? complexes::ChainComplex::make_group_ring(qmin, ranks, std::move(gb))
                                        : complexes::ChainComplex::make(ring, qmin, ranks, std::move(zb));
  if (j.contains("labels")) {
    const auto& l = j["labels"];
    if (!l.is_object()) fail("labels", "expected an object");
    for (const auto& [key, names] : l.items()) {
      const int q = degree_key(key, "labels");
      if (!names.is_array() || !std::all_of(names.begin(), names.end(), [](const json& x) { return x.is_string(); }))
        fail("labels." + key, "expected an array of strings");
      if (q < qmin || q > qmax || names.size() != c.rank(q)) fail("labels." + key, "count does not match the rank");
      c.set_labels(q, names.get<std::vector<std::string>>());
    }
  }
  auto v = complexes::validate_complex(c);
  if (!v.ok) throw ArgumentError(v.message);
  return c;
}

json to_json(const delta::DeltaSet& y) {
  json j;
  j["levels"] = json::array();
  json faces = json::object();
  for (std::size_t i = 0; i < y.level_count(); ++i) {
    j["levels"].push_back(y.level_size(i));
    if (i == 0) continue;
    json lvl = json::array();
    for (std::size_t k = 0; k < y.level_size(i); ++k) {
      json f = json::array();
      for (std::size_t d = 0; d <= i; ++d) f.push_back(y.face(i, k, d));
      lvl.push_back(f);
    }
    faces[std::to_string(i)] = lvl;
  }
  j["faces"] = faces;
  if (y.augmented()) {
    json a = json::array();
    for (std::size_t v = 0; v < y.level_size(0); ++v) a.push_back(y.augmentation(v));
    j["augmentation"] = a;
    j["base"] = y.base_size();
  }
  return j;
}

delta::DeltaSet delta_set_from_json(const json& j) {
  const auto levels = index_list(field(j, "levels", ""), "levels");
  std::vector<std::vector<std::vector<std::size_t>>> faces(levels.size());
  if (!levels.empty()) faces[0].assign(levels[0], {});
  const json empty = json::object();
  const json& fj = j.contains("faces") ? j["faces"] : empty;
  if (!fj.is_object()) fail("faces", "expected an object");
  for (const auto& [key, list] : fj.items()) {
    const int i = degree_key(key, "faces");
    if (i < 1 || static_cast<std::size_t>(i) >= levels.size()) fail("faces." + key, "level outside 1..top");
  }
  for (std::size_t i = 1; i < levels.size(); ++i) {
    const std::string p = "faces." + std::to_string(i);
    const auto& list = field(fj, std::to_string(i).c_str(), "faces");
    if (!list.is_array() || list.size() != levels[i]) fail(p, "expected one face list per simplex");
    for (std::size_t k = 0; k < list.size(); ++k) {
      auto f = index_list(list[k], p + "[" + std::to_string(k) + "]");
      if (f.size() != i + 1) fail(p + "[" + std::to_string(k) + "]", "expected " + std::to_string(i + 1) + " faces");
      faces[i].push_back(std::move(f));
    }
  }
  delta::DeltaSet y;
  if (j.contains("augmentation")) {
    auto aug = index_list(j["augmentation"], "augmentation");
    if (aug.size() != (levels.empty() ? 0 : levels[0])) fail("augmentation", "expected one entry per vertex");
    std::size_t base = 0;
    for (auto a : aug) base = std::max(base, a + 1);
    if (j.contains("base")) {
      base = as_index(j["base"], "base");
      for (auto a : aug)
        if (a >= base) fail("augmentation", "index outside the base");
    }
    y = delta::DeltaSet::make_augmented(std::move(faces), std::move(aug), base);
  } else {
    y = delta::DeltaSet::make(std::move(faces));
  }
  auto v = delta::validate_delta_set(y);
  if (!v.ok) throw ArgumentError(v.message);
  return y;
}

delta::DeltaMap delta_map_from_json(const json& j) {
  delta::DeltaMap f;
  try {
    f.source = std::make_shared<const delta::DeltaSet>(delta_set_from_json(field(j, "source", "")));
  } catch (const ParseError& e) {
    throw ParseError(std::string("source: ") + e.what());
  }
  try {
    f.target = std::make_shared<const delta::DeltaSet>(delta_set_from_json(field(j, "target", "")));
  } catch (const ParseError& e) {
    throw ParseError(std::string("target: ") + e.what());
  }
  const auto& lv = field(j, "levels", "");
  if (!lv.is_object()) fail("levels", "expected an object");
  for (std::size_t i = 0; i < f.source->level_count(); ++i)
    f.levels.push_back(index_list(field(lv, std::to_string(i).c_str(), "levels"), "levels." + std::to_string(i)));
  if (j.contains("base")) f.base = index_list(j["base"], "base");
  delta::validate_delta_map(f);
  return f;
}

spectral::FilteredComplex filtered_from_json(const json& j) {
  complexes::ChainComplex c;
  try {
    c = complex_from_json(field(j, "complex", ""));
  } catch (const ParseError& e) {
    throw ParseError(std::string("complex: ") + e.what());
  }
  const auto& fj = field(j, "filtration", "");
  if (!fj.is_object()) fail("filtration", "expected an object");
  std::map<int, std::vector<int>> levels;
  for (int q = c.qmin(); q <= c.qmax(); ++q) {
    const std::string p = "filtration." + std::to_string(q);
    const auto& l = field(fj, std::to_string(q).c_str(), "filtration");
    if (!l.is_array()) fail(p, "expected an array");
    for (std::size_t k = 0; k < l.size(); ++k) levels[q].push_back(static_cast<int>(as_int(l[k], p)));
  }
  return spectral::FilteredComplex::make(std::move(c), std::move(levels));
}

json to_json(const spectral::SpectralPage& e) {
  json j;
  j["r"] = e.r;
  j["prime"] = e.p;
  j["entries"] = json::array();
  for (const auto& [st, d] : e.dims) j["entries"].push_back({{"s", st.first}, {"t", st.second}, {"dim", d}});
  j["differentials"] = json::array();
  for (const auto& d : e.differentials)
    j["differentials"].push_back(
        {{"from", {d.s, d.t}}, {"to", {d.s - e.r, d.t + e.r - 1}}, {"matrix", d.matrix}});
  return j;
}

}  // namespace hstab::io
