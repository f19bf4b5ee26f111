#include <algorithm>
#include <charconv>

#include "hstab/complexes.hpp"
#include "hstab/error.hpp"

namespace hstab::complexes {

namespace {

bool position_less(const GroupRingEntry& a, const GroupRingEntry& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

std::vector<GroupRingEntry> canonicalize(std::vector<GroupRingEntry> triplets) {
  std::sort(triplets.begin(), triplets.end(), position_less);
  std::vector<GroupRingEntry> out;
  out.reserve(triplets.size());
  for (auto& e : triplets) {
    if (!out.empty() && out.back().row == e.row && out.back().col == e.col)
      out.back().value += e.value;
    else
      out.push_back(std::move(e));
  }
  std::erase_if(out, [](const GroupRingEntry& e) { return e.value.is_zero(); });
  return out;
}

std::uint64_t parse_prime(std::string_view digits, std::string_view context) {
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw ArgumentError("invalid prime in '" + std::string(context) + "'");
  if (!linalg::is_prime(p)) throw ArgumentError(std::to_string(p) + " is not prime");
  return p;
}

template <class M>
std::size_t first_nonzero_column(const M& m) {
  std::size_t best = m.cols();
  for (const auto& e : m.entries()) best = std::min(best, e.col);
  return best;
}

// Reduces into [0, p) and checks for zero.
bool is_zero_in(const SparseIntegerMatrix& m, const Ring& ring) {
  if (ring.kind == Ring::Kind::Fp) return m.reduced_mod(ring.p).is_zero();
  return m.is_zero();
}

std::size_t first_nonzero_column_in(const SparseIntegerMatrix& m, const Ring& ring) {
  if (ring.kind == Ring::Kind::Fp) return first_nonzero_column(m.reduced_mod(ring.p));
  return first_nonzero_column(m);
}

void append_block(std::vector<linalg::Entry>& out, const SparseIntegerMatrix& m, std::size_t r0, std::size_t c0,
                  bool negate) {
  for (const auto& e : m.entries()) out.push_back({e.row + r0, e.col + c0, negate ? Integer(-e.value) : e.value});
}

void append_block(std::vector<GroupRingEntry>& out, const GroupRingMatrix& m, std::size_t r0, std::size_t c0,
                  bool negate) {
  for (const auto& e : m.entries()) out.push_back({e.row + r0, e.col + c0, negate ? -e.value : e.value});
}

}  // namespace

// ---- GroupRingMatrix ----

GroupRingMatrix GroupRingMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                               std::vector<GroupRingEntry> triplets) {
  for (const auto& e : triplets)
    if (e.row >= rows || e.col >= cols) throw ArgumentError("matrix entry index out of bounds");
  GroupRingMatrix m(rows, cols);
  m.entries_ = canonicalize(std::move(triplets));
  return m;
}

GroupRingMatrix GroupRingMatrix::identity(std::size_t n) {
  GroupRingMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_.push_back({i, i, {Integer(1), Integer(0)}});
  return m;
}

GroupRingElement GroupRingMatrix::at(std::size_t row, std::size_t col) const {
  GroupRingEntry probe{row, col, {}};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), probe, position_less);
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return {};
}

GroupRingMatrix GroupRingMatrix::operator*(const GroupRingMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ArgumentError("matrix product dimension mismatch");
  std::vector<std::size_t> start(rhs.rows_ + 1, 0);
  for (const auto& e : rhs.entries_) ++start[e.row + 1];
  for (std::size_t i = 0; i < rhs.rows_; ++i) start[i + 1] += start[i];
  std::vector<GroupRingEntry> out;
  for (const auto& a : entries_)
    for (std::size_t t = start[a.col]; t < start[a.col + 1]; ++t)
      out.push_back({a.row, rhs.entries_[t].col, a.value * rhs.entries_[t].value});
  GroupRingMatrix m(rows_, rhs.cols_);
  m.entries_ = canonicalize(std::move(out));
  return m;
}

GroupRingMatrix GroupRingMatrix::operator+(const GroupRingMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ArgumentError("matrix sum dimension mismatch");
  std::vector<GroupRingEntry> all(entries_);
  all.insert(all.end(), rhs.entries_.begin(), rhs.entries_.end());
  GroupRingMatrix m(rows_, cols_);
  m.entries_ = canonicalize(std::move(all));
  return m;
}

GroupRingMatrix GroupRingMatrix::operator-() const {
  GroupRingMatrix m(*this);
  for (auto& e : m.entries_) e.value = -e.value;
  return m;
}

// ---- Ring ----

Ring Ring::prime_field(std::uint64_t p) {
  if (!linalg::is_prime(p)) throw ArgumentError(std::to_string(p) + " is not prime");
  if (p >= (1ULL << 62)) throw ArgumentError("prime too large");
  return {Kind::Fp, p};
}

Ring Ring::parse(std::string_view text) {
  if (text == "Z") return integers();
  if (text == "ZC2") return group_ring();
  if (text.starts_with("Fp:")) return prime_field(parse_prime(text.substr(3), text));
  throw ArgumentError("unknown ring '" + std::string(text) + "' (expected Z, Fp:<p> or ZC2)");
}

std::string Ring::to_string() const {
  switch (kind) {
    case Kind::Z:
      return "Z";
    case Kind::Fp:
      return "Fp:" + std::to_string(p);
    case Kind::ZC2:
      return "ZC2";
  }
  return "?";
}

// ---- ChainComplex ----

ChainComplex ChainComplex::make(Ring ring, int qmin, std::vector<std::size_t> ranks,
                                std::map<int, SparseIntegerMatrix> boundaries) {
  if (ring.kind == Ring::Kind::ZC2) throw ArgumentError("use make_group_ring for Z[Z/2] complexes");
  ChainComplex c;
  c.ring_ = ring;
  c.qmin_ = qmin;
  c.ranks_ = std::move(ranks);
  const int qmax = c.qmax();
  for (const auto& [q, m] : boundaries)
    if ((q < qmin || q > qmax + 1) && !m.is_zero())
      throw ArgumentError("boundary in degree " + std::to_string(q) + " outside the complex");
  for (int q = qmin; q <= qmax + 1; ++q) {
    const std::size_t rows = c.rank(q - 1), cols = c.rank(q);
    auto it = boundaries.find(q);
    if (it == boundaries.end()) {
      c.boundaries_.emplace_back(rows, cols);
      continue;
    }
    if (it->second.rows() != rows || it->second.cols() != cols)
      throw ArgumentError("boundary " + std::to_string(q) + " has shape " + std::to_string(it->second.rows()) + "x" +
                          std::to_string(it->second.cols()) + ", expected " + std::to_string(rows) + "x" +
                          std::to_string(cols));
    c.boundaries_.push_back(ring.kind == Ring::Kind::Fp ? it->second.reduced_mod(ring.p) : std::move(it->second));
  }
  return c;
}

ChainComplex ChainComplex::make_group_ring(int qmin, std::vector<std::size_t> ranks,
                                           std::map<int, GroupRingMatrix> boundaries) {
  ChainComplex c;
  c.ring_ = Ring::group_ring();
  c.qmin_ = qmin;
  c.ranks_ = std::move(ranks);
  const int qmax = c.qmax();
  for (const auto& [q, m] : boundaries)
    if ((q < qmin || q > qmax + 1) && !m.is_zero())
      throw ArgumentError("boundary in degree " + std::to_string(q) + " outside the complex");
  for (int q = qmin; q <= qmax + 1; ++q) {
    const std::size_t rows = c.rank(q - 1), cols = c.rank(q);
    auto it = boundaries.find(q);
    if (it == boundaries.end()) {
      c.group_ring_boundaries_.emplace_back(rows, cols);
      continue;
    }
    if (it->second.rows() != rows || it->second.cols() != cols)
      throw ArgumentError("boundary " + std::to_string(q) + " has the wrong shape");
    c.group_ring_boundaries_.push_back(std::move(it->second));
  }
  return c;
}

std::size_t ChainComplex::rank(int q) const {
  if (q < qmin_ || q > qmax()) return 0;
  return ranks_[static_cast<std::size_t>(q - qmin_)];
}

std::size_t ChainComplex::total_rank() const {
  std::size_t total = 0;
  for (auto r : ranks_) total += r;
  return total;
}

const SparseIntegerMatrix& ChainComplex::boundary(int q) const {
  static const SparseIntegerMatrix empty;
  if (ring_.kind == Ring::Kind::ZC2) throw ArgumentError("Z[Z/2] complex has no integer boundary; specialize first");
  if (q < qmin_ || q > qmax() + 1) return empty;
  return boundaries_[static_cast<std::size_t>(q - qmin_)];
}

const GroupRingMatrix& ChainComplex::group_ring_boundary(int q) const {
  static const GroupRingMatrix empty;
  if (ring_.kind != Ring::Kind::ZC2) throw ArgumentError("complex is not over Z[Z/2]");
  if (q < qmin_ || q > qmax() + 1) return empty;
  return group_ring_boundaries_[static_cast<std::size_t>(q - qmin_)];
}

void ChainComplex::set_labels(int q, std::vector<std::string> labels) {
  if (labels.size() != rank(q)) throw ArgumentError("label count does not match rank");
  labels_[q] = std::move(labels);
}

std::span<const std::string> ChainComplex::labels(int q) const {
  auto it = labels_.find(q);
  if (it == labels_.end()) return {};
  return it->second;
}

// ---- ChainMap ----

namespace {

template <class M>
void check_component_shape(const ChainComplex& s, const ChainComplex& t, int q, const M& m) {
  if (m.rows() != t.rank(q) || m.cols() != s.rank(q))
    throw ArgumentError("chain map component " + std::to_string(q) + " has shape " + std::to_string(m.rows()) +
                        "x" + std::to_string(m.cols()) + ", expected " + std::to_string(t.rank(q)) + "x" +
                        std::to_string(s.rank(q)));
}

std::pair<int, int> map_range(const ChainComplex& s, const ChainComplex& t) {
  return {std::min(s.qmin(), t.qmin()), std::max(s.qmax(), t.qmax())};
}

}  // namespace

ChainMap ChainMap::make(std::shared_ptr<const ChainComplex> source, std::shared_ptr<const ChainComplex> target,
                        std::map<int, SparseIntegerMatrix> components) {
  if (!source || !target) throw ArgumentError("chain map needs source and target");
  if (!(source->ring() == target->ring())) throw ArgumentError("chain map between complexes over different rings");
  if (source->ring().kind == Ring::Kind::ZC2) throw ArgumentError("use make_group_ring for Z[Z/2] maps");
  ChainMap f;
  std::tie(f.qmin_, f.qmax_) = map_range(*source, *target);
  for (int q = f.qmin_; q <= f.qmax_; ++q) {
    auto it = components.find(q);
    if (it == components.end()) {
      f.components_.emplace_back(target->rank(q), source->rank(q));
      continue;
    }
    check_component_shape(*source, *target, q, it->second);
    const Ring& ring = source->ring();
    f.components_.push_back(ring.kind == Ring::Kind::Fp ? it->second.reduced_mod(ring.p) : std::move(it->second));
  }
  for (const auto& [q, m] : components)
    if ((q < f.qmin_ || q > f.qmax_) && !m.is_zero()) throw ArgumentError("chain map component outside range");
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  return f;
}

ChainMap ChainMap::make_group_ring(std::shared_ptr<const ChainComplex> source,
                                   std::shared_ptr<const ChainComplex> target,
                                   std::map<int, GroupRingMatrix> components) {
  if (!source || !target) throw ArgumentError("chain map needs source and target");
  if (source->ring().kind != Ring::Kind::ZC2 || target->ring().kind != Ring::Kind::ZC2)
    throw ArgumentError("group-ring chain map between complexes not over Z[Z/2]");
  ChainMap f;
  std::tie(f.qmin_, f.qmax_) = map_range(*source, *target);
  for (int q = f.qmin_; q <= f.qmax_; ++q) {
    auto it = components.find(q);
    if (it == components.end()) {
      f.group_ring_components_.emplace_back(target->rank(q), source->rank(q));
      continue;
    }
    check_component_shape(*source, *target, q, it->second);
    f.group_ring_components_.push_back(std::move(it->second));
  }
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  return f;
}

ChainMap ChainMap::identity(std::shared_ptr<const ChainComplex> c) {
  if (c->ring().kind == Ring::Kind::ZC2) {
    std::map<int, GroupRingMatrix> comps;
    for (int q = c->qmin(); q <= c->qmax(); ++q) comps[q] = GroupRingMatrix::identity(c->rank(q));
    return make_group_ring(c, c, std::move(comps));
  }
  std::map<int, SparseIntegerMatrix> comps;
  for (int q = c->qmin(); q <= c->qmax(); ++q) comps[q] = SparseIntegerMatrix::identity(c->rank(q));
  return make(c, c, std::move(comps));
}

const SparseIntegerMatrix& ChainMap::component(int q) const {
  static const SparseIntegerMatrix empty;
  if (!source_ || source_->ring().kind == Ring::Kind::ZC2)
    throw ArgumentError("Z[Z/2] chain map has no integer components; specialize first");
  if (q < qmin_ || q > qmax_) return empty;
  return components_[static_cast<std::size_t>(q - qmin_)];
}

const GroupRingMatrix& ChainMap::group_ring_component(int q) const {
  static const GroupRingMatrix empty;
  if (!source_ || source_->ring().kind != Ring::Kind::ZC2) throw ArgumentError("chain map is not over Z[Z/2]");
  if (q < qmin_ || q > qmax_) return empty;
  return group_ring_components_[static_cast<std::size_t>(q - qmin_)];
}

ChainMap ChainMap::then(const ChainMap& g) const {
  const auto& mid = g.source();
  if (!(mid.ring() == target_->ring())) throw ArgumentError("composition over different rings");
  for (int q = std::min(mid.qmin(), target_->qmin()); q <= std::max(mid.qmax(), target_->qmax()); ++q)
    if (mid.rank(q) != target_->rank(q)) throw ArgumentError("composition through complexes of different shape");
  const int lo = std::min(qmin_, g.qmin()), hi = std::max(qmax_, g.qmax());
  if (source_->ring().kind == Ring::Kind::ZC2) {
    std::map<int, GroupRingMatrix> comps;
    for (int q = lo; q <= hi; ++q)
      if (source_->rank(q) && g.target().rank(q)) comps[q] = g.group_ring_component(q) * group_ring_component(q);
    return make_group_ring(source_, g.target_ptr(), std::move(comps));
  }
  std::map<int, SparseIntegerMatrix> comps;
  for (int q = lo; q <= hi; ++q)
    if (source_->rank(q) && g.target().rank(q)) comps[q] = g.component(q) * component(q);
  return make(source_, g.target_ptr(), std::move(comps));
}

// ---- validation ----

ValidationResult validate_complex(const ChainComplex& c) {
  for (int q = c.qmin() + 2; q <= c.qmax(); ++q) {
    std::size_t col;
    if (c.ring().kind == Ring::Kind::ZC2) {
      auto prod = c.group_ring_boundary(q - 1) * c.group_ring_boundary(q);
      if (prod.is_zero()) continue;
      col = first_nonzero_column(prod);
    } else {
      auto prod = c.boundary(q - 1) * c.boundary(q);
      if (is_zero_in(prod, c.ring())) continue;
      col = first_nonzero_column_in(prod, c.ring());
    }
    return {false, q, col,
            "boundary composite d_" + std::to_string(q - 1) + " d_" + std::to_string(q) + " is nonzero on column " +
                std::to_string(col)};
  }
  return {};
}

ValidationResult validate_map(const ChainMap& f) {
  const auto& s = f.source();
  const auto& t = f.target();
  for (int q = f.qmin(); q <= f.qmax() + 1; ++q) {
    std::size_t col;
    if (s.ring().kind == Ring::Kind::ZC2) {
      if (s.rank(q) == 0 || t.rank(q - 1) == 0) continue;
      auto diff = f.group_ring_component(q - 1) * s.group_ring_boundary(q) + -(t.group_ring_boundary(q) * f.group_ring_component(q));
      if (diff.is_zero()) continue;
      col = first_nonzero_column(diff);
    } else {
      if (s.rank(q) == 0 || t.rank(q - 1) == 0) continue;
      auto diff = f.component(q - 1) * s.boundary(q) + -(t.boundary(q) * f.component(q));
      if (is_zero_in(diff, s.ring())) continue;
      col = first_nonzero_column_in(diff, s.ring());
    }
    return {false, q, col, "chain map fails to commute with the boundary in degree " + std::to_string(q) +
                               " on column " + std::to_string(col)};
  }
  return {};
}

// ---- cone, Euler characteristic ----

ChainComplex mapping_cone(const ChainMap& f) {
  const auto& s = f.source();
  const auto& t = f.target();
  const bool group_ring = s.ring().kind == Ring::Kind::ZC2;
  int qmin = 0, qmax = -1;
  if (!t.ranks().empty() && !s.ranks().empty()) {
    qmin = std::min(t.qmin(), s.qmin() + 1);
    qmax = std::max(t.qmax(), s.qmax() + 1);
  } else if (!t.ranks().empty()) {
    qmin = t.qmin();
    qmax = t.qmax();
  } else if (!s.ranks().empty()) {
    qmin = s.qmin() + 1;
    qmax = s.qmax() + 1;
  }
  std::vector<std::size_t> ranks;
  for (int q = qmin; q <= qmax; ++q) ranks.push_back(t.rank(q) + s.rank(q - 1));

  std::map<int, SparseIntegerMatrix> d;
  std::map<int, GroupRingMatrix> g;
  for (int q = qmin + 1; q <= qmax; ++q) {
    const std::size_t rows = t.rank(q - 1) + s.rank(q - 2);
    const std::size_t cols = t.rank(q) + s.rank(q - 1);
    const std::size_t tr = t.rank(q - 1), tc = t.rank(q);
    if (group_ring) {
      std::vector<GroupRingEntry> e;
      if (tr && tc) append_block(e, t.group_ring_boundary(q), 0, 0, false);
      if (tr && s.rank(q - 1)) append_block(e, f.group_ring_component(q - 1), 0, tc, false);
      if (s.rank(q - 2) && s.rank(q - 1)) append_block(e, s.group_ring_boundary(q - 1), tr, tc, true);
      g[q] = GroupRingMatrix::from_triplets(rows, cols, std::move(e));
    } else {
      std::vector<linalg::Entry> e;
      if (tr && tc) append_block(e, t.boundary(q), 0, 0, false);
      if (tr && s.rank(q - 1)) append_block(e, f.component(q - 1), 0, tc, false);
      if (s.rank(q - 2) && s.rank(q - 1)) append_block(e, s.boundary(q - 1), tr, tc, true);
      d[q] = SparseIntegerMatrix::from_triplets(rows, cols, std::move(e));
    }
  }
  if (group_ring) return ChainComplex::make_group_ring(qmin, std::move(ranks), std::move(g));
  return ChainComplex::make(s.ring(), qmin, std::move(ranks), std::move(d));
}

std::int64_t euler_characteristic(const ChainComplex& c) {
  std::int64_t chi = 0;
  for (int q = c.qmin(); q <= c.qmax(); ++q) {
    auto r = static_cast<std::int64_t>(c.rank(q));
    chi += (q % 2 == 0) ? r : -r;
  }
  return chi;
}

// ---- HomologyGroup ----

std::string HomologyGroup::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  if (free_rank) {
    out = field ? "F" + std::to_string(field) : "Z";
    if (free_rank > 1) out += "^" + std::to_string(free_rank);
  }
  // Group equal torsion factors as Z/d^k.
  for (std::size_t i = 0; i < torsion.size();) {
    std::size_t j = i;
    while (j < torsion.size() && torsion[j] == torsion[i]) ++j;
    if (!out.empty()) out += "+";
    out += "Z/" + torsion[i].get_str();
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

// ---- coefficient modules and specialization ----

CoefficientModule CoefficientModule::parse(std::string_view text) {
  using K = Kind;
  if (text == "trivial-z") return {K::TrivialZ, 0};
  if (text == "sign-z") return {K::SignZ, 0};
  if (text == "regular-z") return {K::RegularZZ, 0};
  auto with_prime = [&](std::string_view prefix, K kind) -> std::optional<CoefficientModule> {
    if (!text.starts_with(prefix)) return std::nullopt;
    return CoefficientModule{kind, parse_prime(text.substr(prefix.size()), text)};
  };
  if (auto m = with_prime("trivial-fp:", K::TrivialF)) return *m;
  if (auto m = with_prime("sign-fp:", K::SignF)) return *m;
  if (auto m = with_prime("regular-fp:", K::RegularF)) return *m;
  throw ArgumentError("unknown coefficient module '" + std::string(text) +
                      "' (expected trivial-z, sign-z, regular-z, trivial-fp:<p>, sign-fp:<p>, regular-fp:<p>)");
}

std::string CoefficientModule::to_string() const {
  switch (kind) {
    case Kind::TrivialZ:
      return "trivial-z";
    case Kind::SignZ:
      return "sign-z";
    case Kind::RegularZZ:
      return "regular-z";
    case Kind::TrivialF:
      return "trivial-fp:" + std::to_string(p);
    case Kind::SignF:
      return "sign-fp:" + std::to_string(p);
    case Kind::RegularF:
      return "regular-fp:" + std::to_string(p);
  }
  return "?";
}

Ring CoefficientModule::result_ring() const {
  switch (kind) {
    case Kind::TrivialZ:
    case Kind::SignZ:
    case Kind::RegularZZ:
      return Ring::integers();
    default:
      return Ring::prime_field(p);
  }
}

SparseIntegerMatrix regular_block_matrix(const GroupRingMatrix& m) {
  std::vector<linalg::Entry> e;
  e.reserve(4 * m.nnz());
  for (const auto& x : m.entries()) {
    const std::size_t r = 2 * x.row, c = 2 * x.col;
    e.push_back({r, c, x.value.a});
    e.push_back({r, c + 1, x.value.b});
    e.push_back({r + 1, c, x.value.b});
    e.push_back({r + 1, c + 1, x.value.a});
  }
  return SparseIntegerMatrix::from_triplets(2 * m.rows(), 2 * m.cols(), std::move(e));
}

namespace {

SparseIntegerMatrix specialize_matrix(const GroupRingMatrix& m, const CoefficientModule& mod) {
  using K = CoefficientModule::Kind;
  if (mod.is_regular()) return regular_block_matrix(m);
  const bool sign = mod.kind == K::SignZ || mod.kind == K::SignF;
  std::vector<linalg::Entry> e;
  e.reserve(m.nnz());
  for (const auto& x : m.entries()) e.push_back({x.row, x.col, sign ? Integer(x.value.a - x.value.b) : Integer(x.value.a + x.value.b)});
  return SparseIntegerMatrix::from_triplets(m.rows(), m.cols(), std::move(e));
}

// A Z complex can only be specialized along the reductions that do not
// need a t-action.
SparseIntegerMatrix reinterpret_integer(const SparseIntegerMatrix& m, const CoefficientModule& mod) {
  using K = CoefficientModule::Kind;
  if (mod.kind != K::TrivialZ && mod.kind != K::TrivialF)
    throw ArgumentError("only trivial coefficients apply to a complex over Z");
  return m;
}

}  // namespace

ChainComplex specialize(const ChainComplex& c, const CoefficientModule& mod) {
  if (c.ring().kind == Ring::Kind::Z) reinterpret_integer({}, mod);
  const Ring out_ring = mod.result_ring();
  const std::size_t scale = mod.is_regular() ? 2 : 1;
  std::vector<std::size_t> ranks;
  for (auto r : c.ranks()) ranks.push_back(scale * r);
  std::map<int, SparseIntegerMatrix> d;
  if (c.ring().kind == Ring::Kind::ZC2) {
    for (int q = c.qmin() + 1; q <= c.qmax(); ++q) d[q] = specialize_matrix(c.group_ring_boundary(q), mod);
  } else if (c.ring().kind == Ring::Kind::Z) {
    for (int q = c.qmin() + 1; q <= c.qmax(); ++q) d[q] = reinterpret_integer(c.boundary(q), mod);
  } else {
    throw ArgumentError("cannot specialize a complex over " + c.ring().to_string());
  }
  auto out = ChainComplex::make(out_ring, c.qmin(), std::move(ranks), std::move(d));
  for (int q = c.qmin(); q <= c.qmax(); ++q) {
    auto labels = c.labels(q);
    if (labels.empty()) continue;
    if (scale == 1) {
      out.set_labels(q, {labels.begin(), labels.end()});
    } else {
      std::vector<std::string> l;
      for (const auto& s : labels) {
        l.push_back(s);
        l.push_back("t*" + s);
      }
      out.set_labels(q, std::move(l));
    }
  }
  return out;
}

ChainMap specialize(const ChainMap& f, const CoefficientModule& mod, std::shared_ptr<const ChainComplex> source,
                    std::shared_ptr<const ChainComplex> target) {
  if (!source) source = std::make_shared<const ChainComplex>(specialize(f.source(), mod));
  if (!target) target = std::make_shared<const ChainComplex>(specialize(f.target(), mod));
  std::map<int, SparseIntegerMatrix> comps;
  for (int q = f.qmin(); q <= f.qmax(); ++q) {
    if (f.source().rank(q) == 0 || f.target().rank(q) == 0) continue;
    if (f.source().ring().kind == Ring::Kind::ZC2)
      comps[q] = specialize_matrix(f.group_ring_component(q), mod);
    else
      comps[q] = reinterpret_integer(f.component(q), mod);
  }
  return ChainMap::make(std::move(source), std::move(target), std::move(comps));
}

std::string to_string(MapClass c) {
  switch (c) {
    case MapClass::Iso:
      return "iso";
    case MapClass::Zero:
      return "zero";
    case MapClass::Surjective:
      return "surjective";
    case MapClass::Injective:
      return "injective";
    case MapClass::Neither:
      return "neither";
  }
  return "?";
}

}  // namespace hstab::complexes
