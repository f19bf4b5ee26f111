#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "hstab/complexes.hpp"
#include "hstab/dense.hpp"
#include "hstab/error.hpp"

namespace hstab::complexes {

using linalg::DenseIntMatrix;

namespace {

// Scalar arithmetic for Z (units ±1) or F_p (p > 0), values kept canonical.
struct Scalars {
  std::uint64_t p = 0;

  Integer norm(Integer v) const {
    if (p) mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), p);
    return v;
  }
  bool is_unit(const Integer& v) const {
    if (p) return sgn(v) != 0;
    return mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0;
  }
  Integer inverse(const Integer& v) const {
    if (!p) return v;
    Integer out;
    Integer mod(static_cast<unsigned long>(p));
    mpz_invert(out.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
    return out;
  }
};

// Column-major sparse matrix with a row index, used while pairing off
// unit entries.
class WorkMatrix {
 public:
  WorkMatrix(const SparseIntegerMatrix& m, const Scalars& s) : cols_(m.cols()), rows_(m.rows()) {
    for (const auto& e : m.entries()) {
      Integer v = s.norm(e.value);
      if (sgn(v) == 0) continue;
      cols_[e.col].emplace(e.row, std::move(v));
      rows_[e.row].insert(e.col);
    }
  }

  std::size_t row_count() const { return rows_.size(); }
  std::size_t col_count() const { return cols_.size(); }
  const std::map<std::size_t, Integer>& col(std::size_t j) const { return cols_[j]; }
  const std::set<std::size_t>& row(std::size_t i) const { return rows_[i]; }
  Integer get(std::size_t i, std::size_t j) const {
    auto it = cols_[j].find(i);
    return it == cols_[j].end() ? Integer(0) : it->second;
  }

  void remove_row(std::size_t i) {
    for (auto j : rows_[i]) cols_[j].erase(i);
    rows_[i].clear();
  }
  void remove_col(std::size_t j) {
    for (const auto& [i, v] : cols_[j]) rows_[i].erase(j);
    cols_[j].clear();
  }

  /// Eliminates with the pivot (r, c): every other column j with an entry
  /// in row r is replaced by col_j - M(r,j) u^{-1} col_c; then row r and
  /// column c are removed.
  void schur(std::size_t r, std::size_t c, const Integer& uinv, const Scalars& s) {
    const auto pivot_col = cols_[c];
    std::vector<std::size_t> targets(rows_[r].begin(), rows_[r].end());
    for (auto j : targets) {
      if (j == c) continue;
      Integer f = s.norm(get(r, j) * uinv);
      for (const auto& [i, v] : pivot_col) {
        auto& colj = cols_[j];
        auto it = colj.find(i);
        Integer nv = s.norm((it == colj.end() ? Integer(0) : it->second) - f * v);
        if (sgn(nv) == 0) {
          if (it != colj.end()) {
            colj.erase(it);
            rows_[i].erase(j);
          }
        } else if (it == colj.end()) {
          colj.emplace(i, std::move(nv));
          rows_[i].insert(j);
        } else {
          it->second = std::move(nv);
        }
      }
    }
    remove_col(c);
    remove_row(r);
  }

  /// Lowest Markowitz-cost unit entry, as (row, col).
  std::optional<std::pair<std::size_t, std::size_t>> best_unit(const Scalars& s) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    std::size_t best_cost = SIZE_MAX;
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      const auto& col = cols_[j];
      if (col.empty()) continue;
      for (const auto& [i, v] : col) {
        if (!s.is_unit(v)) continue;
        std::size_t cost = (rows_[i].size() - 1) * (col.size() - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best = {i, j};
          if (cost == 0) return best;
        }
      }
    }
    return best;
  }

  bool empty() const {
    for (const auto& c : cols_)
      if (!c.empty()) return false;
    return true;
  }

 private:
  std::vector<std::map<std::size_t, Integer>> cols_;
  std::vector<std::set<std::size_t>> rows_;
};

// One cancelled pair, seen from degree q.
struct Step {
  // true: pair (a in C_{q+1}, index in C_q); false: pair (index in C_q, b in C_{q-1}).
  bool upper;
  std::size_t index;
  Integer uinv;
  // upper: column a of ∂_{q+1} without row `index`; lower: row b of ∂_q without column `index`.
  SparseVector vec;
};

Integer mod_canonical(const Integer& v, const Integer& m) {
  if (sgn(m) == 0) return v;
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

struct HomologyBasis::Impl {
  Scalars s;
  HomologyGroup group;
  std::vector<Integer> orders;
  std::vector<Step> steps;
  std::vector<std::size_t> alive;  // surviving degree-q generators
  std::vector<std::size_t> position;  // degree-q generator -> index in alive, or npos
  // Residual integral core.
  DenseIntMatrix kernel;      // alive x k
  DenseIntMatrix kernel_coords;  // k x alive
  DenseIntMatrix left, left_inverse;  // k x k
  std::vector<std::size_t> selected;  // indices in 0..k-1

  SparseVector lift(std::map<std::size_t, Integer> x) const {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      if (it->upper) continue;
      Integer acc;
      for (const auto& [c, v] : it->vec) {
        auto f = x.find(c);
        if (f != x.end()) acc += v * f->second;
      }
      acc = s.norm(-it->uinv * acc);
      if (sgn(acc) != 0) x[it->index] = acc;
    }
    return {x.begin(), x.end()};
  }

  std::vector<Integer> project(const SparseVector& z) const {
    std::map<std::size_t, Integer> y;
    for (const auto& [i, v] : z) {
      Integer w = s.norm(v);
      if (sgn(w) != 0) y[i] += w;
    }
    for (const auto& st : steps) {
      auto it = y.find(st.index);
      if (it == y.end()) continue;
      Integer coef = it->second;
      y.erase(it);
      if (!st.upper) continue;
      Integer f = s.norm(coef * st.uinv);
      for (const auto& [c, v] : st.vec) {
        Integer nv = s.norm(y[c] - f * v);
        if (sgn(nv) == 0)
          y.erase(c);
        else
          y[c] = std::move(nv);
      }
    }
    std::vector<Integer> out(alive.size());
    for (const auto& [i, v] : y)
      if (position[i] != SIZE_MAX) out[position[i]] = v;
    return out;
  }
};

HomologyBasis::HomologyBasis(const ChainComplex& c, int q, const Context& ctx) : impl_(std::make_unique<Impl>()) {
  if (c.ring().kind == Ring::Kind::ZC2)
    throw ArgumentError("homology over Z[Z/2] is not computed directly; specialize to a coefficient module first");
  auto& im = *impl_;
  im.s.p = c.ring().kind == Ring::Kind::Fp ? c.ring().p : 0;
  im.group.field = im.s.p;
  const std::size_t n = c.rank(q);
  im.position.assign(n, SIZE_MAX);
  if (n == 0) return;

  const std::size_t top = c.rank(q + 1), bottom = c.rank(q - 1);
  WorkMatrix upper = top ? WorkMatrix(c.boundary(q + 1), im.s) : WorkMatrix(SparseIntegerMatrix(n, 0), im.s);
  WorkMatrix lower = bottom ? WorkMatrix(c.boundary(q), im.s) : WorkMatrix(SparseIntegerMatrix(0, n), im.s);
  std::vector<char> alive(n, 1);

  for (bool progress = true; progress;) {
    progress = false;
    while (auto piv = upper.best_unit(im.s)) {
      auto [b, a] = *piv;
      Step st{true, b, im.s.inverse(upper.get(b, a)), {}};
      for (const auto& [i, v] : upper.col(a))
        if (i != b) st.vec.emplace_back(i, v);
      upper.schur(b, a, st.uinv, im.s);
      lower.remove_col(b);
      alive[b] = 0;
      im.steps.push_back(std::move(st));
      progress = true;
    }
    while (auto piv = lower.best_unit(im.s)) {
      auto [b, a] = *piv;
      Step st{false, a, im.s.inverse(lower.get(b, a)), {}};
      for (auto j : lower.row(b))
        if (j != a) st.vec.emplace_back(j, lower.get(b, j));
      lower.schur(b, a, st.uinv, im.s);
      upper.remove_row(a);
      alive[a] = 0;
      im.steps.push_back(std::move(st));
      progress = true;
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) {
      im.position[i] = im.alive.size();
      im.alive.push_back(i);
    }
  const std::size_t na = im.alive.size();

  if (im.s.p) {
    // Over a field every nonzero entry was a unit, so both residual
    // differentials vanish and the survivors are a basis.
    if (!upper.empty() || !lower.empty()) throw Error("internal: residual differential over a field");
    im.group.free_rank = na;
    im.orders.assign(na, Integer(0));
    for (std::size_t i = 0; i < na; ++i) im.selected.push_back(i);
    return;
  }

  if (na > ctx.limits.max_dense_generators)
    throw ResourceLimitError("dense homology core of size " + std::to_string(na) + " exceeds cap " +
                             std::to_string(ctx.limits.max_dense_generators));

  // Residual core: survivors of C_{q-1}, C_q, C_{q+1}.
  std::vector<std::size_t> rows_below, cols_above;
  for (std::size_t i = 0; i < lower.row_count(); ++i)
    if (!lower.row(i).empty()) rows_below.push_back(i);
  for (std::size_t j = 0; j < upper.col_count(); ++j)
    if (!upper.col(j).empty()) cols_above.push_back(j);

  DenseIntMatrix dq(rows_below.size(), na);
  for (std::size_t r = 0; r < rows_below.size(); ++r)
    for (auto j : lower.row(rows_below[r])) dq(r, im.position[j]) = lower.get(rows_below[r], j);
  DenseIntMatrix dq1(na, cols_above.size());
  for (std::size_t c2 = 0; c2 < cols_above.size(); ++c2)
    for (const auto& [i, v] : upper.col(cols_above[c2])) dq1(im.position[i], c2) = v;

  auto ech = linalg::column_echelon(std::move(dq));
  const std::size_t r = ech.rank, k = na - r;
  im.kernel = DenseIntMatrix(na, k);
  im.kernel_coords = DenseIntMatrix(k, na);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      im.kernel(i, j) = ech.transform(i, r + j);
      im.kernel_coords(j, i) = ech.transform_inverse(r + j, i);
    }
  auto rel = im.kernel_coords * dq1;
  auto dec = linalg::smith_with_transforms(std::move(rel));
  im.left = std::move(dec.left);
  im.left_inverse = std::move(dec.left_inverse);
  for (std::size_t i = 0; i < k; ++i) {
    if (i < dec.rank && dec.diagonal[i] == 1) continue;
    im.selected.push_back(i);
    if (i < dec.rank) {
      im.orders.push_back(dec.diagonal[i]);
      im.group.torsion.push_back(dec.diagonal[i]);
    } else {
      im.orders.emplace_back(0);
      ++im.group.free_rank;
    }
  }
}

HomologyBasis::~HomologyBasis() = default;
HomologyBasis::HomologyBasis(HomologyBasis&&) noexcept = default;
HomologyBasis& HomologyBasis::operator=(HomologyBasis&&) noexcept = default;

const HomologyGroup& HomologyBasis::group() const { return impl_->group; }
std::span<const Integer> HomologyBasis::orders() const { return impl_->orders; }
std::size_t HomologyBasis::size() const { return impl_->selected.size(); }

SparseVector HomologyBasis::generator(std::size_t i) const {
  const auto& im = *impl_;
  std::map<std::size_t, Integer> x;
  if (im.s.p) {
    x[im.alive[im.selected[i]]] = 1;
    return im.lift(std::move(x));
  }
  const std::size_t col = im.selected[i];
  const std::size_t k = im.left_inverse.rows();
  for (std::size_t a = 0; a < im.alive.size(); ++a) {
    Integer v;
    for (std::size_t j = 0; j < k; ++j) v += im.kernel(a, j) * im.left_inverse(j, col);
    if (sgn(v) != 0) x[im.alive[a]] = v;
  }
  return im.lift(std::move(x));
}

std::vector<Integer> HomologyBasis::coordinates(const SparseVector& z) const {
  const auto& im = *impl_;
  auto w = im.project(z);
  std::vector<Integer> out;
  if (im.s.p) {
    for (auto i : im.selected) out.push_back(w[i]);
    return out;
  }
  auto y = im.kernel_coords.apply(w);
  auto yl = im.left.apply(y);
  for (std::size_t t = 0; t < im.selected.size(); ++t) out.push_back(mod_canonical(yl[im.selected[t]], im.orders[t]));
  return out;
}

// ---- induced maps ----

namespace {

SparseVector multiply(const SparseIntegerMatrix& m, const SparseVector& x) {
  std::vector<Integer> col_val(m.cols());
  for (const auto& [i, v] : x) col_val[i] = v;
  std::map<std::size_t, Integer> out;
  for (const auto& e : m.entries())
    if (sgn(col_val[e.col]) != 0) out[e.row] += e.value * col_val[e.col];
  SparseVector r;
  for (auto& [i, v] : out)
    if (sgn(v) != 0) r.emplace_back(i, std::move(v));
  return r;
}

void classify_field(InducedMap& m, std::uint64_t p) {
  const std::size_t nb = m.target_orders.size(), na = m.source_orders.size();
  std::vector<linalg::Entry> e;
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < na; ++j)
      if (sgn(m.matrix[i][j]) != 0) e.push_back({i, j, m.matrix[i][j]});
  const std::size_t rank = e.empty() ? 0 : linalg::rank_mod_p(SparseIntegerMatrix::from_triplets(nb, na, e), p);
  m.zero = rank == 0;
  m.injective = rank == na;
  m.surjective = rank == nb;
}

void classify_integral(InducedMap& m) {
  const std::size_t nb = m.target_orders.size(), na = m.source_orders.size();
  m.zero = true;
  for (const auto& row : m.matrix)
    for (const auto& v : row)
      if (sgn(v) != 0) m.zero = false;

  // [Φ | diag(order_B)] presents the image together with the relations of B.
  DenseIntMatrix aug(nb, na + nb);
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < na; ++j) aug(i, j) = m.matrix[i][j];
    aug(i, na + i) = m.target_orders[i];
  }
  auto dec = linalg::smith_with_transforms(aug);
  m.surjective = dec.rank == nb;
  for (const auto& d : dec.diagonal)
    if (d != 1) m.surjective = false;

  // Kernel of A → B: x-parts of ker[Φ | diag(order_B)] must lie in the
  // relations of A.
  auto ech = linalg::column_echelon(aug);
  m.injective = true;
  for (std::size_t c = ech.rank; c < na + nb && m.injective; ++c)
    for (std::size_t j = 0; j < na; ++j) {
      const Integer& x = ech.transform(j, c);
      const Integer& ord = m.source_orders[j];
      bool killed = sgn(ord) == 0 ? sgn(x) == 0 : mpz_divisible_p(x.get_mpz_t(), ord.get_mpz_t()) != 0;
      if (!killed) {
        m.injective = false;
        break;
      }
    }
}

}  // namespace

InducedMap induced_map_on_homology(const ChainMap& f, int q, const Context& ctx) {
  InducedMap out;
  out.degree = q;
  HomologyBasis src(f.source(), q, ctx);
  HomologyBasis tgt(f.target(), q, ctx);
  out.source = src.group();
  out.target = tgt.group();
  out.source_orders.assign(src.orders().begin(), src.orders().end());
  out.target_orders.assign(tgt.orders().begin(), tgt.orders().end());
  out.matrix.assign(tgt.size(), std::vector<Integer>(src.size()));
  if (src.size() && tgt.size()) {
    const auto& fq = f.component(q);
    for (std::size_t j = 0; j < src.size(); ++j) {
      auto coords = tgt.coordinates(multiply(fq, src.generator(j)));
      for (std::size_t i = 0; i < tgt.size(); ++i) out.matrix[i][j] = std::move(coords[i]);
    }
  }
  if (f.source().ring().kind == Ring::Kind::Fp)
    classify_field(out, f.source().ring().p);
  else
    classify_integral(out);
  if (out.injective && out.surjective)
    out.classification = MapClass::Iso;
  else if (out.zero)
    out.classification = MapClass::Zero;
  else if (out.surjective)
    out.classification = MapClass::Surjective;
  else if (out.injective)
    out.classification = MapClass::Injective;
  else
    out.classification = MapClass::Neither;
  return out;
}

Connectivity hconn_upto(const ChainMap& f, int q_max, const Context& ctx) {
  Connectivity out;
  out.value = q_max;
  for (int q = 0; q <= q_max; ++q) {
    out.maps.push_back(induced_map_on_homology(f, q, ctx));
    const auto& m = out.maps.back();
    if (!m.surjective) out.value = std::min(out.value, q - 1);
    if (!m.injective) out.value = std::min(out.value, q);
  }
  out.truncated = out.value == q_max;
  return out;
}

}  // namespace hstab::complexes
