#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>

#include "hstab/error.hpp"
#include "hstab/spectral.hpp"

namespace hstab::spectral {

namespace {

using Vec = std::vector<std::uint64_t>;

struct Fp {
  std::uint64_t p;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint64_t inv(std::uint64_t a) const {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  // y -= c x
  void axpy(Vec& y, std::uint64_t c, const Vec& x) const {
    if (c == 0) return;
    for (std::size_t i = 0; i < y.size(); ++i)
      if (x[i]) y[i] = sub(y[i], mul(c, x[i]));
  }
};

// Echelon system over F_p whose rows remember a combination of tagged inputs.
class Echelon {
 public:
  Echelon(const Fp& f, std::size_t dim, std::size_t tags) : f_(f), dim_(dim), tags_(tags) {}

  /// Reduces v; returns the combination of existing rows that was subtracted.
  Vec reduce(Vec& v) const {
    Vec combo(tags_, 0);
    for (const auto& row : rows_) {
      std::uint64_t c = v[row.pivot];
      if (!c) continue;
      f_.axpy(v, c, row.vec);
      for (std::size_t t = 0; t < tags_; ++t)
        if (row.combo[t]) combo[t] = (combo[t] + f_.mul(c, row.combo[t])) % f_.p;
    }
    return combo;
  }

  /// Adds v (with combination `combo`) unless it lies in the current span;
  /// returns whether it was added.
  bool insert(Vec v, Vec combo) {
    Vec used = reduce(v);
    auto it = std::find_if(v.begin(), v.end(), [](std::uint64_t x) { return x != 0; });
    if (it == v.end()) return false;
    for (std::size_t t = 0; t < tags_; ++t) combo[t] = f_.sub(combo[t], used[t]);
    const std::size_t pivot = static_cast<std::size_t>(it - v.begin());
    const std::uint64_t s = f_.inv(v[pivot]);
    for (auto& x : v) x = f_.mul(x, s);
    for (auto& x : combo) x = f_.mul(x, s);
    rows_.push_back({std::move(v), std::move(combo), pivot});
    return true;
  }

  std::size_t dim() const { return dim_; }

 private:
  struct Row {
    Vec vec;
    Vec combo;
    std::size_t pivot;
  };
  Fp f_;
  std::size_t dim_;
  std::size_t tags_;
  std::vector<Row> rows_;
};

// num / den with chosen representatives for a basis of the quotient.
struct Quotient {
  std::vector<Vec> reps;
  std::unique_ptr<Echelon> system;

  Quotient(const Fp& f, std::size_t dim, const std::vector<Vec>& den, const std::vector<Vec>& num) {
    // Tags are only needed for representatives; at most num.size() of them.
    system = std::make_unique<Echelon>(f, dim, num.size());
    for (const auto& d : den) system->insert(d, Vec(num.size(), 0));
    for (const auto& v : num) {
      Vec tag(num.size(), 0);
      tag[reps.size()] = 1;
      if (system->insert(v, tag)) reps.push_back(v);
    }
  }

  /// Coordinates of v (assumed to lie in num) on the representatives.
  Vec coordinates(Vec v) const {
    Vec c = system->reduce(v);
    c.resize(reps.size());
    return c;
  }
};

// Degree-q data with generators sorted by level.
struct Degree {
  std::vector<std::size_t> order;  // sorted position -> generator
  std::vector<int> sorted_levels;
  std::vector<Vec> boundary_cols;  // ∂ of each sorted generator, in sorted coordinates of q-1

  std::size_t size() const { return order.size(); }
  std::size_t prefix(int s) const {
    return static_cast<std::size_t>(std::upper_bound(sorted_levels.begin(), sorted_levels.end(), s) -
                                    sorted_levels.begin());
  }
};

class PageBuilder {
 public:
  PageBuilder(const FilteredComplex& f, const Context& ctx) : f_(f), fp_{f.prime()} {
    const auto& c = f.complex();
    for (int q = c.qmin(); q <= c.qmax(); ++q) {
      if (c.rank(q) > ctx.limits.max_dense_generators)
        throw ResourceLimitError("degree " + std::to_string(q) + " has " + std::to_string(c.rank(q)) +
                                 " generators; spectral pages are capped at " +
                                 std::to_string(ctx.limits.max_dense_generators));
    }
    for (int q = c.qmin(); q <= c.qmax(); ++q) {
      Degree d;
      d.order.resize(c.rank(q));
      std::iota(d.order.begin(), d.order.end(), 0);
      const auto& lv = f.levels(q);
      std::stable_sort(d.order.begin(), d.order.end(), [&](std::size_t a, std::size_t b) { return lv[a] < lv[b]; });
      for (auto k : d.order) d.sorted_levels.push_back(lv[k]);
      degrees_[q] = std::move(d);
    }
    for (int q = c.qmin(); q <= c.qmax(); ++q) {
      auto& d = degrees_[q];
      const std::size_t rows = c.rank(q - 1);
      std::vector<std::size_t> pos(rows);
      if (rows)
        for (std::size_t i = 0; i < rows; ++i) pos[degrees_[q - 1].order[i]] = i;
      std::vector<std::size_t> sorted_pos(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) sorted_pos[d.order[i]] = i;
      d.boundary_cols.assign(d.size(), Vec(rows, 0));
      if (rows)
        for (const auto& e : c.boundary(q).entries())
          d.boundary_cols[sorted_pos[e.col]][pos[e.row]] = e.value.get_ui() % fp_.p;
    }
  }

  /// Z^r_s in degree q: x in F_s with ∂x in F_{s-r}.
  std::vector<Vec> cycles(int q, int s, int r) const {
    auto it = degrees_.find(q);
    if (it == degrees_.end()) return {};
    const auto& d = it->second;
    const std::size_t k = d.prefix(s);
    std::vector<Vec> out;
    const std::size_t rows = d.boundary_cols.empty() ? 0 : d.boundary_cols[0].size();
    const std::size_t lo = degrees_.count(q - 1) ? degrees_.at(q - 1).prefix(s - r) : 0;
    if (rows == 0 || lo >= rows) {
      for (std::size_t j = 0; j < k; ++j) {
        Vec e(d.size(), 0);
        e[j] = 1;
        out.push_back(std::move(e));
      }
      return out;
    }
    // Kernel of the rows >= lo of ∂ restricted to the first k columns.
    Echelon ech(fp_, rows - lo, k);
    for (std::size_t j = 0; j < k; ++j) {
      Vec v(d.boundary_cols[j].begin() + static_cast<long>(lo), d.boundary_cols[j].end());
      Vec tag(k, 0);
      tag[j] = 1;
      Vec probe = v;
      Vec used = ech.reduce(probe);
      if (std::all_of(probe.begin(), probe.end(), [](std::uint64_t x) { return x == 0; })) {
        // tag - used is a kernel vector.
        Vec x(d.size(), 0);
        for (std::size_t t = 0; t < k; ++t) x[t] = fp_.sub(tag[t], used[t]);
        out.push_back(std::move(x));
      } else {
        ech.insert(std::move(v), std::move(tag));
      }
    }
    return out;
  }

  Vec apply_boundary(int q, const Vec& x) const {
    const auto& d = degrees_.at(q);
    const std::size_t rows = d.boundary_cols.empty() ? 0 : d.boundary_cols[0].size();
    Vec y(rows, 0);
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j]) fp_.axpy(y, fp_.p - x[j], d.boundary_cols[j]);
    return y;
  }

  std::optional<Quotient> term(int q, int s, int r) const {
    auto it = degrees_.find(q);
    if (it == degrees_.end()) return std::nullopt;
    const auto& d = it->second;
    if (d.prefix(s) == d.prefix(s - 1)) return std::nullopt;
    auto num = cycles(q, s, r);
    auto den = cycles(q, s - 1, r - 1);
    if (degrees_.count(q + 1))
      for (const auto& z : cycles(q + 1, s + r - 1, r - 1)) {
        Vec b = apply_boundary(q + 1, z);
        if (std::any_of(b.begin(), b.end(), [](std::uint64_t x) { return x != 0; })) den.push_back(std::move(b));
      }
    return Quotient(fp_, d.size(), den, num);
  }

  SpectralPage build(int r) const {
    SpectralPage page;
    page.r = r;
    page.p = fp_.p;
    std::map<std::pair<int, int>, Quotient> terms;  // keyed by (q, s)
    const auto& c = f_.complex();
    for (int q = c.qmin(); q <= c.qmax(); ++q)
      for (int s = f_.min_level(); s <= f_.max_level(); ++s) {
        auto t = term(q, s, r);
        if (!t || t->reps.empty()) continue;
        page.dims[{s, q - s}] = t->reps.size();
        terms.emplace(std::make_pair(q, s), std::move(*t));
      }
    for (const auto& [key, src] : terms) {
      auto [q, s] = key;
      auto dst = terms.find({q - 1, s - r});
      if (dst == terms.end()) continue;
      Differential diff;
      diff.s = s;
      diff.t = q - s;
      diff.matrix.assign(dst->second.reps.size(), std::vector<std::uint64_t>(src.reps.size(), 0));
      bool nonzero = false;
      for (std::size_t j = 0; j < src.reps.size(); ++j) {
        auto coords = dst->second.coordinates(apply_boundary(q, src.reps[j]));
        for (std::size_t i = 0; i < coords.size(); ++i) {
          diff.matrix[i][j] = coords[i];
          nonzero |= coords[i] != 0;
        }
      }
      if (nonzero) page.differentials.push_back(std::move(diff));
    }
    return page;
  }

 private:
  const FilteredComplex& f_;
  Fp fp_;
  std::map<int, Degree> degrees_;
};

}  // namespace

FilteredComplex FilteredComplex::make(ChainComplex c, std::map<int, std::vector<int>> levels) {
  if (c.ring().kind != complexes::Ring::Kind::Fp) throw ArgumentError("filtered complexes must be over F_p");
  if (c.ring().p >= (1ULL << 31)) throw ArgumentError("spectral pages need p < 2^31");
  FilteredComplex f;
  bool any = false;
  for (int q = c.qmin(); q <= c.qmax(); ++q) {
    auto& lv = levels[q];
    if (lv.size() != c.rank(q))
      throw ArgumentError("degree " + std::to_string(q) + " has " + std::to_string(c.rank(q)) +
                          " generators but " + std::to_string(lv.size()) + " filtration levels");
    for (int l : lv) {
      f.min_level_ = any ? std::min(f.min_level_, l) : l;
      f.max_level_ = any ? std::max(f.max_level_, l) : l;
      any = true;
    }
  }
  for (int q = c.qmin() + 1; q <= c.qmax(); ++q)
    for (const auto& e : c.boundary(q).entries())
      if (levels[q - 1][e.row] > levels[q][e.col])
        throw ArgumentError("boundary raises the filtration level of generator " + std::to_string(e.col) +
                            " in degree " + std::to_string(q));
  f.complex_ = std::move(c);
  f.levels_ = std::move(levels);
  return f;
}

const std::vector<int>& FilteredComplex::levels(int q) const {
  static const std::vector<int> empty;
  auto it = levels_.find(q);
  return it == levels_.end() ? empty : it->second;
}

FilteredComplex skeletal_filtration(const delta::DeltaSet& y, std::uint64_t p) {
  auto c = delta::chains_of_realization(y, complexes::Ring::prime_field(p));
  std::map<int, std::vector<int>> levels;
  for (int q = c.qmin(); q <= c.qmax(); ++q) levels[q].assign(c.rank(q), q);
  return FilteredComplex::make(std::move(c), std::move(levels));
}

FilteredComplex augmented_filtration(const delta::DeltaSet& y, std::uint64_t p) {
  auto c = delta::augmented_chains(y, complexes::Ring::prime_field(p));
  std::map<int, std::vector<int>> levels;
  for (int q = c.qmin(); q <= c.qmax(); ++q) levels[q].assign(c.rank(q), q);
  return FilteredComplex::make(std::move(c), std::move(levels));
}

FilteredComplex map_filtration(const delta::DeltaMap& f, std::uint64_t p) {
  auto cone = complexes::mapping_cone(delta::augmented_chain_map(f, complexes::Ring::prime_field(p)));
  const auto& tgt_ranks = *f.target;
  std::map<int, std::vector<int>> levels;
  for (int q = cone.qmin(); q <= cone.qmax(); ++q) {
    // Target simplices of degree q first, then source simplices of degree q-1.
    const std::size_t nt = q == -1 ? tgt_ranks.base_size() : (q >= 0 ? tgt_ranks.level_size(static_cast<std::size_t>(q)) : 0);
    auto& lv = levels[q];
    lv.assign(nt, q);
    lv.resize(cone.rank(q), q - 1);
  }
  return FilteredComplex::make(std::move(cone), std::move(levels));
}

std::size_t SpectralPage::dim(int s, int t) const {
  auto it = dims.find({s, t});
  return it == dims.end() ? 0 : it->second;
}

std::size_t SpectralPage::total_dim(int q) const {
  std::size_t total = 0;
  for (const auto& [st, d] : dims)
    if (st.first + st.second == q) total += d;
  return total;
}

SpectralPage page(const FilteredComplex& f, int r, const Context& ctx) {
  if (r < 1) throw ArgumentError("page index must be at least 1");
  return PageBuilder(f, ctx).build(r);
}

int limit_index(const FilteredComplex& f) { return std::max(1, f.max_level() - f.min_level() + 1); }

SpectralPage limit_page(const FilteredComplex& f, const Context& ctx) { return page(f, limit_index(f), ctx); }

SpectralPage augmented_page(const delta::DeltaSet& y, std::uint64_t p, int r, const Context& ctx) {
  return page(augmented_filtration(y, p), r, ctx);
}

SpectralPage map_page(const delta::DeltaMap& f, std::uint64_t p, int r, const Context& ctx) {
  return page(map_filtration(f, p), r, ctx);
}

}  // namespace hstab::spectral
