#include "hstab/confspace.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <thread>

#include "hstab/error.hpp"

namespace hstab::confspace {

namespace {

using complexes::GroupRingEntry;
using complexes::GroupRingMatrix;
using complexes::SparseIntegerMatrix;
using K = CoefficientModule::Kind;

constexpr int max_shuffle_letters = 24;

std::vector<Composition> compositions_with_parts(std::size_t n, std::size_t k) {
  std::vector<Composition> out;
  Composition cur;
  // Parts in lexicographic order: recurse on the first part.
  auto rec = [&](auto&& self, std::size_t left, std::size_t parts) -> void {
    if (parts == 0) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (std::size_t a = 1; a + (parts - 1) <= left; ++a) {
      cur.push_back(static_cast<int>(a));
      self(self, left - a, parts - 1);
      cur.pop_back();
    }
  };
  rec(rec, n, k);
  return out;
}

using Column = std::map<std::size_t, GroupRingElement>;

std::vector<Column> columns_of(const GroupRingMatrix& m) {
  std::vector<Column> cols(m.cols());
  for (const auto& e : m.entries()) cols[e.col][e.row] += e.value;
  return cols;
}

void drop_zeros(Column& c) {
  std::erase_if(c, [](const auto& kv) { return kv.second.a == 0 && kv.second.b == 0; });
}

CoefficientModule trivial_of(const CoefficientModule& m) {
  CoefficientModule t;
  t.kind = m.kind == K::RegularF ? K::TrivialF : K::TrivialZ;
  t.p = m.p;
  return t;
}

bool uses_trivial_cover(std::size_t n, const CoefficientModule& m) { return m.is_regular() && n <= 1; }

void check_points(std::size_t n, const Limits& limits) {
  if (n == 0) throw ArgumentError("configuration model needs n >= 1");
  if (n > limits.max_points)
    throw ResourceLimitError("configuration model for n = " + std::to_string(n) + " exceeds the cap of " +
                             std::to_string(limits.max_points) + " points");
}

}  // namespace

ShuffleCount shuffle_counts(int b, int c) {
  if (b < 0 || c < 0) throw ArgumentError("shuffle block sizes must be non-negative");
  if (b + c > max_shuffle_letters)
    throw ResourceLimitError("shuffles of " + std::to_string(b + c) + " letters are too many to enumerate");
  ShuffleCount out;
  // Each shuffle is the set of slots taken by the first block; its sign is
  // the parity of the number of (second block, first block) inversions.
  const int total = b + c;
  auto rec = [&](auto&& self, int j, int from, int inversions) -> void {
    if (j == b) {
      (inversions % 2 ? out.odd : out.even) += 1;
      return;
    }
    for (int s = from; s <= total - (b - j); ++s) self(self, j + 1, s + 1, inversions + (s - j));
  };
  rec(rec, 0, 0, 0);
  return out;
}

std::string to_string(const Composition& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

std::pair<int, std::size_t> FNComplex::locate(const Composition& c) const {
  int sum = 0;
  for (int a : c) {
    if (a < 1) throw ArgumentError("composition parts must be positive");
    sum += a;
  }
  if (static_cast<std::size_t>(sum) != n || c.empty()) throw ArgumentError("composition " + to_string(c) + " does not sum to n");
  const int q = static_cast<int>(n - c.size());
  const auto& gens = generators[static_cast<std::size_t>(q)];
  auto it = std::lower_bound(gens.begin(), gens.end(), c);
  return {q, static_cast<std::size_t>(it - gens.begin())};
}

FNComplex fn_complex(std::size_t n, const Limits& limits) {
  check_points(n, limits);
  FNComplex fn;
  fn.n = n;
  for (std::size_t q = 0; q < n; ++q) fn.generators.push_back(compositions_with_parts(n, n - q));

  std::vector<std::vector<ShuffleCount>> shuffles(n + 1, std::vector<ShuffleCount>(n + 1));
  for (std::size_t b = 1; b < n; ++b)
    for (std::size_t c = 1; b + c <= n; ++c) shuffles[b][c] = shuffle_counts(static_cast<int>(b), static_cast<int>(c));

  std::vector<std::size_t> ranks;
  for (const auto& g : fn.generators) ranks.push_back(g.size());
  std::map<int, GroupRingMatrix> boundaries;
  for (std::size_t q = 1; q < n; ++q) {
    std::vector<GroupRingEntry> e;
    const auto& lower = fn.generators[q - 1];
    for (std::size_t col = 0; col < fn.generators[q].size(); ++col) {
      const auto& comp = fn.generators[q][col];
      for (std::size_t i = 0; i < comp.size(); ++i) {
        const int a = comp[i];
        const long sign = i % 2 ? -1 : 1;
        for (int b = 1; b < a; ++b) {
          Composition split(comp.begin(), comp.begin() + static_cast<long>(i));
          split.push_back(b);
          split.push_back(a - b);
          split.insert(split.end(), comp.begin() + static_cast<long>(i) + 1, comp.end());
          const auto row = static_cast<std::size_t>(std::lower_bound(lower.begin(), lower.end(), split) - lower.begin());
          const auto& sc = shuffles[static_cast<std::size_t>(b)][static_cast<std::size_t>(a - b)];
          e.push_back({row, col, {Integer(sign) * Integer(sc.even), -Integer(sign) * Integer(sc.odd)}});
        }
      }
    }
    boundaries[static_cast<int>(q)] = GroupRingMatrix::from_triplets(lower.size(), fn.generators[q].size(), std::move(e));
  }
  auto c = ChainComplex::make_group_ring(0, std::move(ranks), std::move(boundaries));
  for (std::size_t q = 0; q < n; ++q) {
    std::vector<std::string> labels;
    for (const auto& comp : fn.generators[q]) labels.push_back(to_string(comp));
    c.set_labels(static_cast<int>(q), std::move(labels));
  }
  fn.complex = std::make_shared<const ChainComplex>(std::move(c));
  return fn;
}

std::shared_ptr<const ChainComplex> model(std::size_t n, const CoefficientModule& m, const Limits& limits) {
  auto fn = fn_complex(n, limits);
  return std::make_shared<const ChainComplex>(
      complexes::specialize(*fn.complex, uses_trivial_cover(n, m) ? trivial_of(m) : m));
}

std::vector<HomologyGroup> unordered_homology(std::size_t n, const CoefficientModule& m, const Context& ctx) {
  if (m.is_regular())
    throw ArgumentError("regular coefficients compute the oriented cover; use oriented homology instead");
  return complexes::homology_range(*model(n, m, ctx.limits), 0, static_cast<int>(n) - 1, ctx);
}

std::vector<HomologyGroup> oriented_homology(std::size_t n, const Ring& ring, const Context& ctx) {
  CoefficientModule m;
  if (ring.kind == Ring::Kind::Z) {
    m.kind = K::RegularZZ;
  } else if (ring.kind == Ring::Kind::Fp) {
    m.kind = K::RegularF;
    m.p = ring.p;
  } else {
    throw ArgumentError("oriented homology is computed over Z or F_p");
  }
  return complexes::homology_range(*model(n, m, ctx.limits), 0, static_cast<int>(n) - 1, ctx);
}

Stabilization stabilization_map(std::size_t n, const Limits& limits) {
  check_points(n + 1, limits);
  auto src = fn_complex(n, limits);
  auto tgt = fn_complex(n + 1, limits);
  Stabilization st;
  const std::vector<GroupRingElement> units = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

  // image[q][k]: row of (..., 1) in the target for source generator k.
  std::vector<std::vector<std::size_t>> image(n);
  for (std::size_t q = 0; q < n; ++q)
    for (const auto& comp : src.generators[q]) {
      auto ext = comp;
      ext.push_back(1);
      image[q].push_back(tgt.locate(ext).second);
    }

  st.units.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t count = src.generators[q].size();
    st.units[q].assign(count, units[0]);
    if (q == 0) continue;
    auto src_cols = columns_of(src.complex->group_ring_boundary(static_cast<int>(q)));
    auto tgt_cols = columns_of(tgt.complex->group_ring_boundary(static_cast<int>(q)));
    for (std::size_t k = 0; k < count; ++k) {
      // f(∂g) in the target.
      Column want;
      for (const auto& [row, coeff] : src_cols[k]) want[image[q - 1][row]] += coeff * st.units[q - 1][row];
      drop_zeros(want);
      const Column& have = tgt_cols[image[q][k]];
      bool found = false;
      for (const auto& u : units) {
        Column scaled;
        for (const auto& [row, coeff] : have) scaled[row] = coeff * u;
        drop_zeros(scaled);
        if (scaled == want) {
          st.units[q][k] = u;
          found = true;
          break;
        }
      }
      if (!found)
        throw Error("no unit correction makes the stabilization commute at generator " +
                    to_string(src.generators[q][k]));
      if (!(st.units[q][k] == units[0])) st.naive = false;
    }
  }

  std::map<int, GroupRingMatrix> comps;
  for (std::size_t q = 0; q < n; ++q) {
    std::vector<GroupRingEntry> e;
    for (std::size_t k = 0; k < image[q].size(); ++k) e.push_back({image[q][k], k, st.units[q][k]});
    comps[static_cast<int>(q)] =
        GroupRingMatrix::from_triplets(tgt.generators[q].size(), src.generators[q].size(), std::move(e));
  }
  st.map = ChainMap::make_group_ring(src.complex, tgt.complex, std::move(comps));
  return st;
}

ChainMap specialized_stabilization(std::size_t n, const CoefficientModule& m, const Context& ctx) {
  auto st = stabilization_map(n, ctx.limits);
  auto source = model(n, m, ctx.limits);
  auto target = model(n + 1, m, ctx.limits);
  if (!uses_trivial_cover(n, m) || uses_trivial_cover(n + 1, m))
    return complexes::specialize(st.map, m, std::move(source), std::move(target));
  // Trivial cover into the regular model: a + bt sends x to a·x + b·(tx).
  std::map<int, SparseIntegerMatrix> comps;
  for (int q = st.map.qmin(); q <= st.map.qmax(); ++q) {
    if (source->rank(q) == 0 || target->rank(q) == 0) continue;
    std::vector<linalg::Entry> e;
    for (const auto& x : st.map.group_ring_component(q).entries()) {
      if (x.value.a != 0) e.push_back({2 * x.row, x.col, x.value.a});
      if (x.value.b != 0) e.push_back({2 * x.row + 1, x.col, x.value.b});
    }
    comps[q] = SparseIntegerMatrix::from_triplets(target->rank(q), source->rank(q), std::move(e));
  }
  return ChainMap::make(std::move(source), std::move(target), std::move(comps));
}

ChainMap deck_involution(std::size_t n, const Limits& limits) {
  if (n < 2) throw ArgumentError("the deck involution needs n >= 2");
  auto c = model(n, CoefficientModule::parse("regular-z"), limits);
  std::map<int, SparseIntegerMatrix> comps;
  for (int q = c->qmin(); q <= c->qmax(); ++q) {
    std::vector<linalg::Entry> e;
    for (std::size_t i = 0; i < c->rank(q); i += 2) {
      e.push_back({i, i + 1, Integer(1)});
      e.push_back({i + 1, i, Integer(1)});
    }
    comps[q] = SparseIntegerMatrix::from_triplets(c->rank(q), c->rank(q), std::move(e));
  }
  return ChainMap::make(c, c, std::move(comps));
}

ChainComplex relative_complex(std::size_t n, const CoefficientModule& m, const Context& ctx) {
  return complexes::mapping_cone(specialized_stabilization(n, m, ctx));
}

std::string to_string(Family f) {
  switch (f) {
    case Family::Unordered:
      return "unordered";
    case Family::Oriented:
      return "oriented";
    case Family::SignTwisted:
      return "sign-twisted";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  if (text == "unordered" || text == "braid") return Family::Unordered;
  if (text == "oriented" || text == "alt-braid") return Family::Oriented;
  if (text == "sign-twisted") return Family::SignTwisted;
  throw ArgumentError("unknown family '" + std::string(text) + "'");
}

CoefficientModule default_module(Family f) {
  switch (f) {
    case Family::Unordered:
      return CoefficientModule::parse("trivial-z");
    case Family::Oriented:
      return CoefficientModule::parse("regular-z");
    case Family::SignTwisted:
      return CoefficientModule::parse("sign-fp:3");
  }
  return {};
}

Prediction predict(Family f, std::size_t n, int q) {
  const long nn = static_cast<long>(n);
  Prediction p;
  if (f == Family::Unordered) {
    p.iso = 2L * q <= nn - 2;
    p.surjective = 2L * q <= nn;
    p.relative_vanishes = 2L * q <= nn;
  } else {
    p.iso = 3L * q <= nn - 5;
    p.surjective = 3L * q <= nn - 2;
    p.relative_vanishes = 3L * q <= nn - 2;
  }
  return p;
}

namespace {

void check_family_module(Family f, const CoefficientModule& m) {
  const bool ok = f == Family::Unordered     ? (m.kind == K::TrivialZ || m.kind == K::TrivialF)
                  : f == Family::Oriented    ? m.is_regular()
                                             : (m.kind == K::SignZ || m.kind == K::SignF);
  if (!ok)
    throw ArgumentError("coefficients " + m.to_string() + " do not belong to the " + to_string(f) + " family");
}

std::vector<StabilityRow> stability_rows(Family family, std::size_t n, int q_max, const CoefficientModule& m,
                                         const Context& ctx) {
  auto s = specialized_stabilization(n, m, ctx);
  auto cone = complexes::mapping_cone(s);
  std::vector<StabilityRow> rows;
  for (int q = 0; q <= q_max; ++q) {
    auto im = complexes::induced_map_on_homology(s, q, ctx);
    StabilityRow r;
    r.n = n;
    r.q = q;
    r.source = im.source;
    r.target = im.target;
    r.map = im.classification;
    r.injective = im.injective;
    r.surjective = im.surjective;
    r.relative = complexes::homology(cone, q, ctx);
    r.predicted = predict(family, n, q);
    r.pass = (!r.predicted.iso || r.map == MapClass::Iso) && (!r.predicted.surjective || r.surjective) &&
             (!r.predicted.relative_vanishes || r.relative.is_zero());
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string describe_violation(const StabilityRow& r) {
  std::string s = "n=" + std::to_string(r.n) + " q=" + std::to_string(r.q) + ":";
  if (r.predicted.iso && r.map != MapClass::Iso) s += " predicted iso, got " + complexes::to_string(r.map) + ";";
  if (r.predicted.surjective && !r.surjective) s += " predicted surjective, got " + complexes::to_string(r.map) + ";";
  if (r.predicted.relative_vanishes && !r.relative.is_zero())
    s += " predicted vanishing relative homology, got " + r.relative.to_string() + ";";
  s.pop_back();
  return s;
}

}  // namespace

StabilityReport stability_report(Family family, std::size_t n_min, std::size_t n_max, int q_max,
                                 const CoefficientModule& m, const Context& ctx) {
  check_family_module(family, m);
  if (n_min < 1 || n_min > n_max) throw ArgumentError("stability range needs 1 <= n_min <= n_max");
  if (q_max < 0) throw ArgumentError("q_max must be non-negative");
  check_points(n_max + 1, ctx.limits);

  const std::size_t count = n_max - n_min + 1;
  std::vector<std::vector<StabilityRow>> per_n(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        per_n[i] = stability_rows(family, n_min + i, q_max, m, ctx);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(ctx.jobs, static_cast<unsigned>(count)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  StabilityReport report;
  report.family = family;
  report.module = m;
  for (auto& rows : per_n)
    for (auto& r : rows) {
      if (!r.pass) report.violations.push_back(describe_violation(r));
      report.rows.push_back(std::move(r));
    }
  return report;
}

DeckComparison compare_deck_stabilizations(std::size_t n, int q_max, const Context& ctx) {
  const auto m = CoefficientModule::parse("regular-z");
  auto s = specialized_stabilization(n, m, ctx);
  auto twisted = s.then(deck_involution(n + 1, ctx.limits));
  DeckComparison d;
  d.n = n;
  d.plain = complexes::hconn_upto(s, q_max, ctx);
  d.twisted = complexes::hconn_upto(twisted, q_max, ctx);
  return d;
}

CounterexampleReport counterexample_check(std::uint64_t p, std::size_t lambda, const Context& ctx) {
  if (p < 3 || !linalg::is_prime(p)) throw ArgumentError("counterexamples need an odd prime");
  if (lambda < 1) throw ArgumentError("lambda must be at least 1");
  CounterexampleReport r;
  r.p = p;
  r.lambda = lambda;
  r.n = lambda * p + 1;
  r.q = static_cast<int>(lambda * (p - 2));
  check_points(r.n + 1, ctx.limits);
  CoefficientModule m;
  m.kind = K::SignF;
  m.p = p;
  auto im = complexes::induced_map_on_homology(specialized_stabilization(r.n, m, ctx), r.q, ctx);
  r.source = im.source;
  r.target = im.target;
  r.map = im.classification;
  return r;
}

}  // namespace hstab::confspace
