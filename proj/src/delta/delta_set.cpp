#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "hstab/delta.hpp"
#include "hstab/error.hpp"

namespace hstab::delta {

namespace {

using Word = std::vector<int>;

void collect_words(std::size_t n, std::size_t length, Word& cur, std::vector<bool>& used, std::vector<Word>& out) {
  if (cur.size() == length) {
    out.push_back(cur);
    return;
  }
  for (int letter = 1; letter <= static_cast<int>(n); ++letter) {
    if (used[static_cast<std::size_t>(letter)]) continue;
    used[static_cast<std::size_t>(letter)] = true;
    cur.push_back(letter);
    collect_words(n, length, cur, used, out);
    cur.pop_back();
    used[static_cast<std::size_t>(letter)] = false;
  }
}

// Lexicographic list of the injective words of a given length.
std::vector<Word> words_of_length(std::size_t n, std::size_t length) {
  std::vector<Word> out;
  Word cur;
  std::vector<bool> used(n + 1, false);
  collect_words(n, length, cur, used, out);
  return out;
}

std::uint64_t encode(const Word& w, std::size_t n) {
  std::uint64_t code = 0;
  for (int x : w) code = code * (n + 1) + static_cast<std::uint64_t>(x);
  return code;
}

std::string word_label(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(w[i]);
  }
  return s;
}

}  // namespace

DeltaSet DeltaSet::make(std::vector<std::vector<std::vector<std::size_t>>> faces) {
  DeltaSet y;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    y.sizes_.push_back(faces[i].size());
    std::vector<std::uint32_t> flat;
    flat.reserve(faces[i].size() * (i + 1));
    for (std::size_t k = 0; k < faces[i].size(); ++k) {
      const auto& f = faces[i][k];
      if (i == 0) {
        if (!f.empty()) throw ArgumentError("0-simplex " + std::to_string(k) + " has faces");
        flat.push_back(0);
        continue;
      }
      if (f.size() != i + 1)
        throw ArgumentError("simplex " + std::to_string(k) + " at level " + std::to_string(i) + " has " +
                            std::to_string(f.size()) + " faces, expected " + std::to_string(i + 1));
      for (auto v : f) flat.push_back(static_cast<std::uint32_t>(v));
    }
    y.faces_.push_back(std::move(flat));
  }
  while (!y.sizes_.empty() && y.sizes_.back() == 0) {
    y.sizes_.pop_back();
    y.faces_.pop_back();
  }
  y.labels_.resize(y.sizes_.size());
  return y;
}

DeltaSet DeltaSet::make_augmented(std::vector<std::vector<std::vector<std::size_t>>> faces,
                                  std::vector<std::size_t> augmentation, std::size_t base_size) {
  DeltaSet y = make(std::move(faces));
  if (augmentation.size() != y.level_size(0))
    throw ArgumentError("augmentation has " + std::to_string(augmentation.size()) + " entries for " +
                        std::to_string(y.level_size(0)) + " vertices");
  y.augmented_ = true;
  y.base_size_ = base_size;
  y.augmentation_ = std::move(augmentation);
  return y;
}

void DeltaSet::set_labels(std::size_t level, std::vector<std::string> labels) {
  if (level >= sizes_.size() || labels.size() != sizes_[level]) throw ArgumentError("label count mismatch");
  labels_[level] = std::move(labels);
}

const std::vector<std::string>* DeltaSet::labels(std::size_t level) const {
  if (level >= labels_.size() || labels_[level].empty()) return nullptr;
  return &labels_[level];
}

DeltaValidation validate_delta_set(const DeltaSet& y) {
  auto fail = [](std::size_t level, std::size_t k, std::string msg) { return DeltaValidation{false, level, k, std::move(msg)}; };
  for (std::size_t i = 1; i < y.level_count(); ++i)
    for (std::size_t k = 0; k < y.level_size(i); ++k)
      for (std::size_t j = 0; j <= i; ++j)
        if (y.face(i, k, j) >= y.level_size(i - 1))
          return fail(i, k,
                      "face " + std::to_string(j + 1) + " of simplex " + std::to_string(k) + " at level " +
                          std::to_string(i) + " is out of range");
  if (y.augmented())
    for (std::size_t v = 0; v < y.level_size(0); ++v)
      if (y.augmentation(v) >= y.base_size())
        return fail(0, v, "augmentation of vertex " + std::to_string(v) + " is out of range");

  for (std::size_t i = 2; i < y.level_count(); ++i)
    for (std::size_t k = 0; k < y.level_size(i); ++k)
      for (std::size_t b = 1; b <= i; ++b)
        for (std::size_t a = 0; a < b; ++a) {
          const std::size_t lhs = y.face(i - 1, y.face(i, k, b), a);
          const std::size_t rhs = y.face(i - 1, y.face(i, k, a), b - 1);
          if (lhs != rhs)
            return fail(i, k,
                        "simplicial identity d_" + std::to_string(a + 1) + " d_" + std::to_string(b + 1) + " = d_" +
                            std::to_string(b) + " d_" + std::to_string(a + 1) + " fails on simplex " +
                            std::to_string(k) + " at level " + std::to_string(i));
        }
  if (y.augmented() && y.level_count() > 1)
    for (std::size_t k = 0; k < y.level_size(1); ++k)
      if (y.augmentation(y.face(1, k, 0)) != y.augmentation(y.face(1, k, 1)))
        return fail(1, k, "augmentation does not equalize the faces of 1-simplex " + std::to_string(k));
  return {};
}

namespace {

void require_valid(const DeltaSet& y) {
  auto v = validate_delta_set(y);
  if (!v.ok) throw ArgumentError("invalid delta set: " + v.message);
}

std::map<int, complexes::SparseIntegerMatrix> boundaries(const DeltaSet& y) {
  std::map<int, complexes::SparseIntegerMatrix> d;
  for (std::size_t i = 1; i < y.level_count(); ++i) {
    std::vector<linalg::Entry> e;
    e.reserve(y.level_size(i) * (i + 1));
    for (std::size_t k = 0; k < y.level_size(i); ++k)
      for (std::size_t j = 0; j <= i; ++j) e.push_back({y.face(i, k, j), k, Integer(j % 2 ? -1 : 1)});
    d[static_cast<int>(i)] = complexes::SparseIntegerMatrix::from_triplets(y.level_size(i - 1), y.level_size(i), std::move(e));
  }
  return d;
}

void copy_labels(const DeltaSet& y, ChainComplex& c) {
  for (std::size_t i = 0; i < y.level_count(); ++i)
    if (auto l = y.labels(i)) c.set_labels(static_cast<int>(i), *l);
}

}  // namespace

ChainComplex chains_of_realization(const DeltaSet& y, Ring ring) {
  require_valid(y);
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i < y.level_count(); ++i) ranks.push_back(y.level_size(i));
  auto c = ChainComplex::make(ring, 0, std::move(ranks), boundaries(y));
  copy_labels(y, c);
  return c;
}

ChainComplex augmented_chains(const DeltaSet& y, Ring ring) {
  if (!y.augmented()) throw ArgumentError("delta set is not augmented");
  require_valid(y);
  std::vector<std::size_t> ranks{y.base_size()};
  for (std::size_t i = 0; i < y.level_count(); ++i) ranks.push_back(y.level_size(i));
  auto d = boundaries(y);
  std::vector<linalg::Entry> e;
  for (std::size_t v = 0; v < y.level_size(0); ++v) e.push_back({y.augmentation(v), v, Integer(1)});
  d[0] = complexes::SparseIntegerMatrix::from_triplets(y.base_size(), y.level_size(0), std::move(e));
  auto c = ChainComplex::make(ring, -1, std::move(ranks), std::move(d));
  copy_labels(y, c);
  return c;
}

DeltaSet injective_words(std::size_t n, const Limits& limits) {
  if (n == 0) throw ArgumentError("injective words need n >= 1");
  if (n > 12) throw ResourceLimitError("injective words complex for n = " + std::to_string(n) + " is too large");
  // Total face entries: Σ_i (i+1) n!/(n-i-1)!.
  std::size_t total = 0, count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    count *= n - i;
    total += (i + 1) * count;
  }
  if (total > limits.max_entries)
    throw ResourceLimitError("injective words complex for n = " + std::to_string(n) + " needs " +
                             std::to_string(total) + " face entries, cap is " + std::to_string(limits.max_entries));

  std::vector<std::vector<Word>> levels;
  for (std::size_t len = 1; len <= n; ++len) levels.push_back(words_of_length(n, len));
  std::vector<std::vector<std::vector<std::size_t>>> faces(n);
  std::unordered_map<std::uint64_t, std::size_t> prev_index;
  for (std::size_t k = 0; k < levels[0].size(); ++k) {
    faces[0].emplace_back();
    prev_index[encode(levels[0][k], n)] = k;
  }
  for (std::size_t i = 1; i < n; ++i) {
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::size_t k = 0; k < levels[i].size(); ++k) {
      const Word& w = levels[i][k];
      index[encode(w, n)] = k;
      std::vector<std::size_t> f;
      for (std::size_t j = 0; j <= i; ++j) {
        Word face = w;
        face.erase(face.begin() + static_cast<long>(j));
        f.push_back(prev_index.at(encode(face, n)));
      }
      faces[i].push_back(std::move(f));
    }
    prev_index = std::move(index);
  }
  auto y = DeltaSet::make_augmented(std::move(faces), std::vector<std::size_t>(n, 0), 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> labels;
    labels.reserve(levels[i].size());
    for (const auto& w : levels[i]) labels.push_back(word_label(w));
    y.set_labels(i, std::move(labels));
  }
  return y;
}

std::vector<int> injective_word(std::size_t n, std::size_t level, std::size_t index) {
  // Unrank in lexicographic order: each position has (n - pos - 1)!/(n - level - 1)! completions.
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 1);
  std::vector<int> w;
  for (std::size_t pos = 0; pos <= level; ++pos) {
    std::size_t block = 1;
    for (std::size_t k = n - pos - 1; k > n - level - 1; --k) block *= k;
    const std::size_t choice = index / block;
    index %= block;
    if (choice >= remaining.size()) throw ArgumentError("injective word index out of range");
    w.push_back(remaining[choice]);
    remaining.erase(remaining.begin() + static_cast<long>(choice));
  }
  return w;
}

void validate_delta_map(const DeltaMap& f) {
  const auto& x = *f.source;
  const auto& y = *f.target;
  if (f.levels.size() < x.level_count()) throw ArgumentError("delta map is missing levels");
  for (std::size_t i = 0; i < x.level_count(); ++i) {
    if (f.levels[i].size() != x.level_size(i))
      throw ArgumentError("delta map level " + std::to_string(i) + " has the wrong size");
    for (std::size_t k = 0; k < x.level_size(i); ++k) {
      if (f.levels[i][k] >= y.level_size(i))
        throw ArgumentError("delta map level " + std::to_string(i) + " sends simplex " + std::to_string(k) +
                            " out of range");
      if (i == 0) continue;
      for (std::size_t j = 0; j <= i; ++j)
        if (f.levels[i - 1][x.face(i, k, j)] != y.face(i, f.levels[i][k], j))
          throw ArgumentError("delta map does not commute with face " + std::to_string(j + 1) + " at level " +
                              std::to_string(i));
    }
  }
  if (x.augmented() != y.augmented()) throw ArgumentError("delta map between augmented and plain delta sets");
  if (!x.augmented()) return;
  if (f.base.size() != x.base_size()) throw ArgumentError("delta map base level has the wrong size");
  for (auto b : f.base)
    if (b >= y.base_size()) throw ArgumentError("delta map base level sends a point out of range");
  for (std::size_t v = 0; v < x.level_size(0); ++v)
    if (y.augmentation(f.levels[0][v]) != f.base[x.augmentation(v)])
      throw ArgumentError("delta map does not commute with the augmentation at level 0");
}

DeltaMap injective_words_inclusion(std::size_t m, std::size_t n) {
  if (m > n) throw ArgumentError("inclusion needs m <= n");
  DeltaMap f;
  f.source = std::make_shared<const DeltaSet>(injective_words(m));
  f.target = std::make_shared<const DeltaSet>(injective_words(n));
  for (std::size_t i = 0; i < m; ++i) {
    // Index the target level by word.
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::size_t k = 0; k < f.target->level_size(i); ++k) index[encode(injective_word(n, i, k), n)] = k;
    std::vector<std::size_t> level;
    for (std::size_t k = 0; k < f.source->level_size(i); ++k) level.push_back(index.at(encode(injective_word(m, i, k), n)));
    f.levels.push_back(std::move(level));
  }
  f.base = {0};
  return f;
}

DeltaMap from_empty(std::shared_ptr<const DeltaSet> target) {
  DeltaMap f;
  f.source = std::make_shared<const DeltaSet>(DeltaSet::make_augmented({}, {}, 0));
  f.target = std::move(target);
  return f;
}

complexes::ChainMap augmented_chain_map(const DeltaMap& f, Ring ring) {
  validate_delta_map(f);
  auto s = std::make_shared<const ChainComplex>(augmented_chains(*f.source, ring));
  auto t = std::make_shared<const ChainComplex>(augmented_chains(*f.target, ring));
  std::map<int, complexes::SparseIntegerMatrix> comps;
  {
    std::vector<linalg::Entry> e;
    for (std::size_t b = 0; b < f.base.size(); ++b) e.push_back({f.base[b], b, Integer(1)});
    comps[-1] = complexes::SparseIntegerMatrix::from_triplets(t->rank(-1), s->rank(-1), std::move(e));
  }
  for (std::size_t i = 0; i < f.source->level_count(); ++i) {
    std::vector<linalg::Entry> e;
    for (std::size_t k = 0; k < f.levels[i].size(); ++k) e.push_back({f.levels[i][k], k, Integer(1)});
    comps[static_cast<int>(i)] =
        complexes::SparseIntegerMatrix::from_triplets(t->rank(static_cast<int>(i)), s->rank(static_cast<int>(i)), std::move(e));
  }
  return complexes::ChainMap::make(s, t, std::move(comps));
}

WedgeReport wedge_verify(std::size_t n, const Context& ctx) {
  WedgeReport r;
  r.n = n;
  auto y = injective_words(n, ctx.limits);
  auto c = augmented_chains(y);
  r.reduced = complexes::homology_range(c, -1, static_cast<int>(n) - 1, ctx);
  r.connectivity_ok = true;
  for (std::size_t i = 0; i + 1 < r.reduced.size(); ++i)
    if (!r.reduced[i].is_zero()) r.connectivity_ok = false;
  const auto& top = r.reduced.back();
  r.top_torsion_free = top.torsion.empty();
  r.top_rank = top.free_rank;
  r.reduced_euler = complexes::euler_characteristic(c);
  // χ of the augmented complex counts degree -1 with sign -1; only degree n-1 survives.
  const std::int64_t sign = (n - 1) % 2 == 0 ? 1 : -1;
  r.euler_consistent = sign * r.reduced_euler == static_cast<std::int64_t>(r.top_rank);
  return r;
}

}  // namespace hstab::delta
