#include "hstab/groups.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>

#include "hstab/error.hpp"

namespace hstab::groups {

namespace {

Permutation identity_perm(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// x ↦ b(a(x)).
Permutation then(const Permutation& a, const Permutation& b) {
  Permutation r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r[x] = b[a[x]];
  return r;
}

std::size_t checked_power(std::size_t base, int exp, std::size_t cap) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

std::size_t factorial_capped(std::size_t n, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t k = 2; k <= n; ++k) {
    if (r > cap / k) return cap + 1;
    r *= k;
  }
  return r;
}

void check_group_size(std::size_t order, const std::string& name, const Limits& limits) {
  if (order > limits.max_group_order)
    throw ResourceLimitError("group " + name + " has order above the cap of " + std::to_string(limits.max_group_order));
}

}  // namespace

std::string to_cycle_string(const Permutation& p) {
  std::string s;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start] || p[start] == start) continue;
    s += "(";
    for (std::size_t x = start; !seen[x]; x = p[x]) {
      seen[x] = true;
      if (x != start) s += " ";
      s += std::to_string(x + 1);
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

Permutation parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t largest = 0;
  std::size_t i = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("permutation '" + std::string(text) + "' at column " + std::to_string(i + 1) + ": " + what);
  };
  auto skip_space = [&] {
    while (i < text.size() && text[i] == ' ') ++i;
  };
  skip_space();
  if (i == text.size()) fail("empty permutation");
  while (i < text.size()) {
    if (text[i] != '(') fail("expected '('");
    ++i;
    std::vector<std::size_t> cycle;
    while (true) {
      while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
      if (i == text.size()) fail("unclosed cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] < '0' || text[i] > '9') fail("expected a letter number");
      std::size_t v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        if (v > 255) fail("letters are limited to 1..255");
        ++i;
      }
      if (v == 0) fail("letters start at 1");
      if (std::find(cycle.begin(), cycle.end(), v - 1) != cycle.end()) fail("repeated letter in a cycle");
      cycle.push_back(v - 1);
      largest = std::max(largest, v);
    }
    cycles.push_back(std::move(cycle));
    skip_space();
  }
  if (degree == 0) degree = std::max<std::size_t>(largest, 1);
  if (largest > degree) throw ParseError("permutation '" + std::string(text) + "' moves letters beyond " + std::to_string(degree));
  // Cycles apply left to right.
  Permutation p = identity_perm(degree);
  for (const auto& c : cycles) {
    Permutation step = identity_perm(degree);
    for (std::size_t k = 0; k < c.size(); ++k) step[c[k]] = static_cast<std::uint8_t>(c[(k + 1) % c.size()]);
    p = then(p, step);
  }
  return p;
}

FiniteGroup FiniteGroup::generated_by(std::vector<Permutation> generators, std::size_t degree, std::string name,
                                      const Limits& limits) {
  if (degree == 0 || degree > 255) throw ArgumentError("permutation degree must be in 1..255");
  for (const auto& g : generators) {
    if (g.size() != degree) throw ArgumentError("generator has the wrong degree");
    std::vector<bool> hit(degree, false);
    for (auto x : g) {
      if (x >= degree || hit[x]) throw ArgumentError("generator is not a permutation");
      hit[x] = true;
    }
  }
  FiniteGroup G;
  G.name_ = std::move(name);
  G.degree_ = degree;
  G.generators_ = generators;
  std::map<Permutation, std::size_t> seen;
  std::deque<Permutation> queue{identity_perm(degree)};
  seen[queue.front()] = 0;
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      auto y = then(x, g);
      if (seen.emplace(y, 0).second) {
        check_group_size(seen.size(), G.name_, limits);
        queue.push_back(std::move(y));
      }
    }
  }
  std::size_t k = 0;
  for (auto& [perm, idx] : seen) {
    idx = k++;
    G.elements_.push_back(perm);
  }
  const std::size_t n = G.elements_.size();
  G.identity_ = seen.at(identity_perm(degree));
  G.table_.resize(n * n);
  G.inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t c = seen.at(then(G.elements_[a], G.elements_[b]));
      G.table_[a * n + b] = c;
      if (c == G.identity_) G.inverse_[a] = b;
    }
  return G;
}

std::optional<std::size_t> FiniteGroup::find(const Permutation& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

FiniteGroup symmetric_group(std::size_t n, const Limits& limits) {
  if (n == 0) throw ArgumentError("symmetric group needs n >= 1");
  const std::string name = "S" + std::to_string(n);
  check_group_size(factorial_capped(n, limits.max_group_order), name, limits);
  std::vector<Permutation> gens;
  if (n >= 2) {
    auto swap = identity_perm(n);
    std::swap(swap[0], swap[1]);
    gens.push_back(swap);
    Permutation cycle(n);
    for (std::size_t x = 0; x < n; ++x) cycle[x] = static_cast<std::uint8_t>((x + 1) % n);
    gens.push_back(cycle);
  }
  return FiniteGroup::generated_by(std::move(gens), n, name, limits);
}

FiniteGroup alternating_group(std::size_t n, const Limits& limits) {
  if (n == 0) throw ArgumentError("alternating group needs n >= 1");
  const std::string name = "A" + std::to_string(n);
  check_group_size(n >= 2 ? factorial_capped(n, 2 * limits.max_group_order) / 2 : 1, name, limits);
  std::vector<Permutation> gens;
  for (std::size_t i = 2; i < n; ++i) {
    auto c = identity_perm(n);
    c[0] = 1;
    c[1] = static_cast<std::uint8_t>(i);
    c[i] = 0;
    gens.push_back(c);
  }
  return FiniteGroup::generated_by(std::move(gens), n, name, limits);
}

FiniteGroup parse_group(std::string_view spec, const Limits& limits) {
  if (spec.size() >= 2 && (spec[0] == 'A' || spec[0] == 'S') &&
      std::all_of(spec.begin() + 1, spec.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    if (spec.size() > 4) throw ResourceLimitError("group " + std::string(spec) + " is too large");
    const std::size_t n = std::stoul(std::string(spec.substr(1)));
    return spec[0] == 'A' ? alternating_group(n, limits) : symmetric_group(n, limits);
  }
  // Split on commas outside parentheses.
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : spec) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (depth != 0) throw ParseError("group spec '" + std::string(spec) + "' has unbalanced parentheses");
  std::size_t degree = 1;
  for (const auto& p : parts) degree = std::max(degree, parse_cycles(p).size());
  std::vector<Permutation> gens;
  for (const auto& p : parts) gens.push_back(parse_cycles(p, degree));
  return FiniteGroup::generated_by(std::move(gens), degree, std::string(spec), limits);
}

ChainComplex bar_complex(const FiniteGroup& g, int top, const Limits& limits) {
  if (top < 0) throw ArgumentError("bar complex needs a non-negative top degree");
  const std::size_t n = g.order();
  if (checked_power(n, top, limits.max_bar_chains) > limits.max_bar_chains)
    throw ResourceLimitError("bar complex of " + g.name() + " in degree " + std::to_string(top) + " exceeds " +
                             std::to_string(limits.max_bar_chains) + " chains");
  std::vector<std::size_t> ranks;
  for (int k = 0; k <= top; ++k) ranks.push_back(checked_power(n, k, limits.max_bar_chains));
  std::map<int, linalg::SparseIntegerMatrix> d;
  std::vector<std::size_t> digits;
  for (int k = 1; k <= top; ++k) {
    const std::size_t cols = ranks[static_cast<std::size_t>(k)];
    const std::size_t rows = ranks[static_cast<std::size_t>(k) - 1];
    std::vector<linalg::Entry> e;
    e.reserve(cols * static_cast<std::size_t>(k + 1));
    digits.assign(static_cast<std::size_t>(k), 0);
    auto encode = [&](const std::vector<std::size_t>& w) {
      std::size_t idx = 0;
      for (auto x : w) idx = idx * n + x;
      return idx;
    };
    std::vector<std::size_t> face;
    for (std::size_t col = 0; col < cols; ++col) {
      // digits = base-n expansion of col, most significant first.
      std::size_t rest = col;
      for (int i = k - 1; i >= 0; --i) {
        digits[static_cast<std::size_t>(i)] = rest % n;
        rest /= n;
      }
      face.assign(digits.begin() + 1, digits.end());
      e.push_back({encode(face), col, Integer(1)});
      for (int i = 1; i < k; ++i) {
        face.clear();
        for (int j = 0; j < k; ++j) {
          if (j == i) continue;
          face.push_back(j == i - 1 ? g.multiply(digits[static_cast<std::size_t>(j)], digits[static_cast<std::size_t>(i)])
                                    : digits[static_cast<std::size_t>(j)]);
        }
        e.push_back({encode(face), col, Integer(i % 2 ? -1 : 1)});
      }
      face.assign(digits.begin(), digits.end() - 1);
      e.push_back({encode(face), col, Integer(k % 2 ? -1 : 1)});
    }
    if (e.size() > limits.max_entries)
      throw ResourceLimitError("bar complex of " + g.name() + " has too many boundary entries");
    d[k] = linalg::SparseIntegerMatrix::from_triplets(rows, cols, std::move(e));
  }
  return ChainComplex::make(complexes::Ring::integers(), 0, std::move(ranks), std::move(d));
}

HomologyGroup group_homology(const FiniteGroup& g, int q, int top, const Context& ctx) {
  if (q < 0) throw ArgumentError("homology degree must be non-negative");
  if (top < 0) top = q + 1;
  if (q >= top) throw ArgumentError("the bar complex truncated at degree " + std::to_string(top) +
                                    " only determines homology below it");
  return complexes::homology(bar_complex(g, top, ctx.limits), q, ctx);
}

GroupHomomorphism inclusion(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.degree() > h.degree()) throw ArgumentError(g.name() + " acts on more letters than " + h.name());
  GroupHomomorphism f{&g, &h, {}};
  for (std::size_t i = 0; i < g.order(); ++i) {
    Permutation p = g.element(i);
    for (std::size_t x = p.size(); x < h.degree(); ++x) p.push_back(static_cast<std::uint8_t>(x));
    auto j = h.find(p);
    if (!j) throw ArgumentError(to_cycle_string(g.element(i)) + " is not an element of " + h.name());
    f.images.push_back(*j);
  }
  return f;
}

void validate_homomorphism(const GroupHomomorphism& f) {
  if (!f.source || !f.target) throw ArgumentError("homomorphism needs a source and a target");
  const auto& g = *f.source;
  const auto& h = *f.target;
  if (f.images.size() != g.order()) throw ArgumentError("homomorphism has the wrong number of images");
  for (auto x : f.images)
    if (x >= h.order()) throw ArgumentError("homomorphism image out of range");
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      if (f.images[g.multiply(a, b)] != h.multiply(f.images[a], f.images[b]))
        throw ArgumentError("map is not a homomorphism at " + to_cycle_string(g.element(a)) + ", " +
                            to_cycle_string(g.element(b)));
}

complexes::ChainMap bar_map(const GroupHomomorphism& f, int top, const Limits& limits) {
  validate_homomorphism(f);
  auto s = std::make_shared<const ChainComplex>(bar_complex(*f.source, top, limits));
  auto t = std::make_shared<const ChainComplex>(bar_complex(*f.target, top, limits));
  const std::size_t ns = f.source->order(), nt = f.target->order();
  std::map<int, linalg::SparseIntegerMatrix> comps;
  for (int k = 0; k <= top; ++k) {
    std::vector<linalg::Entry> e;
    for (std::size_t col = 0; col < s->rank(k); ++col) {
      std::size_t rest = col, row = 0, scale = 1;
      for (int i = 0; i < k; ++i) {
        row += f.images[rest % ns] * scale;
        rest /= ns;
        scale *= nt;
      }
      e.push_back({row, col, Integer(1)});
    }
    comps[k] = linalg::SparseIntegerMatrix::from_triplets(t->rank(k), s->rank(k), std::move(e));
  }
  return complexes::ChainMap::make(s, t, std::move(comps));
}

complexes::InducedMap induced_map(const GroupHomomorphism& f, int q, int top, const Context& ctx) {
  if (top < 0) top = q + 1;
  if (q < 0 || q >= top) throw ArgumentError("induced map degree must lie below the truncation");
  return complexes::induced_map_on_homology(bar_map(f, top, ctx.limits), q, ctx);
}

}  // namespace hstab::groups
