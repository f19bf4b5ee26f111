#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "hstab/error.hpp"
#include "hstab/spectral.hpp"
#include "oracles.hpp"
#include "simplicial.hpp"

using namespace hstab;
using namespace hstab::spectral;
using complexes::ChainComplex;
using complexes::Ring;

namespace {

using Mat = std::vector<std::vector<long long>>;

// Dense column-reduced basis of the null space of m (rows x cols) over F_p.
std::vector<std::vector<long long>> null_space(Mat m, std::size_t cols, long long p) {
  const std::size_t rows = m.size();
  std::vector<long> pivot_of_col(cols, -1);
  std::size_t r = 0;
  auto inv = [&](long long a) {
    long long res = 1, e = p - 2;
    a %= p;
    while (e) {
      if (e & 1) res = res * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return res;
  };
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t k = r;
    while (k < rows && m[k][c] % p == 0) ++k;
    if (k == rows) continue;
    std::swap(m[k], m[r]);
    long long s = inv((m[r][c] % p + p) % p);
    for (auto& x : m[r]) x = (x % p + p) % p * s % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      long long f = (m[i][c] % p + p) % p;
      if (!f) continue;
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
    }
    pivot_of_col[c] = static_cast<long>(r++);
  }
  std::vector<std::vector<long long>> basis;
  for (std::size_t c = 0; c < cols; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<long long> v(cols, 0);
    v[c] = 1;
    for (std::size_t c2 = 0; c2 < cols; ++c2)
      if (pivot_of_col[c2] >= 0) v[c2] = (p - m[static_cast<std::size_t>(pivot_of_col[c2])][c]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

Mat dense(const linalg::SparseIntegerMatrix& m) {
  Mat d(m.rows(), std::vector<long long>(m.cols(), 0));
  for (const auto& e : m.entries()) d[e.row][e.col] = e.value.get_si();
  return d;
}

std::size_t rank_of_vectors(const std::vector<std::vector<long long>>& vs, long long p) {
  if (vs.empty() || vs[0].empty()) return 0;
  return oracle::rank_mod_p(vs, p);
}

// dim of the image of H_q(F_s) in H_q(C), computed from cycles and boundaries.
std::size_t filtered_homology_dim(const FilteredComplex& f, int q, int s) {
  const auto& c = f.complex();
  const long long p = static_cast<long long>(f.prime());
  const std::size_t n = c.rank(q);
  if (n == 0) return 0;
  std::vector<std::size_t> in_fs;
  for (std::size_t k = 0; k < n; ++k)
    if (f.level(q, k) <= s) in_fs.push_back(k);
  std::vector<std::vector<long long>> cycles;
  if (c.rank(q - 1) == 0) {
    for (auto k : in_fs) {
      std::vector<long long> v(n, 0);
      v[k] = 1;
      cycles.push_back(v);
    }
  } else {
    Mat d = dense(c.boundary(q));
    Mat restricted(d.size(), std::vector<long long>(in_fs.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < in_fs.size(); ++j) restricted[i][j] = d[i][in_fs[j]];
    for (auto& z : null_space(restricted, in_fs.size(), p)) {
      std::vector<long long> v(n, 0);
      for (std::size_t j = 0; j < in_fs.size(); ++j) v[in_fs[j]] = z[j];
      cycles.push_back(v);
    }
  }
  std::vector<std::vector<long long>> bounds;
  if (c.rank(q + 1) > 0) {
    Mat d = dense(c.boundary(q + 1));
    for (std::size_t j = 0; j < c.rank(q + 1); ++j) {
      std::vector<long long> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = d[i][j];
      bounds.push_back(v);
    }
  }
  auto both = cycles;
  both.insert(both.end(), bounds.begin(), bounds.end());
  return rank_of_vectors(both, p) - rank_of_vectors(bounds, p);
}

std::size_t homology_dim(const ChainComplex& c, int q) { return complexes::homology(c, q).free_rank; }

FilteredComplex random_filtered(std::mt19937_64& rng, std::uint64_t p) {
  auto k = testing_support::random_complex(rng, 6, 3, 5);
  auto c = k.chains(Ring::prime_field(p));
  std::map<int, std::vector<int>> levels;
  std::uniform_int_distribution<int> bump(0, 1);
  for (int q = 0; q <= c.qmax(); ++q) {
    levels[q].resize(c.rank(q));
    for (std::size_t j = 0; j < c.rank(q); ++j) {
      int lv = 0;
      if (q > 0)
        for (auto x : k.simplices[q][j]) {
          auto face = k.simplices[q][j];
          face.erase(std::find(face.begin(), face.end(), x));
          lv = std::max(lv, levels[q - 1][k.index(face)]);
        }
      levels[q][j] = lv + bump(rng);
    }
  }
  return FilteredComplex::make(std::move(c), std::move(levels));
}

// dim E^{r+1}_{s,t} from E^r and its differentials.
std::map<std::pair<int, int>, std::size_t> next_dims(const SpectralPage& e) {
  auto dims = e.dims;
  for (const auto& d : e.differentials) {
    Mat m;
    for (const auto& row : d.matrix) m.emplace_back(row.begin(), row.end());
    std::size_t rk = rank_of_vectors(m, static_cast<long long>(e.p));
    dims[{d.s, d.t}] -= rk;
    dims[{d.s - e.r, d.t + e.r - 1}] -= rk;
  }
  std::erase_if(dims, [](const auto& kv) { return kv.second == 0; });
  return dims;
}

}  // namespace

TEST_CASE("null space oracle") {
  Mat m = {{1, 1, 0}, {0, 1, 1}};
  auto ns = null_space(m, 3, 2);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0] == std::vector<long long>{1, 1, 1});
}

TEST_CASE("filtration validation") {
  auto k = testing_support::SimplicialComplex::closure({{0, 1}});
  auto c = k.chains(Ring::prime_field(2));
  CHECK_THROWS_AS(FilteredComplex::make(c, {{0, {1, 1}}, {1, {0}}}), ArgumentError);
  CHECK_THROWS_AS(FilteredComplex::make(c, {{0, {0}}, {1, {0}}}), ArgumentError);
  CHECK_THROWS_AS(FilteredComplex::make(k.chains(), {{0, {0, 0}}, {1, {1}}}), ArgumentError);
  CHECK_NOTHROW(FilteredComplex::make(c, {{0, {0, 1}}, {1, {1}}}));
}

TEST_CASE("random filtrations converge to the associated graded") {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {2ULL, 3ULL}) {
    for (int trial = 0; trial < 25; ++trial) {
      auto f = random_filtered(rng, p);
      auto e = limit_page(f);
      const auto& c = f.complex();
      for (int q = c.qmin(); q <= c.qmax(); ++q) {
        CHECK(e.total_dim(q) == homology_dim(c, q));
        for (int s = f.min_level(); s <= f.max_level(); ++s)
          CHECK(e.dim(s, q - s) == filtered_homology_dim(f, q, s) - filtered_homology_dim(f, q, s - 1));
      }
      CHECK(e.differentials.empty());
    }
  }
}

TEST_CASE("each page is the homology of the previous one") {
  std::mt19937_64 rng(23);
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL}) {
    for (int trial = 0; trial < 15; ++trial) {
      auto f = random_filtered(rng, p);
      auto prev = page(f, 1);
      for (int r = 2; r <= limit_index(f) + 1; ++r) {
        auto cur = page(f, r);
        CHECK(cur.dims == next_dims(prev));
        for (const auto& [st, d] : cur.dims) CHECK(d <= prev.dim(st.first, st.second));
        prev = std::move(cur);
      }
    }
  }
}

TEST_CASE("first differential of the skeletal filtration is the face sum") {
  auto y = delta::injective_words(3);
  auto f = skeletal_filtration(y, 3);
  auto e1 = page(f, 1);
  auto c = delta::chains_of_realization(y, Ring::prime_field(3));
  for (int s = 0; s <= 2; ++s) CHECK(e1.dim(s, 0) == c.rank(s));
  REQUIRE(e1.differentials.size() == 2);
  for (const auto& d : e1.differentials) {
    CHECK(d.t == 0);
    Mat m = dense(c.boundary(d.s));
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m[i].size(); ++j) CHECK(d.matrix[i][j] == static_cast<std::uint64_t>((m[i][j] % 3 + 3) % 3));
  }
}

TEST_CASE("limit page of injective words") {
  auto e = limit_page(skeletal_filtration(delta::injective_words(3), 3));
  CHECK(e.total_dim(0) == 1);
  CHECK(e.total_dim(1) == 0);
  CHECK(e.total_dim(2) == 2);

  auto a = augmented_page(delta::injective_words(2), 2, 3);
  CHECK(a.total_dim(-1) == 0);
  CHECK(a.total_dim(0) == 0);
  CHECK(a.total_dim(1) == 1);

  for (std::size_t n = 2; n <= 4; ++n) {
    auto y = delta::injective_words(n);
    auto lim = limit_page(augmented_filtration(y, 2));
    std::size_t below = 0;
    for (int q = -1; q < static_cast<int>(n) - 1; ++q) below += lim.total_dim(q);
    CHECK(below == 0);
    CHECK(lim.total_dim(static_cast<int>(n) - 1) == delta::wedge_verify(n).top_rank);
  }
}

TEST_CASE("constant augmented delta sets") {
  // One simplex per level, every face the unique lower simplex.
  auto constant = [](std::size_t top) {
    std::vector<std::vector<std::vector<std::size_t>>> faces(top + 1);
    for (std::size_t i = 0; i <= top; ++i) faces[i].push_back(std::vector<std::size_t>(i == 0 ? 0 : i + 1, 0));
    return delta::DeltaSet::make_augmented(faces, {0}, 1);
  };
  for (std::size_t top : {0, 2}) {
    auto e = limit_page(augmented_filtration(constant(top), 2));
    CHECK(e.dims.empty());
  }
  auto circle = limit_page(augmented_filtration(constant(1), 2));
  CHECK(circle.total_dim(1) == 1);
  CHECK(circle.dims.size() == 1);
}

TEST_CASE("map spectral sequences") {
  auto y = std::make_shared<const delta::DeltaSet>(delta::injective_words(3));
  SUBCASE("identity has vanishing first page") {
    delta::DeltaMap id{y, y, {}, {0}};
    for (std::size_t i = 0; i < y->level_count(); ++i) {
      id.levels.emplace_back(y->level_size(i));
      std::iota(id.levels.back().begin(), id.levels.back().end(), 0);
    }
    CHECK(map_page(id, 2, 1).dims.empty());
  }
  SUBCASE("map from the empty set") {
    for (int r = 1; r <= 4; ++r) {
      auto a = map_page(delta::from_empty(y), 3, r);
      auto b = augmented_page(*y, 3, r);
      CHECK(a.dims == b.dims);
    }
  }
  SUBCASE("inclusion against the cone of realizations") {
    for (std::uint64_t p : {2ULL, 3ULL}) {
      for (std::size_t m = 1; m <= 3; ++m) {
        auto f = delta::injective_words_inclusion(m, 3);
        auto e = limit_page(map_filtration(f, p));
        // Cone of the unaugmented chain map; augmenting both sides to a point does not change it.
        auto aug = delta::augmented_chain_map(f, Ring::prime_field(p));
        auto src = std::make_shared<const ChainComplex>(delta::chains_of_realization(*f.source, Ring::prime_field(p)));
        auto tgt = std::make_shared<const ChainComplex>(delta::chains_of_realization(*f.target, Ring::prime_field(p)));
        std::map<int, linalg::SparseIntegerMatrix> comps;
        for (int q = 0; q <= src->qmax(); ++q) comps[q] = aug.component(q);
        auto cone = complexes::mapping_cone(complexes::ChainMap::make(src, tgt, comps));
        for (int q = -1; q <= 4; ++q) CHECK(e.total_dim(q) == homology_dim(cone, q));
      }
    }
  }
}

TEST_CASE("dense cap") {
  Context ctx;
  ctx.limits.max_dense_generators = 5;
  CHECK_THROWS_AS(page(skeletal_filtration(delta::injective_words(3), 2), 1, ctx), ResourceLimitError);
}
