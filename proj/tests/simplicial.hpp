#pragma once

// Small simplicial complexes and simplicial maps for building test chain
// complexes with known homology.

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "hstab/complexes.hpp"

namespace testing_support {

using Simplex = std::vector<int>;

struct SimplicialComplex {
  // by dimension, sorted
  std::vector<std::vector<Simplex>> simplices;

  static SimplicialComplex closure(const std::vector<Simplex>& facets) {
    std::set<Simplex> all;
    for (auto f : facets) {
      std::sort(f.begin(), f.end());
      const int k = static_cast<int>(f.size());
      for (int mask = 1; mask < (1 << k); ++mask) {
        Simplex s;
        for (int i = 0; i < k; ++i)
          if (mask & (1 << i)) s.push_back(f[i]);
        all.insert(s);
      }
    }
    SimplicialComplex c;
    for (const auto& s : all) {
      if (c.simplices.size() < s.size()) c.simplices.resize(s.size());
      c.simplices[s.size() - 1].push_back(s);
    }
    for (auto& level : c.simplices) std::sort(level.begin(), level.end());
    return c;
  }

  std::size_t index(const Simplex& s) const {
    const auto& level = simplices[s.size() - 1];
    return static_cast<std::size_t>(std::lower_bound(level.begin(), level.end(), s) - level.begin());
  }

  bool contains(const Simplex& s) const {
    if (s.empty() || s.size() > simplices.size()) return false;
    const auto& level = simplices[s.size() - 1];
    return std::binary_search(level.begin(), level.end(), s);
  }

  hstab::complexes::ChainComplex chains(hstab::complexes::Ring ring = hstab::complexes::Ring::integers()) const {
    std::vector<std::size_t> ranks;
    for (const auto& l : simplices) ranks.push_back(l.size());
    std::map<int, hstab::linalg::SparseIntegerMatrix> d;
    for (std::size_t q = 1; q < simplices.size(); ++q) {
      std::vector<hstab::linalg::Entry> e;
      for (std::size_t j = 0; j < simplices[q].size(); ++j) {
        const auto& s = simplices[q][j];
        for (std::size_t i = 0; i < s.size(); ++i) {
          Simplex face = s;
          face.erase(face.begin() + static_cast<long>(i));
          e.push_back({index(face), j, hstab::Integer(i % 2 ? -1 : 1)});
        }
      }
      d[static_cast<int>(q)] =
          hstab::linalg::SparseIntegerMatrix::from_triplets(simplices[q - 1].size(), simplices[q].size(), e);
    }
    return hstab::complexes::ChainComplex::make(ring, 0, ranks, d);
  }
};

// Chain map induced by a vertex map; degenerate images go to zero.
inline hstab::complexes::ChainMap simplicial_map(const SimplicialComplex& src, const SimplicialComplex& tgt,
                                                 const std::vector<int>& vertex_map,
                                                 std::shared_ptr<const hstab::complexes::ChainComplex> cs,
                                                 std::shared_ptr<const hstab::complexes::ChainComplex> ct) {
  std::map<int, hstab::linalg::SparseIntegerMatrix> comps;
  for (std::size_t q = 0; q < src.simplices.size(); ++q) {
    if (q >= tgt.simplices.size()) break;
    std::vector<hstab::linalg::Entry> e;
    for (std::size_t j = 0; j < src.simplices[q].size(); ++j) {
      Simplex img;
      for (int v : src.simplices[q][j]) img.push_back(vertex_map[static_cast<std::size_t>(v)]);
      // sign of the sorting permutation
      int sign = 1;
      for (std::size_t a = 0; a < img.size(); ++a)
        for (std::size_t b = a + 1; b < img.size(); ++b)
          if (img[a] > img[b]) sign = -sign;
      std::sort(img.begin(), img.end());
      if (std::adjacent_find(img.begin(), img.end()) != img.end()) continue;
      e.push_back({tgt.index(img), j, hstab::Integer(sign)});
    }
    comps[static_cast<int>(q)] =
        hstab::linalg::SparseIntegerMatrix::from_triplets(tgt.simplices[q].size(), src.simplices[q].size(), e);
  }
  return hstab::complexes::ChainMap::make(cs, ct, comps);
}

inline std::vector<Simplex> rp2_facets() {
  return {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1}, {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}};
}

// Random downward-closed complex on `vertices` vertices with facets of
// dimension up to `max_dim`.
inline SimplicialComplex random_complex(std::mt19937_64& rng, int vertices, int max_dim, int facets) {
  std::uniform_int_distribution<int> dim(0, max_dim);
  std::vector<Simplex> fs;
  std::vector<int> verts(static_cast<std::size_t>(vertices));
  for (int i = 0; i < vertices; ++i) verts[static_cast<std::size_t>(i)] = i;
  for (int f = 0; f < facets; ++f) {
    std::shuffle(verts.begin(), verts.end(), rng);
    fs.emplace_back(verts.begin(), verts.begin() + dim(rng) + 1);
  }
  return SimplicialComplex::closure(fs);
}

}  // namespace testing_support
