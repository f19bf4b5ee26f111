#pragma once

// Spectral sequences of filtered chain complexes over prime fields.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "hstab/complexes.hpp"
#include "hstab/delta.hpp"

namespace hstab::spectral {

using complexes::ChainComplex;

/// Chain complex over F_p with a filtration level on every generator. The
/// boundary never raises the level.
class FilteredComplex {
 public:
  /// levels[q][k] is the level of generator k in degree q; raises
  /// ArgumentError when the boundary raises a level or the ring is not F_p.
  static FilteredComplex make(ChainComplex c, std::map<int, std::vector<int>> levels);

  const ChainComplex& complex() const { return complex_; }
  int level(int q, std::size_t k) const { return levels_.at(q)[k]; }
  const std::vector<int>& levels(int q) const;
  int min_level() const { return min_level_; }
  int max_level() const { return max_level_; }
  std::uint64_t prime() const { return complex_.ring().p; }

 private:
  ChainComplex complex_;
  std::map<int, std::vector<int>> levels_;
  int min_level_ = 0;
  int max_level_ = -1;
};

/// Degree-i simplices at level i.
FilteredComplex skeletal_filtration(const delta::DeltaSet& y, std::uint64_t p);
/// Augmented chains (degree -1 = Y_{-1}) filtered by degree, levels from -1.
FilteredComplex augmented_filtration(const delta::DeltaSet& y, std::uint64_t p);
/// Cone of the augmented chain map of f; Y_s sits at level s with t = 0 and
/// X_s (shifted up one degree) at level s with t = 1.
FilteredComplex map_filtration(const delta::DeltaMap& f, std::uint64_t p);

struct Differential {
  int s = 0;
  int t = 0;
  /// dim E^r_{s-r, t+r-1} rows, dim E^r_{s,t} columns, entries in [0, p).
  std::vector<std::vector<std::uint64_t>> matrix;
};

struct SpectralPage {
  int r = 1;
  std::uint64_t p = 0;
  /// Nonzero dimensions keyed by (s, t).
  std::map<std::pair<int, int>, std::size_t> dims;
  /// Nonzero differentials leaving (s, t).
  std::vector<Differential> differentials;

  std::size_t dim(int s, int t) const;
  /// Σ_s dim E_{s, q-s}.
  std::size_t total_dim(int q) const;
};

/// E^r for r >= 1, with d^r of bidegree (-r, r-1).
SpectralPage page(const FilteredComplex& f, int r, const Context& ctx = {});
/// First page index at which the sequence has stabilized: filtration width + 1.
int limit_index(const FilteredComplex& f);
SpectralPage limit_page(const FilteredComplex& f, const Context& ctx = {});

SpectralPage augmented_page(const delta::DeltaSet& y, std::uint64_t p, int r, const Context& ctx = {});
SpectralPage map_page(const delta::DeltaMap& f, std::uint64_t p, int r, const Context& ctx = {});

}  // namespace hstab::spectral
