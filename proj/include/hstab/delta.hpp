#pragma once

// Finite semi-simplicial sets, their chains, and the complex of injective words.
//
// Faces are 0-based internally: d_j for 0 <= j <= i at level i. The external
// convention numbers them 1..i+1; JSON face lists are in that order, so
// list position j is d_j here.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hstab/complexes.hpp"

namespace hstab::delta {

using complexes::ChainComplex;
using complexes::HomologyGroup;
using complexes::Ring;

class DeltaSet {
 public:
  DeltaSet() = default;
  /// faces[i][k] lists d_0..d_i of simplex k at level i (faces[0] entries are empty).
  static DeltaSet make(std::vector<std::vector<std::vector<std::size_t>>> faces);
  /// Augmented to a level -1 set of `base_size` points.
  static DeltaSet make_augmented(std::vector<std::vector<std::vector<std::size_t>>> faces,
                                 std::vector<std::size_t> augmentation, std::size_t base_size);

  /// Number of populated levels (top level + 1).
  std::size_t level_count() const { return sizes_.size(); }
  std::size_t level_size(std::size_t i) const { return i < sizes_.size() ? sizes_[i] : 0; }
  std::size_t face(std::size_t level, std::size_t simplex, std::size_t j) const {
    return faces_[level][simplex * (level + 1) + j];
  }

  bool augmented() const { return augmented_; }
  std::size_t base_size() const { return base_size_; }
  std::size_t augmentation(std::size_t vertex) const { return augmentation_[vertex]; }

  void set_labels(std::size_t level, std::vector<std::string> labels);
  const std::vector<std::string>* labels(std::size_t level) const;

 private:
  std::vector<std::size_t> sizes_;
  // faces_[i] holds (i + 1) entries per simplex.
  std::vector<std::vector<std::uint32_t>> faces_;
  bool augmented_ = false;
  std::size_t base_size_ = 0;
  std::vector<std::size_t> augmentation_;
  std::vector<std::vector<std::string>> labels_;
};

struct DeltaValidation {
  bool ok = true;
  std::size_t level = 0;
  std::size_t simplex = 0;
  std::string message;
};

/// Checks index bounds, d_a d_b = d_{b-1} d_a for a < b, and that the
/// augmentation equalizes the two faces of every 1-simplex.
DeltaValidation validate_delta_set(const DeltaSet& y);

/// Unnormalized chains of the realization: degree i has the i-simplices,
/// ∂ = Σ_j (-1)^j d_j. Raises ArgumentError on an invalid Δ-set.
ChainComplex chains_of_realization(const DeltaSet& y, Ring ring = Ring::integers());
/// Adds degree -1 (the augmentation target) with ∂_0 = augmentation.
/// Its homology is the reduced homology of the cone of |Y| → Y_{-1}, shifted down one.
ChainComplex augmented_chains(const DeltaSet& y, Ring ring = Ring::integers());

/// Level i = injective words of length i+1 on {1..n} in lexicographic
/// order; d_j deletes the j-th letter; augmented to a point.
/// Raises ResourceLimitError when the face tables would exceed limits.max_entries.
DeltaSet injective_words(std::size_t n, const Limits& limits = {});
/// Word of a simplex, letters 1-based.
std::vector<int> injective_word(std::size_t n, std::size_t level, std::size_t index);

/// Levelwise maps between augmented Δ-sets commuting with faces and augmentations.
struct DeltaMap {
  std::shared_ptr<const DeltaSet> source;
  std::shared_ptr<const DeltaSet> target;
  std::vector<std::vector<std::size_t>> levels;
  std::vector<std::size_t> base;
};

/// Raises ArgumentError naming the first level where the map fails.
void validate_delta_map(const DeltaMap& f);
/// Induced by the inclusion {1..m} ⊂ {1..n}.
DeltaMap injective_words_inclusion(std::size_t m, std::size_t n);
/// Map into `target` from the augmented Δ-set with no simplices and an empty base.
DeltaMap from_empty(std::shared_ptr<const DeltaSet> target);
complexes::ChainMap augmented_chain_map(const DeltaMap& f, Ring ring = Ring::integers());

struct WedgeReport {
  std::size_t n = 0;
  /// Reduced homology in degrees -1..n-1.
  std::vector<HomologyGroup> reduced;
  bool connectivity_ok = false;
  bool top_torsion_free = false;
  std::size_t top_rank = 0;
  std::int64_t reduced_euler = 0;
  bool euler_consistent = false;
  bool pass() const { return connectivity_ok && top_torsion_free && euler_consistent; }
};

WedgeReport wedge_verify(std::size_t n, const Context& ctx = {});

}  // namespace hstab::delta
