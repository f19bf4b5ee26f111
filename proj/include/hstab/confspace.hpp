#pragma once

// Fox–Neuwirth cellular model of configurations of n points in the plane,
// over Z[Z/2] with t recording the parity of the permutation of the points.
//
// A composition (n_1, ..., n_k) of n is the cell of configurations lying on k
// vertical lines with n_i points on the i-th line. The closure of that cell
// has dimension n + k in a 2n-manifold, so the one-point-compactification
// cochains become chains of degree n - k by duality. Merging two adjacent
// lines is dual to splitting a part a into (b, a - b); the coefficient counts
// the (b, a - b)-shuffles, even ones with 1 and odd ones with -t, times
// (-1)^i for a split at (0-based) position i.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hstab/complexes.hpp"

namespace hstab::confspace {

using complexes::ChainComplex;
using complexes::ChainMap;
using complexes::CoefficientModule;
using complexes::GroupRingElement;
using complexes::HomologyGroup;
using complexes::MapClass;
using complexes::Ring;

using Composition = std::vector<int>;

struct ShuffleCount {
  std::uint64_t even = 0;
  std::uint64_t odd = 0;
  friend bool operator==(const ShuffleCount&, const ShuffleCount&) = default;
};

/// Enumerates the (b, c)-shuffles and sorts them by sign.
ShuffleCount shuffle_counts(int b, int c);

/// "(1,2,1)".
std::string to_string(const Composition& c);

struct FNComplex {
  std::size_t n = 0;
  /// Over Z[Z/2]; labels carry the compositions.
  std::shared_ptr<const ChainComplex> complex;
  /// generators[q][k] is the composition of generator k in degree q.
  std::vector<std::vector<Composition>> generators;

  /// (degree, index) of a composition of n.
  std::pair<int, std::size_t> locate(const Composition& c) const;
};

/// n ≤ limits.max_points, else ResourceLimitError.
FNComplex fn_complex(std::size_t n, const Limits& limits = {});

/// The specialized model: trivial or sign modules give C_n, regular modules
/// give the oriented double cover (for n ≤ 1 the cover is trivial and the
/// trivial module of the same ring is used).
std::shared_ptr<const ChainComplex> model(std::size_t n, const CoefficientModule& m, const Limits& limits = {});

/// Homology in degrees 0..n-1. unordered_homology rejects regular modules.
std::vector<HomologyGroup> unordered_homology(std::size_t n, const CoefficientModule& m, const Context& ctx = {});
std::vector<HomologyGroup> oriented_homology(std::size_t n, const Ring& ring, const Context& ctx = {});

struct Stabilization {
  /// fn_complex(n) → fn_complex(n + 1) over Z[Z/2].
  ChainMap map;
  /// Unit applied to (n_1, ..., n_k, 1) for each source generator, by degree.
  std::vector<std::vector<GroupRingElement>> units;
  /// All units equal 1.
  bool naive = true;
};

/// Appends a part of size 1, then corrects each generator by ±1 or ±t, degree
/// by degree, until the map commutes with the differentials.
Stabilization stabilization_map(std::size_t n, const Limits& limits = {});

/// Stabilization between the specialized models.
ChainMap specialized_stabilization(std::size_t n, const CoefficientModule& m, const Context& ctx = {});

/// Swaps the two copies of Z in the regular model over Z (n ≥ 2).
ChainMap deck_involution(std::size_t n, const Limits& limits = {});

/// Mapping cone of the specialized stabilization s_n.
ChainComplex relative_complex(std::size_t n, const CoefficientModule& m, const Context& ctx = {});

enum class Family { Unordered, Oriented, SignTwisted };
std::string to_string(Family f);
Family parse_family(std::string_view text);
/// trivial-z, regular-z and sign-fp:3 respectively.
CoefficientModule default_module(Family f);

struct Prediction {
  bool iso = false;
  bool surjective = false;
  /// H̃_q of the relative complex predicted to vanish.
  bool relative_vanishes = false;
};

/// q ≤ (n-2)/2, q ≤ n/2 (unordered); q ≤ (n-5)/3, q ≤ (n-2)/3 (oriented and sign-twisted).
Prediction predict(Family f, std::size_t n, int q);

struct StabilityRow {
  std::size_t n = 0;
  int q = 0;
  HomologyGroup source;
  HomologyGroup target;
  MapClass map = MapClass::Neither;
  bool injective = false;
  bool surjective = false;
  /// H_q of the relative complex.
  HomologyGroup relative;
  Prediction predicted;
  bool pass = true;
};

struct StabilityReport {
  Family family = Family::Unordered;
  CoefficientModule module;
  std::vector<StabilityRow> rows;
  /// Rows whose classification contradicts a prediction.
  std::vector<std::string> violations;
  bool pass() const { return violations.empty(); }
};

/// Rows for n_min ≤ n ≤ n_max and 0 ≤ q ≤ q_max, ordered by (n, q). Work is
/// spread over ctx.jobs threads; the result does not depend on it.
StabilityReport stability_report(Family family, std::size_t n_min, std::size_t n_max, int q_max,
                                 const CoefficientModule& m, const Context& ctx = {});

/// hconn of s_n and of ν ∘ s_n on the regular model over Z.
struct DeckComparison {
  std::size_t n = 0;
  complexes::Connectivity plain;
  complexes::Connectivity twisted;
  bool agree() const { return plain.value == twisted.value && plain.truncated == twisted.truncated; }
};

DeckComparison compare_deck_stabilizations(std::size_t n, int q_max, const Context& ctx = {});

struct CounterexampleReport {
  std::uint64_t p = 0;
  std::size_t lambda = 0;
  std::size_t n = 0;
  int q = 0;
  HomologyGroup source;
  HomologyGroup target;
  MapClass map = MapClass::Neither;
  bool pass() const { return source.free_rank == 1 && target.is_zero() && map == MapClass::Zero; }
};

/// H_q(C_n; F_p sign) → H_q(C_{n+1}; F_p sign) at n = λp + 1, q = λ(p - 2).
CounterexampleReport counterexample_check(std::uint64_t p, std::size_t lambda, const Context& ctx = {});

}  // namespace hstab::confspace
