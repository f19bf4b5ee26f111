#pragma once

// Bounded chain complexes of finite free modules over Z, F_p or Z[Z/2],
// chain maps, mapping cones and homology.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hstab/context.hpp"
#include "hstab/linalg.hpp"

namespace hstab::complexes {

using linalg::SparseIntegerMatrix;

/// a + b t in Z[t]/(t^2 - 1).
struct GroupRingElement {
  Integer a;
  Integer b;

  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
  GroupRingElement operator+(const GroupRingElement& o) const { return {a + o.a, b + o.b}; }
  GroupRingElement operator-(const GroupRingElement& o) const { return {a - o.a, b - o.b}; }
  GroupRingElement operator-() const { return {-a, -b}; }
  GroupRingElement operator*(const GroupRingElement& o) const {
    return {a * o.a + b * o.b, a * o.b + b * o.a};
  }
  GroupRingElement& operator+=(const GroupRingElement& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;
};

struct GroupRingEntry {
  std::size_t row;
  std::size_t col;
  GroupRingElement value;

  friend bool operator==(const GroupRingEntry&, const GroupRingEntry&) = default;
};

/// Sparse matrix over Z[Z/2] with the same invariants as SparseIntegerMatrix.
class GroupRingMatrix {
 public:
  GroupRingMatrix() = default;
  GroupRingMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  static GroupRingMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<GroupRingEntry> triplets);
  static GroupRingMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  std::span<const GroupRingEntry> entries() const { return entries_; }
  GroupRingElement at(std::size_t row, std::size_t col) const;

  GroupRingMatrix operator*(const GroupRingMatrix& rhs) const;
  GroupRingMatrix operator+(const GroupRingMatrix& rhs) const;
  GroupRingMatrix operator-() const;

  friend bool operator==(const GroupRingMatrix&, const GroupRingMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GroupRingEntry> entries_;
};

struct Ring {
  enum class Kind { Z, Fp, ZC2 };
  Kind kind = Kind::Z;
  std::uint64_t p = 0;

  static Ring integers() { return {Kind::Z, 0}; }
  static Ring prime_field(std::uint64_t p);
  static Ring group_ring() { return {Kind::ZC2, 0}; }
  /// "Z", "Fp:<p>" or "ZC2".
  static Ring parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Ring&, const Ring&) = default;
};

/// Chain complex with generators in degrees qmin..qmax. boundary(q) maps
/// degree-q generators (columns) to degree-(q-1) generators (rows).
class ChainComplex {
 public:
  ChainComplex() = default;

  /// Ring Z or F_p. Missing boundaries are zero; F_p entries are reduced.
  static ChainComplex make(Ring ring, int qmin, std::vector<std::size_t> ranks,
                           std::map<int, SparseIntegerMatrix> boundaries);
  static ChainComplex make_group_ring(int qmin, std::vector<std::size_t> ranks,
                                      std::map<int, GroupRingMatrix> boundaries);

  const Ring& ring() const { return ring_; }
  int qmin() const { return qmin_; }
  int qmax() const { return qmin_ + static_cast<int>(ranks_.size()) - 1; }
  std::size_t rank(int q) const;
  std::span<const std::size_t> ranks() const { return ranks_; }
  std::size_t total_rank() const;

  /// Zero (of the right shape) outside the stored range.
  const SparseIntegerMatrix& boundary(int q) const;
  const GroupRingMatrix& group_ring_boundary(int q) const;

  /// Optional human-readable generator names, per degree.
  void set_labels(int q, std::vector<std::string> labels);
  std::span<const std::string> labels(int q) const;

 private:
  Ring ring_;
  int qmin_ = 0;
  std::vector<std::size_t> ranks_;
  // Index q - qmin for q in [qmin, qmax + 1].
  std::vector<SparseIntegerMatrix> boundaries_;
  std::vector<GroupRingMatrix> group_ring_boundaries_;
  std::map<int, std::vector<std::string>> labels_;
};

/// Degree-preserving chain map; component(q) has rank_target(q) rows and
/// rank_source(q) columns.
class ChainMap {
 public:
  ChainMap() = default;
  static ChainMap make(std::shared_ptr<const ChainComplex> source, std::shared_ptr<const ChainComplex> target,
                       std::map<int, SparseIntegerMatrix> components);
  static ChainMap make_group_ring(std::shared_ptr<const ChainComplex> source,
                                  std::shared_ptr<const ChainComplex> target,
                                  std::map<int, GroupRingMatrix> components);
  static ChainMap identity(std::shared_ptr<const ChainComplex> c);

  const ChainComplex& source() const { return *source_; }
  const ChainComplex& target() const { return *target_; }
  std::shared_ptr<const ChainComplex> source_ptr() const { return source_; }
  std::shared_ptr<const ChainComplex> target_ptr() const { return target_; }
  int qmin() const { return qmin_; }
  int qmax() const { return qmax_; }
  const SparseIntegerMatrix& component(int q) const;
  const GroupRingMatrix& group_ring_component(int q) const;

  /// g ∘ this; g.source() must have the shape of this->target().
  ChainMap then(const ChainMap& g) const;

 private:
  std::shared_ptr<const ChainComplex> source_;
  std::shared_ptr<const ChainComplex> target_;
  int qmin_ = 0;
  int qmax_ = -1;
  std::vector<SparseIntegerMatrix> components_;
  std::vector<GroupRingMatrix> group_ring_components_;
};

struct ValidationResult {
  bool ok = true;
  int degree = 0;
  std::size_t column = 0;
  std::string message;
};

/// Checks ∂_{q-1} ∂_q = 0, reporting the first offending degree q and column.
ValidationResult validate_complex(const ChainComplex& c);
/// Checks f_{q-1} ∂_q = ∂_q f_q, reporting the first offending degree and column.
ValidationResult validate_map(const ChainMap& f);

/// Finitely generated abelian group (ring Z) or F_p vector space.
struct HomologyGroup {
  std::size_t free_rank = 0;
  /// Invariant factors > 1 forming a divisibility chain; empty over F_p.
  std::vector<Integer> torsion;
  /// 0 for an abelian group, else the characteristic of the field.
  std::uint64_t field = 0;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  /// Number of cyclic summands.
  std::size_t rank() const { return free_rank + torsion.size(); }
  /// "0", "Z^2+Z/2+Z/4", "F3^2".
  std::string to_string() const;
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

HomologyGroup homology(const ChainComplex& c, int q, const Context& ctx = {});
/// Homology in degrees lo..hi, each boundary reduced once.
std::vector<HomologyGroup> homology_range(const ChainComplex& c, int lo, int hi, const Context& ctx = {});

/// Degree q: target_q ⊕ source_{q-1}, with ∂ = [[∂_tgt, f], [0, -∂_src]].
ChainComplex mapping_cone(const ChainMap& f);

std::int64_t euler_characteristic(const ChainComplex& c);

struct CoefficientModule {
  enum class Kind { TrivialZ, SignZ, RegularZZ, TrivialF, SignF, RegularF };
  Kind kind = Kind::TrivialZ;
  std::uint64_t p = 0;

  /// trivial-z, sign-z, regular-z, trivial-fp:<p>, sign-fp:<p>, regular-fp:<p>.
  static CoefficientModule parse(std::string_view text);
  std::string to_string() const;
  bool is_regular() const { return kind == Kind::RegularZZ || kind == Kind::RegularF; }
  Ring result_ring() const;

  friend bool operator==(const CoefficientModule&, const CoefficientModule&) = default;
};

/// Sends a Z[Z/2] complex to Z or F_p: t ↦ 1, t ↦ -1, or a + bt ↦ [[a, b], [b, a]].
ChainComplex specialize(const ChainComplex& c, const CoefficientModule& m);
/// Specializes both ends and the components (reusing already specialized ends when given).
ChainMap specialize(const ChainMap& f, const CoefficientModule& m,
                    std::shared_ptr<const ChainComplex> source = nullptr,
                    std::shared_ptr<const ChainComplex> target = nullptr);
/// a + bt ↦ 2×2 integer block used by the regular module.
SparseIntegerMatrix regular_block_matrix(const GroupRingMatrix& m);

enum class MapClass { Iso, Zero, Surjective, Injective, Neither };
std::string to_string(MapClass c);

struct InducedMap {
  int degree = 0;
  HomologyGroup source;
  HomologyGroup target;
  /// Orders of the chosen cyclic generators (0 = infinite, or field elements).
  std::vector<Integer> source_orders;
  std::vector<Integer> target_orders;
  /// Matrix on the chosen generators, target coordinates reduced mod order.
  std::vector<std::vector<Integer>> matrix;
  bool injective = false;
  bool surjective = false;
  bool zero = false;
  MapClass classification = MapClass::Neither;
};

/// Induced map H_q(source) → H_q(target) on explicit cycle generators.
InducedMap induced_map_on_homology(const ChainMap& f, int q, const Context& ctx = {});

struct Connectivity {
  /// Largest * ≤ q_max with surjectivity up to * and injectivity up to * - 1;
  /// -1 when H_0 is not hit.
  int value = -1;
  /// value == q_max, so only a lower bound.
  bool truncated = false;
  std::vector<InducedMap> maps;
};

Connectivity hconn_upto(const ChainMap& f, int q_max, const Context& ctx = {});

using SparseVector = std::vector<std::pair<std::size_t, Integer>>;

/// Explicit presentation of H_q: cycle representatives for a list of cyclic
/// generators and a coordinate map from cycles to those generators.
class HomologyBasis {
 public:
  HomologyBasis(const ChainComplex& c, int q, const Context& ctx = {});
  ~HomologyBasis();
  HomologyBasis(HomologyBasis&&) noexcept;
  HomologyBasis& operator=(HomologyBasis&&) noexcept;

  const HomologyGroup& group() const;
  std::span<const Integer> orders() const;
  std::size_t size() const;
  /// Cycle representing the i-th generator, in the degree-q basis.
  SparseVector generator(std::size_t i) const;
  /// Coordinates of the homology class of a cycle z (not checked to be a cycle).
  std::vector<Integer> coordinates(const SparseVector& z) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hstab::complexes
