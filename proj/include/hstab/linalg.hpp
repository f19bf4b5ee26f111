#pragma once

// Exact sparse linear algebra over Z and prime fields.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hstab {

using Integer = mpz_class;

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

/// Resource caps shared by every exact computation. Exceeding one raises
/// ResourceLimitError.
struct Limits {
  /// Maximum number of stored entries in any working matrix during elimination.
  std::size_t max_entries = 10'000'000;
  /// Maximum bit length of any intermediate coefficient.
  std::size_t max_coefficient_bits = 4096;
  /// Largest n accepted by the configuration-space model.
  std::size_t max_points = 16;
  /// Largest finite group order accepted by the group module.
  std::size_t max_group_order = 120;
  /// Largest chain-group rank accepted for bar complexes.
  std::size_t max_bar_chains = 20'000;
  /// Largest total generator count for dense spectral-sequence computations.
  std::size_t max_dense_generators = 4'000;
};

namespace linalg {

struct Entry {
  std::size_t row;
  std::size_t col;
  Integer value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Immutable sparse integer matrix. Entries are kept sorted by (row, col),
/// with at most one entry per position and no stored zeros.
class SparseIntegerMatrix {
 public:
  SparseIntegerMatrix() = default;
  SparseIntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  /// Builds a matrix from unordered triplets; duplicates are summed and zeros dropped.
  static SparseIntegerMatrix from_triplets(std::size_t rows, std::size_t cols,
                                           std::vector<Entry> triplets);
  static SparseIntegerMatrix identity(std::size_t n);
  static SparseIntegerMatrix from_dense(const std::vector<std::vector<Integer>>& dense);

  /// Parses the bit-exact text format: `rows cols nnz` then nnz lines `i j v`,
  /// sorted by (i, j), no duplicates. Raises ParseError with the line number.
  static SparseIntegerMatrix from_text(std::string_view text);
  std::string to_text() const;

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  std::span<const Entry> entries() const { return entries_; }

  Integer at(std::size_t row, std::size_t col) const;
  std::vector<std::vector<Integer>> to_dense() const;

  SparseIntegerMatrix transpose() const;
  SparseIntegerMatrix operator*(const SparseIntegerMatrix& rhs) const;
  SparseIntegerMatrix operator+(const SparseIntegerMatrix& rhs) const;
  SparseIntegerMatrix operator-() const;
  /// Entries reduced into [0, p).
  SparseIntegerMatrix reduced_mod(std::uint64_t p) const;
  /// Result(i, j) = this(row_perm[i], col_perm[j]).
  SparseIntegerMatrix permuted(std::span<const std::size_t> row_perm,
                               std::span<const std::size_t> col_perm) const;

  friend bool operator==(const SparseIntegerMatrix&, const SparseIntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;
};

struct SmithForm {
  /// d_1 | d_2 | ... | d_r, all positive.
  std::vector<Integer> invariant_factors;
  std::size_t rank = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
};

/// Invariant factors over Z. Sparse elimination with Markowitz pivoting,
/// unit pivots first, then smallest-magnitude pivots. Runs in checked 64-bit
/// arithmetic and restarts in GMP arithmetic on overflow.
SmithForm smith_normal_form(const SparseIntegerMatrix& m, const Limits& limits = {});

/// Rank over F_p. Raises ArgumentError when p is not prime.
std::size_t rank_mod_p(const SparseIntegerMatrix& m, std::uint64_t p, const Limits& limits = {});

/// Rank over Q from ranks modulo a fixed set of large primes (maximum of
/// them). Exact unless every one of those primes divides the rank-order
/// determinantal divisor; used for quick rank-only queries and cross-checks.
std::size_t rational_rank(const SparseIntegerMatrix& m, const Limits& limits = {});

bool is_prime(std::uint64_t p);

}  // namespace linalg
}  // namespace hstab
