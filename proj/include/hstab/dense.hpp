#pragma once

// Dense integer matrices with explicit unimodular transforms. Only used on
// the small cores left after sparse reduction; cost is cubic.

#include <cstddef>
#include <vector>

#include "hstab/linalg.hpp"

namespace hstab::linalg {

class DenseIntMatrix {
 public:
  DenseIntMatrix() = default;
  DenseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static DenseIntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseIntMatrix operator*(const DenseIntMatrix& rhs) const;
  std::vector<Integer> apply(const std::vector<Integer>& v) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row_dst -= q * row_src
  void row_submul(std::size_t dst, const Integer& q, std::size_t src);
  /// col_dst -= q * col_src
  void col_submul(std::size_t dst, const Integer& q, std::size_t src);

  friend bool operator==(const DenseIntMatrix&, const DenseIntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// left * a * right = diag(d_1, ..., d_r, 0, ...) with d_i | d_{i+1}, d_i > 0.
/// left_inverse is the inverse of left; right is only filled when requested.
struct SmithDecomposition {
  DenseIntMatrix left;
  DenseIntMatrix left_inverse;
  DenseIntMatrix right;
  std::vector<Integer> diagonal;
  std::size_t rank = 0;
};

SmithDecomposition smith_with_transforms(DenseIntMatrix a, bool want_right = false);

/// a * transform = [b | 0] where b has `rank` nonzero columns; the trailing
/// columns of `transform` are a Z-basis of ker(a).
struct ColumnEchelon {
  DenseIntMatrix reduced;
  DenseIntMatrix transform;
  DenseIntMatrix transform_inverse;
  std::size_t rank = 0;
};

ColumnEchelon column_echelon(DenseIntMatrix a);

}  // namespace hstab::linalg
