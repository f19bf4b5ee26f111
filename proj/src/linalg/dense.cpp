#include "hstab/dense.hpp"

#include <utility>

#include "hstab/error.hpp"

namespace hstab::linalg {

DenseIntMatrix DenseIntMatrix::identity(std::size_t n) {
  DenseIntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

DenseIntMatrix DenseIntMatrix::operator*(const DenseIntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ArgumentError("dense product dimension mismatch");
  DenseIntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

std::vector<Integer> DenseIntMatrix::apply(const std::vector<Integer>& v) const {
  if (v.size() != cols_) throw ArgumentError("dense apply dimension mismatch");
  std::vector<Integer> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn(v[j]) != 0) out[i] += (*this)(i, j) * v[j];
  return out;
}

void DenseIntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void DenseIntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void DenseIntMatrix::row_submul(std::size_t dst, const Integer& q, std::size_t src) {
  if (sgn(q) == 0) return;
  for (std::size_t j = 0; j < cols_; ++j)
    if (sgn((*this)(src, j)) != 0) (*this)(dst, j) -= q * (*this)(src, j);
}

void DenseIntMatrix::col_submul(std::size_t dst, const Integer& q, std::size_t src) {
  if (sgn(q) == 0) return;
  for (std::size_t i = 0; i < rows_; ++i)
    if (sgn((*this)(i, src)) != 0) (*this)(i, dst) -= q * (*this)(i, src);
}

namespace {

Integer trunc_quotient(const Integer& b, const Integer& a) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
  return q;
}

// Elementary operations applied to the working matrix together with the
// bookkeeping that keeps left * original * right == working.
struct SmithState {
  DenseIntMatrix a;
  DenseIntMatrix left;
  DenseIntMatrix left_inv;
  DenseIntMatrix right;
  bool want_right;

  void row_swap(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    left.swap_rows(i, j);
    left_inv.swap_cols(i, j);
  }
  void col_swap(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    if (want_right) right.swap_cols(i, j);
  }
  // row_i -= q row_t
  void row_op(std::size_t i, const Integer& q, std::size_t t) {
    a.row_submul(i, q, t);
    left.row_submul(i, q, t);
    left_inv.col_submul(t, -q, i);
  }
  // col_j -= q col_t
  void col_op(std::size_t j, const Integer& q, std::size_t t) {
    a.col_submul(j, q, t);
    if (want_right) right.col_submul(j, q, t);
  }
  void negate_row(std::size_t t) {
    for (std::size_t j = 0; j < a.cols(); ++j) a(t, j) = -a(t, j);
    for (std::size_t j = 0; j < left.cols(); ++j) left(t, j) = -left(t, j);
    for (std::size_t i = 0; i < left_inv.rows(); ++i) left_inv(i, t) = -left_inv(i, t);
  }
};

}  // namespace

SmithDecomposition smith_with_transforms(DenseIntMatrix a, bool want_right) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithState st{std::move(a), DenseIntMatrix::identity(m), DenseIntMatrix::identity(m),
                want_right ? DenseIntMatrix::identity(n) : DenseIntMatrix(), want_right};
  std::size_t t = 0;
  while (t < m && t < n) {
    // Smallest nonzero entry of the trailing block.
    std::size_t bi = m, bj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (sgn(st.a(i, j)) != 0 && (bi == m || cmpabs(st.a(i, j), st.a(bi, bj)) < 0)) {
          bi = i;
          bj = j;
        }
    if (bi == m) break;
    st.row_swap(t, bi);
    st.col_swap(t, bj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(st.a(i, t)) == 0) continue;
        st.row_op(i, trunc_quotient(st.a(i, t), st.a(t, t)), t);
        if (sgn(st.a(i, t)) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(st.a(t, j)) == 0) continue;
        st.col_op(j, trunc_quotient(st.a(t, j), st.a(t, t)), t);
        if (sgn(st.a(t, j)) != 0) dirty = true;
      }
      if (dirty) {
        // Move the smallest remainder in row/column t onto the diagonal.
        std::size_t si = t, sj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (sgn(st.a(i, t)) != 0 && cmpabs(st.a(i, t), st.a(si, sj)) < 0) {
            si = i;
            sj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (sgn(st.a(t, j)) != 0 && cmpabs(st.a(t, j), st.a(si, sj)) < 0) {
            si = t;
            sj = j;
          }
        st.row_swap(t, si);
        st.col_swap(t, sj);
        continue;
      }
      // Pivot must divide the whole trailing block.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(st.a(i, j).get_mpz_t(), st.a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      st.row_op(t, Integer(-1), bad);
    }
    if (sgn(st.a(t, t)) < 0) st.negate_row(t);
    ++t;
  }

  SmithDecomposition out;
  out.rank = t;
  for (std::size_t i = 0; i < t; ++i) out.diagonal.push_back(st.a(i, i));
  out.left = std::move(st.left);
  out.left_inverse = std::move(st.left_inv);
  out.right = std::move(st.right);
  return out;
}

ColumnEchelon column_echelon(DenseIntMatrix a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  DenseIntMatrix v = DenseIntMatrix::identity(n);
  DenseIntMatrix vinv = DenseIntMatrix::identity(n);
  auto col_swap = [&](std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
    vinv.swap_rows(i, j);
  };
  // col_j -= q col_c
  auto col_op = [&](std::size_t j, const Integer& q, std::size_t c) {
    a.col_submul(j, q, c);
    v.col_submul(j, q, c);
    vinv.row_submul(c, -q, j);
  };

  std::size_t c = 0;
  for (std::size_t i = 0; i < m && c < n; ++i) {
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = c; j < n; ++j)
        if (sgn(a(i, j)) != 0 && (best == n || cmpabs(a(i, j), a(i, best)) < 0)) best = j;
      if (best == n) break;
      col_swap(c, best);
      bool others = false;
      for (std::size_t j = c + 1; j < n; ++j) {
        if (sgn(a(i, j)) == 0) continue;
        col_op(j, trunc_quotient(a(i, j), a(i, c)), c);
        if (sgn(a(i, j)) != 0) others = true;
      }
      if (!others) {
        ++c;
        break;
      }
    }
  }
  return ColumnEchelon{std::move(a), std::move(v), std::move(vinv), c};
}

}  // namespace hstab::linalg
