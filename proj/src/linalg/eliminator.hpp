#pragma once

// Sparse row-elimination engine shared by the Smith-form and rank routines.
// The scalar policy decides what counts as a unit pivot and how quotients
// are taken; for a field every nonzero entry is a unit.

#include <algorithm>
#include <cstdint>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "hstab/error.hpp"
#include "hstab/linalg.hpp"

namespace hstab::linalg::detail {

struct Overflow {};

/// 64-bit integers with overflow detection; the caller restarts in GMP.
struct CheckedInt64 {
  using value_type = std::int64_t;

  value_type from(const Integer& x) const {
    if (!x.fits_slong_p()) throw Overflow{};
    long v = x.get_si();
    // Keep magnitudes away from INT64_MIN so negation and abs stay defined.
    if (v == INT64_MIN) throw Overflow{};
    return v;
  }
  Integer to_integer(value_type v) const { return Integer(static_cast<long>(v)); }
  bool is_zero(value_type v) const { return v == 0; }
  bool is_unit(value_type v) const { return v == 1 || v == -1; }
  bool less_magnitude(value_type a, value_type b) const { return (a < 0 ? -a : a) < (b < 0 ? -b : b); }
  bool divides(value_type a, value_type b) const { return b % a == 0; }
  value_type quotient(value_type b, value_type a) const { return b / a; }
  /// x - q*y
  value_type submul(value_type x, value_type q, value_type y) const {
    value_type prod = 0;
    value_type out = 0;
    if (__builtin_mul_overflow(q, y, &prod)) throw Overflow{};
    if (__builtin_sub_overflow(x, prod, &out)) throw Overflow{};
    if (out == INT64_MIN) throw Overflow{};
    return out;
  }
  value_type magnitude(value_type v) const { return v < 0 ? -v : v; }
};

struct BigInt {
  using value_type = Integer;
  std::size_t max_bits = 4096;

  value_type from(const Integer& x) const { return x; }
  Integer to_integer(const value_type& v) const { return v; }
  bool is_zero(const value_type& v) const { return sgn(v) == 0; }
  bool is_unit(const value_type& v) const { return mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0; }
  bool less_magnitude(const value_type& a, const value_type& b) const { return cmpabs(a, b) < 0; }
  bool divides(const value_type& a, const value_type& b) const { return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0; }
  value_type quotient(const value_type& b, const value_type& a) const {
    value_type q;
    mpz_tdiv_q(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
    return q;
  }
  value_type submul(const value_type& x, const value_type& q, const value_type& y) const {
    value_type out = x;
    mpz_submul(out.get_mpz_t(), q.get_mpz_t(), y.get_mpz_t());
    if (mpz_sizeinbase(out.get_mpz_t(), 2) > max_bits)
      throw ResourceLimitError("coefficient growth cap exceeded (" + std::to_string(max_bits) + " bits)");
    return out;
  }
  value_type magnitude(const value_type& v) const { return abs(v); }
};

/// Arithmetic in F_p for p < 2^63.
struct ModP {
  using value_type = std::uint64_t;
  std::uint64_t p;

  value_type from(const Integer& x) const { return mpz_fdiv_ui(x.get_mpz_t(), p); }
  Integer to_integer(value_type v) const { return Integer(static_cast<unsigned long>(v)); }
  bool is_zero(value_type v) const { return v == 0; }
  bool is_unit(value_type v) const { return v != 0; }
  bool less_magnitude(value_type, value_type) const { return false; }
  bool divides(value_type, value_type) const { return true; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % p);
  }
  value_type inverse(value_type a) const {
    // Fermat inversion; p is prime.
    value_type result = 1;
    value_type base = a % p;
    std::uint64_t e = p - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
  value_type quotient(value_type b, value_type a) const { return mul(b, inverse(a)); }
  value_type submul(value_type x, value_type q, value_type y) const {
    value_type prod = mul(q, y);
    return x >= prod ? x - prod : x + (p - prod);
  }
  value_type magnitude(value_type v) const { return v; }
};

template <class Ring>
class SparseEliminator {
 public:
  using T = typename Ring::value_type;
  using Row = std::vector<std::pair<std::uint32_t, T>>;

  SparseEliminator(const SparseIntegerMatrix& m, Ring ring, const Limits& limits)
      : ring_(std::move(ring)), limits_(limits), rows_(m.rows()), col_rows_(m.cols()),
        col_count_(m.cols(), 0), row_active_(m.rows(), 1), col_active_(m.cols(), 1) {
    for (const auto& e : m.entries()) {
      T v = ring_.from(e.value);
      if (ring_.is_zero(v)) continue;
      rows_[e.row].emplace_back(static_cast<std::uint32_t>(e.col), std::move(v));
      col_rows_[e.col].push_back(static_cast<std::uint32_t>(e.row));
      ++col_count_[e.col];
      ++nnz_;
    }
    check_entry_cap();
  }

  /// Runs elimination to completion. Returns the magnitudes of the pivots,
  /// one per rank step (units appear as 1).
  std::vector<Integer> run() {
    unit_phase();
    general_phase();
    return std::move(pivots_);
  }

 private:
  void check_entry_cap() const {
    if (nnz_ > limits_.max_entries)
      throw ResourceLimitError("entry-count cap exceeded (" + std::to_string(limits_.max_entries) + ")");
  }

  const T* find(std::size_t r, std::uint32_t c) const {
    const Row& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::uint32_t col) { return e.first < col; });
    if (it == row.end() || it->first != c) return nullptr;
    return &it->second;
  }

  /// Live rows of column c. Compacts stale bookkeeping as a side effect.
  const std::vector<std::uint32_t>& live_rows(std::uint32_t c) {
    auto& list = col_rows_[c];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](std::uint32_t r) { return !row_active_[r] || find(r, c) == nullptr; }),
               list.end());
    return list;
  }

  /// row_i <- row_i - q * row_r
  void row_axpy(std::size_t i, const T& q, std::size_t r) {
    const Row& src = rows_[r];
    Row& dst = rows_[i];
    Row out;
    out.reserve(dst.size() + src.size());
    std::size_t a = 0;
    std::size_t b = 0;
    while (a < dst.size() || b < src.size()) {
      if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
        out.push_back(std::move(dst[a]));
        ++a;
      } else if (a == dst.size() || src[b].first < dst[a].first) {
        const std::uint32_t c = src[b].first;
        T zero = ring_.from(Integer(0));
        T v = ring_.submul(zero, q, src[b].second);
        if (!ring_.is_zero(v)) {
          out.emplace_back(c, std::move(v));
          col_rows_[c].push_back(static_cast<std::uint32_t>(i));
          ++col_count_[c];
          ++nnz_;
        }
        ++b;
      } else {
        const std::uint32_t c = dst[a].first;
        T v = ring_.submul(dst[a].second, q, src[b].second);
        if (ring_.is_zero(v)) {
          --col_count_[c];
          --nnz_;
        } else {
          out.emplace_back(c, std::move(v));
        }
        ++a;
        ++b;
      }
    }
    dst = std::move(out);
    check_entry_cap();
  }

  void retire(std::size_t r, std::uint32_t c, const T& pivot) {
    for (const auto& [col, v] : rows_[r]) {
      --col_count_[col];
      --nnz_;
    }
    rows_[r].clear();
    row_active_[r] = 0;
    col_active_[c] = 0;
    col_rows_[c].clear();
    pivots_.push_back(abs(ring_.to_integer(ring_.magnitude(pivot))));
  }

  void unit_phase() {
    using Item = std::pair<std::uint32_t, std::uint32_t>;  // (count, col)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (std::uint32_t c = 0; c < col_count_.size(); ++c)
      if (col_count_[c] > 0) heap.emplace(col_count_[c], c);

    std::vector<std::uint32_t> deferred;
    bool progress = false;
    for (;;) {
      if (heap.empty()) {
        if (!progress || deferred.empty()) break;
        for (auto c : deferred)
          if (col_active_[c] && col_count_[c] > 0) heap.emplace(col_count_[c], c);
        deferred.clear();
        progress = false;
        continue;
      }
      auto [count, c] = heap.top();
      heap.pop();
      if (!col_active_[c] || col_count_[c] == 0) continue;
      if (count != col_count_[c]) {
        heap.emplace(col_count_[c], c);
        continue;
      }
      const auto& rows = live_rows(c);
      std::size_t best = SIZE_MAX;
      std::size_t best_len = SIZE_MAX;
      for (auto r : rows) {
        const T* v = find(r, c);
        if (ring_.is_unit(*v) && rows_[r].size() < best_len) {
          best = r;
          best_len = rows_[r].size();
        }
      }
      if (best == SIZE_MAX) {
        deferred.push_back(c);
        continue;
      }
      eliminate_column(best, c);
      progress = true;
    }
  }

  /// Clears column c below/above the unit pivot (r, c), then retires both.
  void eliminate_column(std::size_t r, std::uint32_t c) {
    const T pivot = *find(r, c);
    const std::vector<std::uint32_t> rows = live_rows(c);
    for (auto i : rows) {
      if (i == r) continue;
      const T* v = find(i, c);
      T q = ring_.quotient(*v, pivot);
      row_axpy(i, q, r);
    }
    retire(r, c, pivot);
  }

  /// Remaining non-unit part: repeatedly take a pivot of least magnitude and
  /// reduce its row and column by Euclidean steps until it divides them.
  void general_phase() {
    for (;;) {
      std::size_t pr = SIZE_MAX;
      std::uint32_t pc = 0;
      std::size_t best_cost = SIZE_MAX;
      const T* best = nullptr;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (!row_active_[r]) continue;
        for (const auto& [c, v] : rows_[r]) {
          std::size_t cost = (rows_[r].size() - 1) * (col_count_[c] - 1);
          if (best == nullptr || ring_.less_magnitude(v, *best) ||
              (!ring_.less_magnitude(*best, v) && cost < best_cost)) {
            best = &v;
            pr = r;
            pc = c;
            best_cost = cost;
          }
        }
      }
      if (best == nullptr) return;
      const T pivot = *best;

      bool reduced = false;
      const std::vector<std::uint32_t> rows = live_rows(pc);
      for (auto i : rows) {
        if (i == pr) continue;
        const T* v = find(i, pc);
        if (!ring_.divides(pivot, *v)) {
          T q = ring_.quotient(*v, pivot);
          row_axpy(i, q, pr);
          reduced = true;
        }
      }
      if (reduced) continue;
      for (auto i : rows) {
        if (i == pr) continue;
        const T* v = find(i, pc);
        if (v == nullptr) continue;
        T q = ring_.quotient(*v, pivot);
        row_axpy(i, q, pr);
      }
      // Column pc now holds only the pivot, so column operations touch row pr alone.
      Row& row = rows_[pr];
      bool row_reduced = false;
      Row out;
      out.reserve(row.size());
      for (auto& [c, v] : row) {
        if (c != pc && !ring_.divides(pivot, v)) {
          T q = ring_.quotient(v, pivot);
          T rem = ring_.submul(v, q, pivot);
          row_reduced = true;
          if (ring_.is_zero(rem)) {
            --col_count_[c];
            --nnz_;
            continue;
          }
          out.emplace_back(c, std::move(rem));
        } else {
          out.emplace_back(c, std::move(v));
        }
      }
      row = std::move(out);
      if (row_reduced) continue;
      retire(pr, pc, pivot);
    }
  }

  Ring ring_;
  Limits limits_;
  std::vector<Row> rows_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::uint32_t> col_count_;
  std::vector<char> row_active_;
  std::vector<char> col_active_;
  std::size_t nnz_ = 0;
  std::vector<Integer> pivots_;
};

}  // namespace hstab::linalg::detail
