#include <algorithm>
#include <charconv>
#include <sstream>

#include "hstab/error.hpp"
#include "hstab/linalg.hpp"

namespace hstab::linalg {

namespace {

bool position_less(const Entry& a, const Entry& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

std::vector<Entry> canonicalize(std::vector<Entry> triplets) {
  std::sort(triplets.begin(), triplets.end(), position_less);
  std::vector<Entry> out;
  out.reserve(triplets.size());
  for (auto& e : triplets) {
    if (!out.empty() && out.back().row == e.row && out.back().col == e.col) {
      out.back().value += e.value;
    } else {
      out.push_back(std::move(e));
    }
  }
  std::erase_if(out, [](const Entry& e) { return sgn(e.value) == 0; });
  return out;
}

std::string_view next_line(std::string_view& text) {
  auto pos = text.find('\n');
  std::string_view line = text.substr(0, pos);
  text = pos == std::string_view::npos ? std::string_view{} : text.substr(pos + 1);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::size_t parse_count(std::string_view field, std::size_t line_no, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw ParseError("line " + std::to_string(line_no) + ": invalid " + what + " '" + std::string(field) + "'");
  return value;
}

}  // namespace

SparseIntegerMatrix SparseIntegerMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                                       std::vector<Entry> triplets) {
  for (const auto& e : triplets)
    if (e.row >= rows || e.col >= cols) throw ArgumentError("matrix entry index out of bounds");
  SparseIntegerMatrix m(rows, cols);
  m.entries_ = canonicalize(std::move(triplets));
  return m;
}

SparseIntegerMatrix SparseIntegerMatrix::identity(std::size_t n) {
  SparseIntegerMatrix m(n, n);
  m.entries_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) m.entries_.push_back({i, i, Integer(1)});
  return m;
}

SparseIntegerMatrix SparseIntegerMatrix::from_dense(const std::vector<std::vector<Integer>>& dense) {
  const std::size_t rows = dense.size();
  const std::size_t cols = rows ? dense[0].size() : 0;
  SparseIntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (dense[i].size() != cols) throw ArgumentError("ragged dense matrix");
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(dense[i][j]) != 0) m.entries_.push_back({i, j, dense[i][j]});
  }
  return m;
}

SparseIntegerMatrix SparseIntegerMatrix::from_text(std::string_view text) {
  std::size_t line_no = 0;
  std::string_view line;
  do {
    if (text.empty()) throw ParseError("line 1: missing header 'rows cols nnz'");
    line = next_line(text);
    ++line_no;
  } while (split_fields(line).empty());

  auto header = split_fields(line);
  if (header.size() != 3)
    throw ParseError("line " + std::to_string(line_no) + ": header must be 'rows cols nnz'");
  const std::size_t rows = parse_count(header[0], line_no, "row count");
  const std::size_t cols = parse_count(header[1], line_no, "column count");
  const std::size_t nnz = parse_count(header[2], line_no, "entry count");

  SparseIntegerMatrix m(rows, cols);
  m.entries_.reserve(nnz);
  while (m.entries_.size() < nnz) {
    if (text.empty())
      throw ParseError("line " + std::to_string(line_no + 1) + ": expected " + std::to_string(nnz) +
                       " entries, found " + std::to_string(m.entries_.size()));
    line = next_line(text);
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 3)
      throw ParseError("line " + std::to_string(line_no) + ": entry must be 'i j v'");
    Entry e{parse_count(fields[0], line_no, "row index"), parse_count(fields[1], line_no, "column index"), Integer()};
    if (e.value.set_str(std::string(fields[2]), 10) != 0)
      throw ParseError("line " + std::to_string(line_no) + ": invalid integer '" + std::string(fields[2]) + "'");
    if (e.row >= rows || e.col >= cols)
      throw ParseError("line " + std::to_string(line_no) + ": index out of bounds");
    if (sgn(e.value) == 0) throw ParseError("line " + std::to_string(line_no) + ": stored zero value");
    if (!m.entries_.empty() && !position_less(m.entries_.back(), e))
      throw ParseError("line " + std::to_string(line_no) + ": entries not sorted by (i, j) or duplicated");
    m.entries_.push_back(std::move(e));
  }
  while (!text.empty()) {
    line = next_line(text);
    ++line_no;
    if (!split_fields(line).empty())
      throw ParseError("line " + std::to_string(line_no) + ": trailing data after " + std::to_string(nnz) + " entries");
  }
  return m;
}

std::string SparseIntegerMatrix::to_text() const {
  std::ostringstream out;
  out << rows_ << ' ' << cols_ << ' ' << entries_.size() << '\n';
  for (const auto& e : entries_) out << e.row << ' ' << e.col << ' ' << e.value.get_str() << '\n';
  return out.str();
}

Integer SparseIntegerMatrix::at(std::size_t row, std::size_t col) const {
  Entry probe{row, col, Integer()};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), probe, position_less);
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return Integer(0);
}

std::vector<std::vector<Integer>> SparseIntegerMatrix::to_dense() const {
  std::vector<std::vector<Integer>> dense(rows_, std::vector<Integer>(cols_));
  for (const auto& e : entries_) dense[e.row][e.col] = e.value;
  return dense;
}

SparseIntegerMatrix SparseIntegerMatrix::transpose() const {
  std::vector<Entry> t;
  t.reserve(entries_.size());
  for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
  SparseIntegerMatrix m(cols_, rows_);
  std::sort(t.begin(), t.end(), position_less);
  m.entries_ = std::move(t);
  return m;
}

SparseIntegerMatrix SparseIntegerMatrix::operator*(const SparseIntegerMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ArgumentError("matrix product dimension mismatch");
  // Row ranges of rhs for the row-times-row expansion.
  std::vector<std::size_t> start(rhs.rows_ + 1, 0);
  for (const auto& e : rhs.entries_) ++start[e.row + 1];
  for (std::size_t i = 0; i < rhs.rows_; ++i) start[i + 1] += start[i];

  std::vector<Entry> out;
  std::vector<Entry> row_acc;
  std::size_t k = 0;
  while (k < entries_.size()) {
    const std::size_t row = entries_[k].row;
    row_acc.clear();
    for (; k < entries_.size() && entries_[k].row == row; ++k) {
      const auto& a = entries_[k];
      for (std::size_t t = start[a.col]; t < start[a.col + 1]; ++t)
        row_acc.push_back({row, rhs.entries_[t].col, a.value * rhs.entries_[t].value});
    }
    auto merged = canonicalize(std::move(row_acc));
    out.insert(out.end(), std::make_move_iterator(merged.begin()), std::make_move_iterator(merged.end()));
    row_acc = {};
  }
  SparseIntegerMatrix m(rows_, rhs.cols_);
  m.entries_ = std::move(out);
  return m;
}

SparseIntegerMatrix SparseIntegerMatrix::operator+(const SparseIntegerMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ArgumentError("matrix sum dimension mismatch");
  std::vector<Entry> all(entries_);
  all.insert(all.end(), rhs.entries_.begin(), rhs.entries_.end());
  SparseIntegerMatrix m(rows_, cols_);
  m.entries_ = canonicalize(std::move(all));
  return m;
}

SparseIntegerMatrix SparseIntegerMatrix::operator-() const {
  SparseIntegerMatrix m(*this);
  for (auto& e : m.entries_) e.value = -e.value;
  return m;
}

SparseIntegerMatrix SparseIntegerMatrix::reduced_mod(std::uint64_t p) const {
  SparseIntegerMatrix m(rows_, cols_);
  for (const auto& e : entries_) {
    unsigned long r = mpz_fdiv_ui(e.value.get_mpz_t(), p);
    if (r != 0) m.entries_.push_back({e.row, e.col, Integer(r)});
  }
  return m;
}

SparseIntegerMatrix SparseIntegerMatrix::permuted(std::span<const std::size_t> row_perm,
                                                  std::span<const std::size_t> col_perm) const {
  if (row_perm.size() != rows_ || col_perm.size() != cols_) throw ArgumentError("permutation size mismatch");
  std::vector<std::size_t> row_inv(rows_), col_inv(cols_);
  for (std::size_t i = 0; i < rows_; ++i) row_inv[row_perm[i]] = i;
  for (std::size_t j = 0; j < cols_; ++j) col_inv[col_perm[j]] = j;
  std::vector<Entry> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back({row_inv[e.row], col_inv[e.col], e.value});
  SparseIntegerMatrix m(rows_, cols_);
  std::sort(out.begin(), out.end(), position_less);
  m.entries_ = std::move(out);
  return m;
}

}  // namespace hstab::linalg
