#pragma once

// Independent reference computations used to cross-check the library.
// Everything here is deliberately naive.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<long long>>;

// Bareiss fraction-free determinant.
inline __int128 determinant(std::vector<std::vector<__int128>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline __int128 abs128(__int128 x) { return x < 0 ? -x : x; }

inline __int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Invariant factors from determinantal divisors: d_k = gcd of all k x k
// minors, factor_k = d_k / d_{k-1}.
inline std::vector<long long> invariant_factors(const Dense& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<long long> out;
  __int128 prev = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    __int128 g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<__int128>> sub(k, std::vector<__int128>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
        g = gcd128(g, determinant(sub));
      }
    if (g == 0) break;
    out.push_back(static_cast<long long>(g / prev));
    prev = g;
  }
  return out;
}

// Gaussian elimination over F_p on a dense copy.
inline std::size_t rank_mod_p(Dense m, long long p) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (auto& row : m)
    for (auto& v : row) v = ((v % p) + p) % p;
  auto inv = [p](long long a) {
    long long r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = static_cast<long long>((__int128)r * a % p);
      a = static_cast<long long>((__int128)a * a % p);
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    long long iv = inv(m[rank][c]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][c] == 0) continue;
      long long f = static_cast<long long>((__int128)m[i][c] * iv % p);
      for (std::size_t j = 0; j < cols; ++j)
        m[i][j] = static_cast<long long>(((m[i][j] - (__int128)f * m[rank][j]) % p + p) % p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace oracle
