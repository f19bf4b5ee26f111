#include <algorithm>
#include <array>

#include "eliminator.hpp"
#include "hstab/error.hpp"
#include "hstab/linalg.hpp"

namespace hstab::linalg {

namespace {

/// Turns a list of diagonal entries into the divisibility chain with the
/// same product structure (pairwise gcd/lcm exchange).
std::vector<Integer> normalize_diagonal(std::vector<Integer> diag) {
  std::vector<Integer> units;
  std::vector<Integer> rest;
  for (auto& d : diag) {
    d = abs(d);
    if (d == 1)
      units.push_back(d);
    else
      rest.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < rest.size(); ++i) {
    for (std::size_t j = i + 1; j < rest.size(); ++j) {
      Integer g = gcd(rest[i], rest[j]);
      Integer l = lcm(rest[i], rest[j]);
      rest[i] = std::move(g);
      rest[j] = std::move(l);
    }
  }
  std::vector<Integer> out(units.size(), Integer(1));
  for (auto& d : rest) out.push_back(std::move(d));
  return out;
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (p == small) return true;
    if (p % small == 0) return false;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = p - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == p - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x);
      if (x == p - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

SmithForm smith_normal_form(const SparseIntegerMatrix& m, const Limits& limits) {
  SmithForm out;
  out.rows = m.rows();
  out.cols = m.cols();
  std::vector<Integer> pivots;
  try {
    detail::SparseEliminator<detail::CheckedInt64> elim(m, detail::CheckedInt64{}, limits);
    pivots = elim.run();
  } catch (const detail::Overflow&) {
    detail::SparseEliminator<detail::BigInt> elim(m, detail::BigInt{limits.max_coefficient_bits}, limits);
    pivots = elim.run();
  }
  out.rank = pivots.size();
  out.invariant_factors = normalize_diagonal(std::move(pivots));
  return out;
}

std::size_t rank_mod_p(const SparseIntegerMatrix& m, std::uint64_t p, const Limits& limits) {
  if (!is_prime(p)) throw ArgumentError(std::to_string(p) + " is not prime");
  if (p >= (1ULL << 63)) throw ArgumentError("prime must be below 2^63");
  detail::SparseEliminator<detail::ModP> elim(m, detail::ModP{p}, limits);
  return elim.run().size();
}

std::size_t rational_rank(const SparseIntegerMatrix& m, const Limits& limits) {
  static constexpr std::array<std::uint64_t, 3> kPrimes = {2305843009213693951ULL, 4611686018427387847ULL,
                                                           1000000007ULL};
  std::size_t best = 0;
  const std::size_t full = std::min(m.rows(), m.cols());
  for (auto p : kPrimes) {
    best = std::max(best, rank_mod_p(m, p, limits));
    if (best == full) break;
  }
  return best;
}

}  // namespace hstab::linalg
