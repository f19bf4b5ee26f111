#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hstab/dense.hpp"
#include "hstab/error.hpp"
#include "hstab/linalg.hpp"
#include "oracles.hpp"

using hstab::Integer;
using hstab::linalg::DenseIntMatrix;
using hstab::linalg::SparseIntegerMatrix;

namespace {

SparseIntegerMatrix sparse_of(const oracle::Dense& d) {
  std::vector<std::vector<Integer>> m;
  for (const auto& row : d) {
    m.emplace_back();
    for (long long v : row) m.back().emplace_back(static_cast<long>(v));
  }
  return SparseIntegerMatrix::from_dense(m);
}

std::vector<long long> factors(const SparseIntegerMatrix& m) {
  std::vector<long long> out;
  for (const auto& d : hstab::linalg::smith_normal_form(m).invariant_factors) out.push_back(d.get_si());
  return out;
}

oracle::Dense random_matrix(std::mt19937_64& rng, int lo, int hi, std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<int> val(lo, hi);
  std::size_t r = dim(rng), c = dim(rng);
  oracle::Dense d(r, std::vector<long long>(c));
  for (auto& row : d)
    for (auto& v : row) v = val(rng);
  return d;
}

DenseIntMatrix dense_of(const oracle::Dense& d) {
  DenseIntMatrix m(d.size(), d.empty() ? 0 : d[0].size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = static_cast<long>(d[i][j]);
  return m;
}

}  // namespace

TEST_CASE("smith normal form of small matrices") {
  CHECK(factors(sparse_of({{1, 0}, {0, 1}})) == std::vector<long long>{1, 1});
  CHECK(factors(sparse_of({{0, 0}, {0, 0}})).empty());
  CHECK(factors(sparse_of({{2, 4}, {6, 8}})) == std::vector<long long>{2, 4});
  CHECK(factors(sparse_of({{4, 0}, {0, 6}})) == std::vector<long long>{2, 12});
  CHECK(factors(SparseIntegerMatrix(0, 5)).empty());
  CHECK(factors(sparse_of({{2, 1, 0}, {0, 3, 0}})) == std::vector<long long>{1, 6});
}

TEST_CASE("rank modulo primes") {
  auto m = sparse_of({{2, 4}, {6, 8}});
  CHECK(hstab::linalg::rank_mod_p(m, 2) == 0);
  CHECK(hstab::linalg::rank_mod_p(m, 3) == 2);
  CHECK(hstab::linalg::rank_mod_p(sparse_of({{3, 0}, {0, 1}}), 3) == 1);
  CHECK_THROWS_AS(hstab::linalg::rank_mod_p(m, 4), hstab::ArgumentError);
  CHECK(hstab::linalg::rational_rank(m) == 2);
  CHECK(hstab::linalg::rational_rank(sparse_of({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("smith normal form agrees with determinantal divisors on random matrices") {
  std::mt19937_64 rng(20240501);
  for (int trial = 0; trial < 200; ++trial) {
    auto d = random_matrix(rng, -5, 5, 8);
    auto m = sparse_of(d);
    INFO("trial " << trial);
    CHECK(factors(m) == oracle::invariant_factors(d));
    for (long long p : {2LL, 3LL, 5LL, 7LL})
      CHECK(hstab::linalg::rank_mod_p(m, p) == oracle::rank_mod_p(d, p));
  }
}

TEST_CASE("sparse random matrices with many zeros") {
  std::mt19937_64 rng(77);
  std::bernoulli_distribution keep(0.3);
  for (int trial = 0; trial < 100; ++trial) {
    auto d = random_matrix(rng, -9, 9, 8);
    for (auto& row : d)
      for (auto& v : row)
        if (!keep(rng)) v = 0;
    CHECK(factors(sparse_of(d)) == oracle::invariant_factors(d));
  }
}

TEST_CASE("smith form is invariant under row and column permutations") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = sparse_of(random_matrix(rng, -4, 4, 7));
    std::vector<std::size_t> rp(m.rows()), cp(m.cols());
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    CHECK(factors(m.permuted(rp, cp)) == factors(m));
    CHECK(factors(m.transpose()) == factors(m));
  }
}

TEST_CASE("large coefficients fall back to arbitrary precision") {
  // Entries near 2^62 force intermediate overflow in 64-bit arithmetic.
  Integer big("4611686018427387903");
  std::vector<std::vector<Integer>> d = {{big, big + 1}, {big + 2, big * 1 + 5}};
  auto snf = hstab::linalg::smith_normal_form(SparseIntegerMatrix::from_dense(d));
  Integer det = d[0][0] * d[1][1] - d[0][1] * d[1][0];
  REQUIRE(snf.rank == 2);
  CHECK(snf.invariant_factors[0] * snf.invariant_factors[1] == abs(det));
}

TEST_CASE("text format round trip and validation") {
  auto m = sparse_of({{0, 3}, {-2, 0}, {0, 7}});
  auto text = m.to_text();
  CHECK(text == "3 2 3\n0 1 3\n1 0 -2\n2 1 7\n");
  CHECK(SparseIntegerMatrix::from_text(text) == m);
  CHECK_THROWS_AS(SparseIntegerMatrix::from_text("2 2 1\n5 0 1\n"), hstab::ParseError);
  CHECK_THROWS_AS(SparseIntegerMatrix::from_text("2 2 2\n1 0 1\n0 0 1\n"), hstab::ParseError);
  CHECK_THROWS_AS(SparseIntegerMatrix::from_text("2 2 1\n0 0 0\n"), hstab::ParseError);
  CHECK_THROWS_AS(SparseIntegerMatrix::from_text("2 2 1\n0 0 1\n1 1 1\n"), hstab::ParseError);
  CHECK_THROWS_AS(SparseIntegerMatrix::from_text("2 x 1\n"), hstab::ParseError);
  try {
    SparseIntegerMatrix::from_text("2 2 2\n0 0 1\n0 0 x\n");
    FAIL("expected parse error");
  } catch (const hstab::ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("resource cap on stored entries") {
  hstab::Limits tight;
  tight.max_entries = 3;
  CHECK_THROWS_AS(hstab::linalg::smith_normal_form(sparse_of({{1, 1, 1}, {1, 2, 3}, {1, 4, 9}}), tight),
                  hstab::ResourceLimitError);
}

TEST_CASE("dense smith decomposition reproduces the diagonal") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto d = random_matrix(rng, -6, 6, 6);
    auto a = dense_of(d);
    auto dec = hstab::linalg::smith_with_transforms(a, true);
    auto prod = dec.left * a * dec.right;
    DenseIntMatrix diag(a.rows(), a.cols());
    for (std::size_t i = 0; i < dec.rank; ++i) diag(i, i) = dec.diagonal[i];
    CHECK(prod == diag);
    CHECK(dec.left * dec.left_inverse == DenseIntMatrix::identity(a.rows()));
    std::vector<long long> got;
    for (const auto& v : dec.diagonal) got.push_back(v.get_si());
    CHECK(got == oracle::invariant_factors(d));
  }
}

TEST_CASE("column echelon yields a kernel basis") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    auto d = random_matrix(rng, -3, 3, 6);
    auto a = dense_of(d);
    auto ech = hstab::linalg::column_echelon(a);
    CHECK(a * ech.transform == ech.reduced);
    CHECK(ech.transform * ech.transform_inverse == DenseIntMatrix::identity(a.cols()));
    for (std::size_t j = ech.rank; j < a.cols(); ++j)
      for (std::size_t i = 0; i < a.rows(); ++i) CHECK(ech.reduced(i, j) == 0);
    CHECK(ech.rank == oracle::invariant_factors(d).size());
  }
}
