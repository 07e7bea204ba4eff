#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "sl2sheaf/poly_matrix.hpp"

using namespace sl2sheaf;

namespace {

// Rank by elimination on plain integers mod p, written independently of the library.
long oracle_rank(std::vector<std::vector<long>> a, long p) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t s = r;
    while (s < rows && a[s][c] % p == 0) ++s;
    if (s == rows) continue;
    std::swap(a[s], a[r]);
    long inv = 1;
    while (a[r][c] * inv % p != 1) ++inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] % p == 0) continue;
      const long f = a[i][c] * inv % p;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
    }
    ++r;
  }
  return static_cast<long>(r);
}

std::vector<std::vector<long>> to_longs(const Matrix& m) {
  std::vector<std::vector<long>> out(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

// Leibniz expansion.
Elem leibniz(const Matrix& m) {
  const Field& f = m.field();
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Elem acc = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    Elem term = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) term = f.mul(term, m(i, perm[i]));
    acc = inversions % 2 ? f.sub(acc, term) : f.add(acc, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

Matrix low_rank(const Field& f, std::size_t r, std::size_t c, std::size_t k, std::mt19937_64& rng) {
  return random_matrix(f, r, k, rng) * random_matrix(f, k, c, rng);
}

}  // namespace

TEST(Matrix, RankMatchesOracle) {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {3u, 5u, 7u})
    for (int trial = 0; trial < 60; ++trial) {
      const Field f(p);
      const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7, k = rng() % 5;
      const Matrix m = k ? low_rank(f, r, c, k, rng) : random_matrix(f, r, c, rng);
      EXPECT_EQ(static_cast<long>(rank(m)), oracle_rank(to_longs(m), p));
      EXPECT_EQ(rank(m), rank(m.transpose()));
      EXPECT_EQ(rref(m).pivots.size(), rank(m));
    }
}

TEST(Matrix, NullspaceIsKernelOfRightSize) {
  std::mt19937_64 rng(12);
  for (const Field& f : {Field(3), Field(5, 2)})
    for (int trial = 0; trial < 40; ++trial) {
      const Matrix m = low_rank(f, 1 + rng() % 6, 1 + rng() % 8, 1 + rng() % 4, rng);
      const auto rn = rank_nullspace(m);
      EXPECT_EQ(rn.rank + rn.nullspace.size(), m.cols());
      for (const auto& v : rn.nullspace) {
        const Vec w = m.apply(v);
        EXPECT_TRUE(std::all_of(w.begin(), w.end(), [](Elem x) { return x == 0; }));
      }
      if (!rn.nullspace.empty()) {
        EXPECT_EQ(rank(Matrix::from_columns(f, m.cols(), rn.nullspace)), rn.nullspace.size());
      }
    }
}

TEST(Matrix, InverseAndSolve) {
  std::mt19937_64 rng(13);
  const Field f(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    Matrix a = random_matrix(f, n, n, rng);
    if (rank(a) < n) {
      EXPECT_THROW(inverse(a), std::domain_error);
      continue;
    }
    EXPECT_EQ(a * inverse(a), Matrix::identity(f, n));
    const Matrix x = random_matrix(f, n, 3, rng);
    EXPECT_EQ(solve(a, a * x), x);
  }
  const Matrix tall = Matrix::from_ints(f, {{1, 0}, {0, 1}, {0, 0}});
  EXPECT_THROW(solve(tall, Matrix::from_ints(f, {{0}, {0}, {1}})), std::domain_error);
  EXPECT_THROW(solve(Matrix::from_ints(f, {{1, 1}, {1, 1}}), Matrix::from_ints(f, {{1}, {1}})), std::domain_error);
}

TEST(Matrix, BlocksAndPowers) {
  const Field f(5);
  const Matrix a = Matrix::from_ints(f, {{1, 2}, {3, 4}});
  const Matrix b = Matrix::from_ints(f, {{0, 1}, {0, 0}});
  const Matrix d = block_diagonal(a, b);
  EXPECT_EQ(d.block(0, 0, 2, 2), a);
  EXPECT_EQ(d.block(2, 2, 2, 2), b);
  EXPECT_TRUE(d.block(0, 2, 2, 2).is_zero());
  EXPECT_TRUE(b.pow(2).is_zero());
  EXPECT_EQ(a.pow(3), a * a * a);
  EXPECT_EQ(a.pow(0), Matrix::identity(f, 2));
  EXPECT_EQ(Matrix::from_ints(f, {{-1, 7}}), Matrix::from_ints(f, {{4, 2}}));
}

TEST(PolyMatrix, DeterminantMatchesLeibnizAtEveryPoint) {
  std::mt19937_64 rng(14);
  const Field f(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    std::vector<Matrix> layers;
    for (int k = 0; k < 3; ++k) layers.push_back(random_matrix(f, n, n, rng));
    const PolyMatrix m = PolyMatrix::from_coefficients(layers);
    const Poly det = determinant(m);
    for (Elem u = 0; u < 5; ++u) EXPECT_EQ(det.eval(u), leibniz(m.eval(u)));
  }
}

TEST(PolyMatrix, GenericRankBoundsPointwiseRanks) {
  std::mt19937_64 rng(15);
  const Field f(3);
  const Field big(3, 4);
  const Embedding emb(f, big);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t r = 2 + rng() % 4, c = 2 + rng() % 4;
    std::vector<Matrix> layers;
    for (int k = 0; k < 2; ++k) layers.push_back(low_rank(f, r, c, 1 + rng() % 2, rng));
    const PolyMatrix m = PolyMatrix::from_coefficients(layers);
    const GenericRank g = generic_rank(m);
    // over F_81 some point attains the generic rank; none exceeds it
    std::size_t best = 0;
    std::vector<Matrix> big_layers;
    for (const auto& l : layers) big_layers.push_back(l.extend(emb));
    const PolyMatrix mb = PolyMatrix::from_coefficients(big_layers);
    for (Elem u = 0; u < big.order(); ++u) best = std::max(best, rank(mb.eval(u)));
    EXPECT_EQ(g.rank, best);
    // the recorded minor vanishes exactly where the selected rows and columns drop rank
    for (Elem u = 0; u < 3; ++u) {
      const Matrix at = m.eval(u);
      Matrix sub(f, g.rank, g.rank);
      for (std::size_t i = 0; i < g.rank; ++i)
        for (std::size_t j = 0; j < g.rank; ++j) sub(i, j) = at(g.row_order[i], g.col_order[j]);
      EXPECT_EQ(g.minor.eval(u) == 0, rank(sub) < g.rank);
    }
  }
}
