#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tcgraphs/gf2.hpp"

using tcg::gf2::BitMatrix;
using tcg::gf2::BitVector;

namespace {

std::vector<std::vector<std::uint8_t>> random_dense(std::mt19937& rng, int rows, int cols, double p) {
  std::bernoulli_distribution bit(p);
  std::vector<std::vector<std::uint8_t>> a(rows, std::vector<std::uint8_t>(cols));
  for (auto& r : a)
    for (auto& x : r) x = bit(rng);
  return a;
}

BitMatrix to_bits(const std::vector<std::vector<std::uint8_t>>& a, int cols) {
  BitMatrix m(a.size(), cols);
  for (std::size_t r = 0; r < a.size(); ++r)
    for (int c = 0; c < cols; ++c)
      if (a[r][c]) m.set(r, c);
  return m;
}

}  // namespace

TEST(BitVector, BasicOps) {
  BitVector v(130);
  EXPECT_TRUE(v.none());
  v.set(0);
  v.set(64);
  v.set(129);
  EXPECT_EQ(v.count(), 3u);
  EXPECT_EQ(v.find_first(), 0u);
  EXPECT_EQ(v.find_next(0), 64u);
  EXPECT_EQ(v.find_next(64), 129u);
  EXPECT_EQ(v.find_next(129), 130u);
  v.flip(64);
  EXPECT_FALSE(v.test(64));
  BitVector w = BitVector::unit(130, 129);
  EXPECT_TRUE(v.dot(w));
  v ^= w;
  EXPECT_EQ(v.ones(), std::vector<std::size_t>{0});
  EXPECT_THROW(v ^= BitVector(3), std::invalid_argument);
}

TEST(BitMatrix, ProductAndTranspose) {
  auto a = BitMatrix::from_rows({{1, 0, 1}, {0, 1, 1}});
  auto b = BitMatrix::from_rows({{1, 1}, {0, 1}, {1, 0}});
  auto c = a * b;
  EXPECT_EQ(c.row(0).ones(), std::vector<std::size_t>{1});
  EXPECT_EQ(c.row(1).ones(), (std::vector<std::size_t>{0, 1}));
  auto t = a.transpose();
  EXPECT_EQ(t.rows(), 3u);
  EXPECT_TRUE(t.test(2, 1));
  EXPECT_TRUE((BitMatrix::identity(4) * BitMatrix::identity(4)).row(3).test(3));
}

TEST(Rank, MatchesDenseElimination) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int rows = 1 + trial % 17, cols = 1 + (trial * 7) % 23;
    auto a = random_dense(rng, rows, cols, 0.1 + 0.4 * (trial % 3));
    auto m = to_bits(a, cols);
    int want = oracle::dense_rank(a);
    EXPECT_EQ(static_cast<int>(tcg::gf2::rank(m)), want);
    tcg::gf2::SparseColumns s;
    s.rows = rows;
    for (int c = 0; c < cols; ++c) {
      std::vector<std::uint32_t> col;
      for (int r = 0; r < rows; ++r)
        if (a[r][c]) col.push_back(r);
      s.cols.push_back(col);
    }
    EXPECT_EQ(static_cast<int>(tcg::gf2::sparse_rank(s)), want);
  }
}

TEST(Kernel, BasisIsKernelAndFull) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    int rows = 1 + trial % 9, cols = 1 + trial % 14;
    auto a = random_dense(rng, rows, cols, 0.35);
    auto m = to_bits(a, cols);
    auto ker = tcg::gf2::kernel_basis(m);
    EXPECT_EQ(static_cast<int>(ker.size()), cols - oracle::dense_rank(a));
    for (const auto& k : ker) EXPECT_TRUE(m.apply(k).none());
    std::vector<std::vector<std::uint8_t>> kk;
    for (const auto& k : ker) {
      std::vector<std::uint8_t> r(cols);
      for (int c = 0; c < cols; ++c) r[c] = k.test(c);
      kk.push_back(r);
    }
    EXPECT_EQ(oracle::dense_rank(kk), static_cast<int>(ker.size()));
  }
}

TEST(QuotientBasis, CountsAndRejectsStrayBoundaries) {
  BitVector z1(3), z2(3), b(3);
  z1.set(0);
  z2.set(1);
  b.set(0);
  b.set(1);
  auto reps = tcg::gf2::quotient_basis({z1, z2}, {b});
  EXPECT_EQ(reps.size(), 1u);
  EXPECT_EQ(reps[0], z1);
  BitVector stray(3);
  stray.set(2);
  EXPECT_THROW(tcg::gf2::quotient_basis({z1, z2}, {stray}), std::invalid_argument);
}
