#include <gtest/gtest.h>

#include "sl2sheaf/partition.hpp"

using namespace sl2sheaf;

namespace {

void all_partitions(int n, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    all_partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  all_partitions(n, n, cur, out);
  return out;
}

// Boxes outside the first j columns, counted box by box.
int boxes_outside(const Partition& x, int j) {
  int count = 0;
  for (int row : x.parts())
    for (int col = 1; col <= row; ++col) count += col > j;
  return count;
}

}  // namespace

TEST(Partition, ConjugateOfWorkedExample) {
  const Partition x({4, 4, 2, 1});
  EXPECT_EQ(x.to_string(), "[4]^2[2][1]");
  EXPECT_EQ(x.conjugate(), Partition({4, 3, 2, 2}));
  EXPECT_EQ(x.conjugate().to_string(), "[4][3][2]^2");
  EXPECT_EQ(x.j_rank(2), 4);
}

TEST(Partition, StringsAndParsing) {
  EXPECT_EQ(Partition().to_string(), "[]");
  EXPECT_EQ(Partition({5, 5, 5}).to_string(), "[5]^3");
  EXPECT_EQ(Partition::parse("[4]^2[2][1]"), Partition({4, 4, 2, 1}));
  EXPECT_EQ(Partition::parse("[]"), Partition());
  EXPECT_THROW(Partition::parse("[4]^"), std::invalid_argument);
  EXPECT_THROW(Partition::parse("4,2"), std::invalid_argument);
  EXPECT_EQ(Partition::from_blocks({{5, 2}, {3, 1}, {1, 0}}), Partition({5, 5, 3}));
  EXPECT_EQ(Partition::from_unsorted({1, 3, 2, 3}), Partition({3, 3, 2, 1}));
}

TEST(Partition, RejectsBadInput) {
  EXPECT_THROW(Partition({1, 2}), std::invalid_argument);
  EXPECT_THROW(Partition({3, 0}), std::invalid_argument);
  EXPECT_THROW(Partition({6, 1}, 5), std::invalid_argument);
  EXPECT_NO_THROW(Partition({5, 1}, 5));
}

TEST(Partition, EqualityIgnoresBound) { EXPECT_EQ(Partition({3, 1}, 5), Partition({3, 1})); }

TEST(Partition, ConjugationIsAnInvolutionOnAllSmallPartitions) {
  for (int n = 0; n <= 12; ++n)
    for (const auto& x : partitions_of(n)) {
      EXPECT_EQ(x.conjugate().conjugate(), x);
      EXPECT_EQ(x.conjugate().size(), n);
      EXPECT_EQ(x.conjugate().length(), x.empty() ? 0u : static_cast<std::size_t>(x.parts()[0]));
    }
}

TEST(Partition, JRankCountsBoxes) {
  for (int n = 0; n <= 9; ++n)
    for (const auto& x : partitions_of(n))
      for (int j = 0; j <= n + 1; ++j) EXPECT_EQ(x.j_rank(j), boxes_outside(x, j)) << x.to_string() << " " << j;
}

TEST(Partition, RanksRoundTrip) {
  for (int n = 1; n <= 9; ++n)
    for (const auto& x : partitions_of(n)) {
      std::vector<int> ranks;
      for (int j = 1; j <= n; ++j) ranks.push_back(x.j_rank(j));
      EXPECT_EQ(jordan_type_from_ranks(n, ranks), x);
    }
}

TEST(Partition, RankSequenceMustBeConvex) {
  // drops 1, 2: not weakly decreasing
  EXPECT_THROW(jordan_type_from_ranks(4, {3, 1, 0}), std::invalid_argument);
  EXPECT_THROW(jordan_type_from_ranks(3, {4}), std::invalid_argument);
  EXPECT_EQ(jordan_type_from_ranks(3, {2, 1}), Partition({3}));
  EXPECT_EQ(jordan_type_from_ranks(3, {0, 0}), Partition({1, 1, 1}));
}
