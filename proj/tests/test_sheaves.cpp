#include <gtest/gtest.h>

#include "sl2sheaf/sheaves.hpp"

using namespace sl2sheaf;

TEST(KernelSheaf, SmallCases) {
  EXPECT_EQ(kernel_sheaf(weyl(5, 2)).splitting, SplittingType({-2}));
  EXPECT_EQ(kernel_sheaf(dual_weyl(5, 7)).splitting, SplittingType({-2, -2}));
  EXPECT_EQ(kernel_sheaf(projective(Field(5), 2)).splitting, SplittingType({-2, -6}));
  // V(7), p = 5: r = 1, a = 2
  EXPECT_EQ(kernel_sheaf(weyl(5, 7)).splitting, SplittingType({-1, -7}));
}

TEST(KernelSheaf, RankIsTheGenericCorank) {
  for (std::uint32_t p : {3u, 5u}) {
    const Field k(p);
    for (long l = 0; l <= 2L * p; ++l) {
      const Sl2Module M = dual_weyl(k, l);
      const auto ks = kernel_sheaf(M);
      const Partition t = jordan_profile(M).generic;
      // one kernel vector per Jordan block
      EXPECT_EQ(ks.splitting.rank(), t.length()) << M.label();
      for (const auto& g : ks.data.generators) EXPECT_TRUE(annihilates(build_theta(M), g));
    }
  }
}

TEST(Fi, WeylV2) {
  const Sl2Module V = weyl(5, 2);
  for (int i = 1; i <= 5; ++i) {
    const FiData fd = fi_data(V, i);
    ASSERT_TRUE(fd.determined()) << i;
    EXPECT_EQ(*fd.analysis.splitting, i == 3 ? SplittingType({-2}) : SplittingType()) << i;
  }
  EXPECT_THROW(fi_data(V, 0), std::invalid_argument);
  EXPECT_THROW(fi_data(V, 6), std::invalid_argument);
}

TEST(Fi, WeylSevenAtFive) {
  const FiData fd = fi_data(weyl(5, 7), 3);
  ASSERT_TRUE(fd.determined());
  EXPECT_EQ(*fd.analysis.splitting, SplittingType({-7}));
}

TEST(Fi, RanksRecoverTheGenericType) {
  for (const auto& M : {weyl(5, 2), projective(Field(3), 1), weyl(3, 4)}) {
    const FiRankReport rep = verify_fi_rank_theorem(M);
    EXPECT_TRUE(rep.ok()) << M.label() << ": " << rep.generic.to_string() << " vs " << rep.from_fi.to_string();
  }
  const FiRankReport q = verify_fi_rank_theorem(projective(Field(3), 1));
  EXPECT_EQ(q.ranks, (std::vector<std::size_t>{0, 0, 2}));
}

TEST(Fi, RejectsNonConstantType) { EXPECT_THROW(verify_fi_rank_theorem(phi(3, 4, 0)), std::invalid_argument); }
