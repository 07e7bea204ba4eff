#include <gtest/gtest.h>

#include "sl2sheaf/heller.hpp"

using namespace sl2sheaf;

TEST(Heller, WeightTwoAtFive) {
  const HellerShift h = heller_shift(5, 2);
  EXPECT_FALSE(h.projective);
  EXPECT_EQ(h.lambda_shift, 6);
  ASSERT_TRUE(h.module.has_value());
  EXPECT_EQ(h.module->dim(), 7u);
  EXPECT_EQ(h.label(), "V(6)");
  ASSERT_TRUE(h.isomorphism.has_value());
  EXPECT_TRUE(is_homomorphism(*h.isomorphism, *h.module, weyl(5, 6)));
  EXPECT_EQ(rank(*h.isomorphism), 7u);
}

TEST(Heller, SteinbergIsProjective) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const HellerShift h = heller_shift(p, p - 1);
    EXPECT_TRUE(h.projective);
    EXPECT_EQ(h.label(), "0");
    EXPECT_FALSE(h.module.has_value());
  }
}

TEST(Heller, RejectsTopResidueAboveP) {
  EXPECT_THROW(projective_cover(5, 9), std::invalid_argument);
  EXPECT_THROW(projective_cover(3, 5), std::invalid_argument);
  EXPECT_THROW(projective_cover(3, -1), std::invalid_argument);
}

TEST(Heller, CoverChecksAndDimensions) {
  for (std::uint32_t p : {3u, 5u}) {
    const long P = p;
    for (long l = 0; l <= 3 * P; ++l) {
      if (l % P == P - 1) continue;
      const long r = l / P, a = l % P;
      const CoverData c = projective_cover(p, l);
      EXPECT_EQ(c.map.rows(), static_cast<std::size_t>(l + 1));
      EXPECT_EQ(c.map.cols(), static_cast<std::size_t>(2 * P * (r + 1)));
      EXPECT_TRUE(check_cover(c).ok()) << p << " " << l;
      const HellerShift h = heller_shift(p, l);
      EXPECT_EQ(static_cast<long>(h.module->dim()), 2 * P * (r + 1) - (l + 1));
      EXPECT_EQ(h.lambda_shift, (r + 2) * P - a - 2);
      EXPECT_EQ(static_cast<long>(h.module->dim()), h.lambda_shift + 1);
    }
  }
}
