#include <gtest/gtest.h>

#include <random>

#include "sl2sheaf/nullcone.hpp"

using namespace sl2sheaf;

namespace {

Partition pb(std::uint32_t p, std::vector<std::pair<int, int>> blocks) { return Partition::from_blocks(blocks, static_cast<int>(p)); }

std::vector<PointP1> points_over(const Field& f) {
  std::vector<PointP1> pts;
  for (Elem e = 0; e < f.order(); ++e) pts.push_back(PointP1::affine(f, e));
  pts.push_back(PointP1::infinity(f));
  return pts;
}

}  // namespace

TEST(Nullcone, IotaLandsOnTheNullcone) {
  for (const Field& f : {Field(3), Field(5), Field(3, 2), Field(7, 2)})
    for (const auto& pt : points_over(f)) {
      const auto v = iota(pt);
      EXPECT_TRUE(v.on_nullcone());
      EXPECT_EQ(v.x, f.mul(pt.s(), pt.s()));
      EXPECT_EQ(v.y, f.neg(f.mul(pt.t(), pt.t())));
      EXPECT_EQ(v.z, f.mul(pt.s(), pt.t()));
    }
}

TEST(Nullcone, PointsAreNormalized) {
  const Field k(5);
  EXPECT_TRUE(same_point(PointP1(k, 2, 4), PointP1::affine(k, 2)));
  EXPECT_TRUE(same_point(PointP1(k, 0, 3), PointP1::infinity(k)));
  EXPECT_EQ(PointP1(k, 3, 1).to_string(), "[1:2]");
  EXPECT_THROW(PointP1(k, 0, 0), std::invalid_argument);
}

TEST(Nullcone, OperatorIsTheLinearCombination) {
  const Sl2Module V = weyl(5, 2);
  const Field& k = V.field();
  for (const auto& pt : points_over(k)) {
    const auto v = iota(pt);
    // A = [[2z, 2x, 0], [y, 0, x], [0, 2y, -2z]]
    const Matrix A = Matrix::from_ints(k, {{2L * v.z, 2L * v.x, 0}, {v.y, 0, v.x}, {0, 2L * v.y, -2L * v.z}});
    EXPECT_EQ(operator_at(V, pt), A);
  }
}

TEST(Nullcone, WeylV2HasConstantTypeThree) {
  const Sl2Module V = weyl(5, 2);
  const auto prof = jordan_profile(V);
  EXPECT_TRUE(prof.constant());
  EXPECT_EQ(prof.generic, Partition({3}));
  EXPECT_EQ(profile_summary(prof), "constant [3]");
  for (const auto& pt : points_over(V.field())) {
    EXPECT_EQ(local_j_rank(V, pt, 1), 2);
    EXPECT_EQ(local_j_rank(V, pt, 2), 1);
  }
}

TEST(Nullcone, JRankEqualsRankOfPowersEverywhere) {
  for (std::uint32_t p : {3u, 5u}) {
    const Field k(p), L(p, 2);
    const std::vector<Sl2Module> mods{weyl(k, p + 1), dual_weyl(k, 2 * p), projective(k, 1), phi(p, p + 1, 1)};
    for (const auto& M : mods)
      for (const auto& pt : points_over(L)) {
        const Partition t = local_jordan_type(M, pt);
        for (int j = 1; j <= static_cast<int>(p); ++j) EXPECT_EQ(t.j_rank(j), local_j_rank(M, pt, j));
      }
  }
}

TEST(Nullcone, ProfileAgreesWithPointwiseTypesOverTheQuadraticExtension) {
  for (std::uint32_t p : {3u, 5u}) {
    const Field k(p), L(p, 2);
    for (long l = p; l <= 2L * p + 1; ++l) {
      if ((l + 1) % p == 0) continue;
      for (const PointP1& xi : {PointP1::affine(k, 1), PointP1::infinity(k), PointP1::affine(L, L.generator())}) {
        const Sl2Module M = phi(l, xi);
        const auto prof = jordan_profile(M);
        for (const auto& pt : points_over(L)) EXPECT_EQ(prof.at(pt), local_jordan_type(M, pt)) << M.label() << " at " << pt.to_string();
      }
    }
  }
}

TEST(Nullcone, PhiProfileFromTheTable) {
  const auto prof = jordan_profile(phi(5, 7, 1));
  EXPECT_EQ(prof.generic, Partition({5}));
  ASSERT_EQ(prof.exceptional.size(), 1u);
  EXPECT_TRUE(same_point(prof.exceptional[0].first, PointP1::affine(Field(5), 1)));
  EXPECT_EQ(prof.exceptional[0].second, Partition({3, 2}));
  EXPECT_EQ(profile_summary(prof), "generic [5]; exceptional [1:1] -> [3][2]");
}

TEST(Nullcone, ExceptionalPointAtInfinity) {
  const Field k(3);
  const auto prof = jordan_profile(phi(4, PointP1::infinity(k)));
  EXPECT_EQ(prof.generic, pb(3, {{3, 1}}));
  ASSERT_EQ(prof.exceptional.size(), 1u);
  EXPECT_TRUE(prof.exceptional[0].first.is_infinity());
  EXPECT_EQ(prof.exceptional[0].second, Partition({2, 1}));
}

TEST(Nullcone, ProjectivityCriterion) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const Field k(p);
    for (long a = 0; a < static_cast<long>(p); ++a) EXPECT_TRUE(is_projective(projective(k, a)));
    EXPECT_TRUE(is_projective(weyl(k, p - 1)));
    EXPECT_FALSE(is_projective(weyl(k, 0)));
    EXPECT_FALSE(is_projective(weyl(k, p)));
    EXPECT_FALSE(is_projective(phi(p, p + 1, 0)));
    EXPECT_TRUE(has_constant_jordan_type(dual_weyl(k, p + 2)));
  }
}

TEST(Nullcone, ScalingInvariance) {
  std::mt19937_64 rng(31);
  const Field L(5, 2);
  for (const auto& M : {weyl(L, 7), projective(L, 3), phi(8, PointP1::affine(L, L.generator()))})
    for (const auto& pt : points_over(Field(5))) {
      const Matrix A = operator_at(M, pt);
      for (int trial = 0; trial < 3; ++trial) {
        const Elem c = static_cast<Elem>(1 + rng() % (L.order() - 1));
        EXPECT_EQ(jordan_type_of(A.scaled(c), 5), jordan_type_of(A, 5));
      }
    }
}

TEST(Nullcone, RejectsOperatorsThatAreNotPNilpotent) {
  const Field k(3);
  EXPECT_THROW(jordan_type_of(Matrix::identity(k, 2), 3), std::domain_error);
}

TEST(Nullcone, IncompleteWhenTheExtensionBoundIsTooSmall) {
  const Field L(3, 2);
  ProfileOptions opt;
  opt.ext_max = 1;
  EXPECT_THROW(jordan_profile(phi(4, PointP1::affine(L, L.generator())), opt), ProfileIncomplete);
}
