#include <gtest/gtest.h>

#include <random>

#include "sl2sheaf/families.hpp"

using namespace sl2sheaf;

namespace {

Matrix exp_nilpotent(const Matrix& x, std::uint32_t p) {
  const Field& k = x.field();
  Matrix acc = Matrix::identity(k, x.rows()), term = acc;
  for (std::uint32_t j = 1; j < p; ++j) {
    term = (term * x).scaled(k.inv(k.from_int(j)));
    acc = acc + term;
  }
  return acc;
}

Matrix random_sl2(const Field& k, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, k.order() - 1);
  for (;;) {
    Matrix g(k, 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) g(i, j) = static_cast<Elem>(d(rng));
    if (k.sub(k.mul(g(0, 0), g(1, 1)), k.mul(g(0, 1), g(1, 0))) != 0) return g;
  }
}

}  // namespace

TEST(Families, EveryConstructorSatisfiesTheRelations) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const Field k(p);
    for (long l = 0; l <= 3L * p; ++l) {
      EXPECT_TRUE(check_module(weyl(k, l)).ok()) << "V(" << l << ")";
      EXPECT_TRUE(check_module(dual_weyl(k, l)).ok()) << "V(" << l << ")*";
      if (l < static_cast<long>(p)) EXPECT_TRUE(check_module(projective(k, l)).ok()) << "Q(" << l << ")";
      if (l >= static_cast<long>(p) && (l + 1) % p != 0) {
        for (Elem e = 0; e < p; ++e) EXPECT_TRUE(check_module(phi(p, l, e)).ok());
        EXPECT_TRUE(check_module(phi(l, PointP1::infinity(k))).ok());
      }
    }
  }
}

TEST(Families, DimensionTable) {
  const Field k(5);
  EXPECT_EQ(weyl(k, 7).dim(), 8u);
  EXPECT_EQ(dual_weyl(k, 7).dim(), 8u);
  EXPECT_EQ(projective(k, 2).dim(), 10u);
  EXPECT_EQ(projective(k, 4).dim(), 5u);
  EXPECT_EQ(phi(5, 7, 1).dim(), 5u);
  EXPECT_EQ(phi(5, 13, 0).dim(), 10u);
}

TEST(Families, WeylV2MatchesDisplayedMatrices) {
  const Sl2Module V = weyl(5, 2);
  const Field& k = V.field();
  EXPECT_EQ(V.e(), Matrix::from_ints(k, {{0, 2, 0}, {0, 0, 1}, {0, 0, 0}}));
  EXPECT_EQ(V.f(), Matrix::from_ints(k, {{0, 0, 0}, {1, 0, 0}, {0, 2, 0}}));
  EXPECT_EQ(V.h(), Matrix::from_ints(k, {{2, 0, 0}, {0, 0, 0}, {0, 0, -2}}));
}

TEST(Families, Labels) {
  const Field k(5);
  EXPECT_EQ(weyl(k, 7).label(), "V(7)");
  EXPECT_EQ(dual_weyl(k, 7).label(), "V(7)*");
  EXPECT_EQ(projective(k, 2).label(), "Q(2)");
  EXPECT_EQ(phi(5, 7, 1).label(), "Phi_[1:1](7)");
  EXPECT_EQ(phi(7, PointP1::infinity(k)).label(), "Phi_[0:1](7)");
}

TEST(Families, RangeChecks) {
  const Field k(5);
  EXPECT_THROW(weyl(k, -1), std::invalid_argument);
  EXPECT_THROW(projective(k, 5), std::invalid_argument);
  EXPECT_THROW(phi(5, 4, 0), std::invalid_argument);
  EXPECT_THROW(phi(5, 9, 0), std::invalid_argument);
  EXPECT_THROW(Sl2Module(Matrix(k, 2, 2), Matrix(k, 3, 3), Matrix(k, 2, 2)), std::invalid_argument);
}

TEST(Families, DualOfWeylIsDualWeyl) {
  for (std::uint32_t p : {3u, 5u}) {
    const Field k(p);
    for (long l = 0; l <= 2L * p; ++l) {
      const auto iso = find_isomorphism(dual(weyl(k, l)), dual_weyl(k, l));
      ASSERT_TRUE(iso.has_value()) << p << " " << l;
      EXPECT_TRUE(is_homomorphism(*iso, dual(weyl(k, l)), dual_weyl(k, l)));
      EXPECT_EQ(rank(*iso), l + 1u);
    }
  }
}

TEST(Families, ProjectiveTopIsWeylOfTheSameWeight) {
  const Field k(5);
  EXPECT_EQ(projective(k, 4).e(), weyl(k, 4).e());
  EXPECT_EQ(projective(k, 4).family(), Family::Projective);
}

TEST(HomSpace, VectorsIntertwine) {
  const Field k(3);
  const std::vector<Sl2Module> mods{weyl(k, 2), weyl(k, 4), dual_weyl(k, 4), projective(k, 0), phi(3, 4, 1),
                                    direct_sum(weyl(k, 1), weyl(k, 1))};
  for (const auto& M : mods)
    for (const auto& N : mods)
      for (const auto& t : hom_space(M, N)) EXPECT_TRUE(is_homomorphism(t, M, N)) << M.label() << " -> " << N.label();
}

TEST(HomSpace, SimpleWeylModulesHaveScalarEndomorphisms) {
  for (std::uint32_t p : {3u, 5u, 7u})
    for (long l = 0; l < static_cast<long>(p); ++l) EXPECT_EQ(hom_space(weyl(p, l), weyl(p, l)).size(), 1u);
  EXPECT_EQ(hom_space(weyl(5, 1), weyl(5, 2)).size(), 0u);
  EXPECT_EQ(hom_space(direct_sum(weyl(5, 1), weyl(5, 1)), direct_sum(weyl(5, 1), weyl(5, 1))).size(), 4u);
}

TEST(Indecomposable, FittingTest) {
  const Field k(5);
  EXPECT_EQ(is_indecomposable(projective(k, 2)), Decomposability::Indecomposable);
  EXPECT_EQ(is_indecomposable(weyl(k, 7)), Decomposability::Indecomposable);
  EXPECT_EQ(is_indecomposable(phi(5, 7, 2)), Decomposability::Indecomposable);
  EXPECT_EQ(is_indecomposable(direct_sum(weyl(k, 1), weyl(k, 3))), Decomposability::Decomposable);
  EXPECT_EQ(is_indecomposable(direct_sum(weyl(k, 2), weyl(k, 2))), Decomposability::Decomposable);
}

TEST(GroupAction, IsAHomomorphism) {
  std::mt19937_64 rng(21);
  for (std::uint32_t p : {3u, 5u}) {
    const Field k(p);
    for (long l = 0; l <= 2L * p; ++l)
      for (int trial = 0; trial < 5; ++trial) {
        const Matrix g = random_sl2(k, rng), h = random_sl2(k, rng);
        EXPECT_EQ(sl2_group_action(l, g * h), sl2_group_action(l, g) * sl2_group_action(l, h));
      }
    EXPECT_EQ(sl2_group_action(4, Matrix::identity(k, 2)), Matrix::identity(k, 5));
  }
}

TEST(GroupAction, UnipotentsExponentiateTheLieAction) {
  for (std::uint32_t p : {5u, 7u}) {
    const Field k(p);
    for (long l = 0; l < static_cast<long>(p); ++l) {
      const Sl2Module V = weyl(k, l);
      EXPECT_EQ(sl2_group_action(l, Matrix::from_ints(k, {{1, 1}, {0, 1}})), exp_nilpotent(V.e(), p));
      EXPECT_EQ(sl2_group_action(l, Matrix::from_ints(k, {{1, 0}, {1, 1}})), exp_nilpotent(V.f(), p));
    }
  }
}

TEST(Phi, TranslateOfVAgreesWithTheTable) {
  for (std::uint32_t p : {3u, 5u}) {
    const Field k(p);
    for (long l = p; l <= 3L * p; ++l) {
      if ((l + 1) % p == 0) continue;
      for (Elem e = 0; e < p; ++e) {
        const PointP1 xi = PointP1::affine(k, e);
        EXPECT_TRUE(verify_phi_basis(l, xi).spans_equal());
        const Sl2Module a = phi_from_translate(l, xi), b = phi(l, xi);
        EXPECT_EQ(a.e(), b.e());
        EXPECT_EQ(a.f(), b.f());
        EXPECT_EQ(a.h(), b.h());
      }
      const PointP1 inf = PointP1::infinity(k);
      EXPECT_TRUE(verify_phi_basis(l, inf).spans_equal());
      EXPECT_EQ(phi_from_translate(l, inf).e(), phi(l, inf).e());
    }
  }
}

TEST(Phi, ExtensionFieldPointGivesAModuleOverTheExtension) {
  const Field L(5, 2);
  const Sl2Module M = phi(7, PointP1::affine(L, L.generator()));
  EXPECT_EQ(M.field(), L);
  EXPECT_TRUE(check_module(M).ok());
  EXPECT_TRUE(verify_phi_basis(7, PointP1::affine(L, L.generator())).spans_equal());
}

TEST(Modules, ExtendScalarsPreservesRelations) {
  const Field k(3), L(3, 2);
  const Sl2Module M = projective(k, 1).extend_scalars(Embedding(k, L));
  EXPECT_EQ(M.field(), L);
  EXPECT_TRUE(check_module(M).ok());
  EXPECT_EQ(M.label(), "Q(1)");
}
