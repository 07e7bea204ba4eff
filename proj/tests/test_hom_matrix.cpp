#include <gtest/gtest.h>

#include "sl2sheaf/hom_matrix.hpp"
#include "sl2sheaf/nullcone.hpp"

using namespace sl2sheaf;

namespace {

HomMatrix power(const HomMatrix& m, int j) {
  HomMatrix acc = m;
  for (int step = 1; step < j; ++step) acc = acc.then(m.shifted(step * m.degree()));
  return acc;
}

bool phi_range(long p, long l) { return l >= p && (l + 1) % p != 0; }

}  // namespace

TEST(HomMatrix, ThetaOfV2) {
  const HomMatrix theta = build_theta(weyl(5, 2));
  EXPECT_EQ(theta.src_twist(), 0);
  EXPECT_EQ(theta.tgt_twist(), 2);
  // [[2st, 2s^2, 0], [-t^2, 0, s^2], [0, -2t^2, -2st]] over F_5
  const std::vector<std::vector<std::string>> want{{"2st", "2s^2", "0"}, {"4t^2", "0", "s^2"}, {"0", "3t^2", "3st"}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(theta.entry_string(i, j), want[i][j]);
}

TEST(HomMatrix, EvaluationIsTheOperatorAtThePoint) {
  const Field L(5, 2);
  for (const auto& M : {weyl(L, 6), dual_weyl(L, 3), projective(L, 1)}) {
    const HomMatrix theta = build_theta(M);
    for (Elem e = 0; e < L.order(); e += 3) {
      const Matrix A = operator_at(M, PointP1::affine(L, e));
      EXPECT_EQ(theta.evaluate(1, e), A);
      for (int j = 1; j <= 5; ++j) EXPECT_EQ(theta_power(M, j).evaluate(1, e), A.pow(static_cast<std::uint64_t>(j)));
    }
    EXPECT_EQ(theta.evaluate(0, 1), operator_at(M, PointP1::infinity(L)));
  }
}

TEST(HomMatrix, PowersChainTwists) {
  const Sl2Module V = weyl(3, 4);
  for (int j = 1; j <= 3; ++j) {
    const HomMatrix t = theta_power(V, j);
    EXPECT_EQ(t.src_twist(), 0);
    EXPECT_EQ(t.tgt_twist(), 2 * j);
  }
  EXPECT_TRUE(theta_power(V, 3).is_zero());
  EXPECT_THROW(theta_power(V, 4), std::invalid_argument);
  const HomMatrix th = build_theta(V);
  EXPECT_THROW(th.then(th), std::invalid_argument);
}

TEST(HomMatrix, DehomogenizeMatchesGenericOperator) {
  const Sl2Module M = phi(5, 8, 3);
  const PolyMatrix a = build_theta(M).dehomogenize(), b = generic_operator(M);
  for (Elem u = 0; u < 5; ++u) EXPECT_EQ(a.eval(u), b.eval(u));
}

TEST(NamedMatrices, EqualBuildTheta) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const Field k(p);
    for (long l = 0; l <= 3L * p; ++l) {
      EXPECT_EQ(build_theta(weyl(k, l)), named_matrix(NamedMatrix::B, k, l));
      EXPECT_EQ(build_theta(dual_weyl(k, l)), named_matrix(NamedMatrix::C, k, l));
      if (l <= static_cast<long>(p) - 2) EXPECT_EQ(build_theta(projective(k, l)), named_matrix(NamedMatrix::D, k, l));
      if (phi_range(p, l)) {
        EXPECT_EQ(build_theta(phi(l, PointP1::infinity(k))), named_matrix(NamedMatrix::BPrime, k, l));
        for (Elem e = 0; e < p; ++e) EXPECT_EQ(build_theta(phi(p, l, e)), named_matrix(NamedMatrix::MEps, k, l, e));
      }
    }
  }
  EXPECT_EQ(named_matrix_name(NamedMatrix::BPrime), "B'");
  EXPECT_THROW(named_matrix(NamedMatrix::MEps, Field(5), 4), std::invalid_argument);
}

TEST(NamedMatrices, BPrimeIsTheTrailingBlockOfB) {
  const Field k(5);
  const HomMatrix B = named_matrix(NamedMatrix::B, k, 13), Bp = named_matrix(NamedMatrix::BPrime, k, 13);
  EXPECT_EQ(Bp, B.block(4, 4, 10, 10));
}

TEST(NamedMatrices, BLambdaPowers) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const Field k(p);
    for (long l = 1; l < static_cast<long>(p); ++l) {
      const HomMatrix B = named_matrix(NamedMatrix::B, k, l);
      EXPECT_TRUE(power(B, static_cast<int>(l) + 1).is_zero());
      const HomMatrix Bl = power(B, static_cast<int>(l));
      EXPECT_FALSE(Bl.is_zero());
      for (std::size_t i = 0; i < Bl.rows(); ++i)
        for (std::size_t j = 0; j < Bl.cols(); ++j)
          for (int t = 0; t <= Bl.degree(); ++t)
            if (Bl.coeff(i, j, t)) EXPECT_EQ(t, static_cast<int>(l) - static_cast<int>(j) + static_cast<int>(i));
    }
  }
}

TEST(NamedMatrices, BPrimeSpecializations) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const Field k(p);
    for (long l = p; l <= 3L * p; ++l) {
      if (!phi_range(p, l)) continue;
      const int r = static_cast<int>(l / p), a = static_cast<int>(l % p), P = static_cast<int>(p);
      const HomMatrix B = named_matrix(NamedMatrix::BPrime, k, l);
      EXPECT_EQ(jordan_type_of(B.evaluate(0, 0), p), Partition::from_blocks({{1, r * P}}));
      EXPECT_EQ(jordan_type_of(B.evaluate(0, 1), p), Partition::from_blocks({{P, r - 1}, {P - a - 1, 1}, {a + 1, 1}}));
      for (Elem c = 0; c < p; ++c) EXPECT_EQ(jordan_type_of(B.evaluate(1, c), p), Partition::from_blocks({{P, r}}));
    }
  }
}
