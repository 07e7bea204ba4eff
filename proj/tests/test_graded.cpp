#include <gtest/gtest.h>

#include "sl2sheaf/graded.hpp"
#include "sl2sheaf/hom_matrix.hpp"

using namespace sl2sheaf;

namespace {

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

// Dense matrix of m from (R_d)^cols to (R_{d+deg})^rows in the monomial basis s^{d-k} t^k.
std::vector<std::vector<long>> dense_piece(const HomMatrix& m, int d) {
  const int e = m.degree();
  const std::size_t in = m.cols() * static_cast<std::size_t>(d + 1), out = m.rows() * static_cast<std::size_t>(d + e + 1);
  std::vector<std::vector<long>> a(out, std::vector<long>(in, 0));
  const long p = m.field().characteristic();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (int x = 0; x <= e; ++x)
        for (int k = 0; k <= d; ++k) {
          auto& cell = a[i * static_cast<std::size_t>(d + e + 1) + static_cast<std::size_t>(x + k)][j * static_cast<std::size_t>(d + 1) + static_cast<std::size_t>(k)];
          cell = (cell + static_cast<long>(m.coeff(i, j, x))) % p;
        }
  return a;
}

std::vector<long> hilbert_of(const std::vector<int>& twists, int D) {
  std::vector<long> h;
  for (int d = 0; d <= D; ++d) {
    long s = 0;
    for (int a : twists) s += std::max(0, d + a + 1);
    h.push_back(s);
  }
  return h;
}

}  // namespace

TEST(Graded, KernelOfThetaV2) {
  const HomMatrix theta = build_theta(weyl(5, 2));
  const auto data = graded_kernel(theta, 6);
  EXPECT_TRUE(data.certified);
  EXPECT_EQ(data.corank_target, 1u);
  ASSERT_EQ(data.generators.size(), 1u);
  EXPECT_EQ(data.generators[0].degree, 2);
  EXPECT_TRUE(annihilates(theta, data.generators[0]));
  EXPECT_EQ(splitting_from_generators(data), SplittingType({-2}));
}

TEST(Graded, KernelAndImageDimensionsMatchDenseElimination) {
  for (std::uint32_t p : {3u, 5u}) {
    const Field k(p);
    for (const auto& M : {weyl(k, p + 1), dual_weyl(k, p + 2), projective(k, 1), phi(p, p + 1, 1)}) {
      const HomMatrix theta = build_theta(M);
      const AmbientPtr amb = make_ambient({&theta});
      const GradedSubmodule ker = kernel_of(amb, theta), im = image_of(amb, theta);
      const int e = theta.degree();
      for (int d = 0; d <= 8; ++d) {
        const long rk = oracle_rank(dense_piece(theta, d), p);
        EXPECT_EQ(static_cast<long>(ker.dim(d)), static_cast<long>(theta.cols()) * (d + 1) - rk) << M.label() << " d=" << d;
        const long im_rk = d >= e ? oracle_rank(dense_piece(theta, d - e), p) : 0;
        EXPECT_EQ(static_cast<long>(im.dim(d)), im_rk) << M.label() << " d=" << d;
      }
    }
  }
}

TEST(Graded, SaturationFixesAKernelAndTheWholeModule) {
  const HomMatrix theta = build_theta(weyl(5, 7));
  const AmbientPtr amb = make_ambient({&theta});
  const GradedSubmodule ker = kernel_of(amb, theta);
  const GradedSubmodule sat = saturation(ker, 10, 10);
  for (int d = 0; d <= 10; ++d) EXPECT_EQ(sat.at(d), ker.at(d));
  const GradedSubmodule all = whole_module(amb);
  for (int d = 0; d <= 6; ++d) EXPECT_EQ(colon_irrelevant(all).at(d), all.at(d));
}

TEST(Graded, SaturationOfAnImageContainsIt) {
  const HomMatrix theta = build_theta(weyl(3, 4));
  const AmbientPtr amb = make_ambient({&theta});
  const GradedSubmodule im = image_of(amb, theta);
  const GradedSubmodule sat = saturation(im, 8, 8);
  for (int d = 0; d <= 8; ++d) EXPECT_TRUE(contains(sat.at(d), im.at(d)));
  // saturating twice changes nothing
  const GradedSubmodule again = saturation(sat, 8, 8);
  for (int d = 0; d <= 8; ++d) EXPECT_EQ(again.at(d), sat.at(d));
}

TEST(Graded, IntersectionIsContainedInBoth) {
  const Sl2Module M = weyl(5, 8);
  const HomMatrix theta = build_theta(M);
  const AmbientPtr amb = make_ambient({&theta});
  const GradedSubmodule ker = kernel_of(amb, theta), im = image_of(amb, theta);
  const GradedSubmodule both = intersection(ker, im);
  for (int d = 0; d <= 8; ++d) {
    EXPECT_TRUE(contains(ker.at(d), both.at(d)));
    EXPECT_TRUE(contains(im.at(d), both.at(d)));
    EXPECT_EQ(intersection(ker, ker).at(d), ker.at(d));
    EXPECT_EQ(intersection(ker, zero_module(amb)).dim(d), 0u);
  }
}

TEST(Graded, TooSmallBoundIsReported) {
  const HomMatrix theta = build_theta(weyl(5, 2));
  try {
    graded_kernel(theta, 1);
    FAIL() << "expected KernelIncomplete";
  } catch (const KernelIncomplete& e) {
    EXPECT_EQ(e.partial().generators.size(), 0u);
    EXPECT_EQ(e.partial().corank_target, 1u);
  }
  EXPECT_THROW(graded_kernel(theta, -1), std::invalid_argument);
}

TEST(Splitting, Strings) {
  EXPECT_EQ(SplittingType({-6, -2, -2}).to_string(), "O(-2)^2 + O(-6)");
  EXPECT_EQ(SplittingType().to_string(), "0");
  EXPECT_EQ(SplittingType({-3}).twisted(2), SplittingType({-1}));
  EXPECT_EQ(SplittingType({1, -4, 0}).degree(), -3);
}

TEST(Splitting, FromSyntheticHilbertFunctions) {
  for (const auto& t : std::vector<std::vector<int>>{{-2}, {-3, -3}, {-1, -4, -7}, {2, -5}, {0, -1}, {}}) {
    const auto h = hilbert_of(t, 12);
    const auto got = splitting_from_hilbert(h);
    EXPECT_TRUE(got.tail_stable);
    EXPECT_EQ(got.rank, t.size());
    ASSERT_TRUE(got.splitting.has_value());
    EXPECT_EQ(*got.splitting, SplittingType(t));
  }
}

TEST(Splitting, TailMustBeLinear) {
  const std::vector<long> h{0, 1, 3, 6, 10};  // quadratic growth
  EXPECT_FALSE(splitting_from_hilbert(h).tail_stable);
  EXPECT_FALSE(splitting_from_hilbert(h).splitting.has_value());
}

TEST(Splitting, AmbiguousLowTwistsStayUndetermined) {
  // O(1) + O(-1) and O^2 share a Hilbert function
  EXPECT_EQ(hilbert_of({1, -1}, 10), hilbert_of({0, 0}, 10));
  const auto got = splitting_from_hilbert(hilbert_of({1, -1}, 10));
  EXPECT_TRUE(got.tail_stable);
  EXPECT_EQ(got.rank, 2u);
  EXPECT_EQ(got.degree_sum, 0);
  EXPECT_FALSE(got.splitting.has_value());
}
