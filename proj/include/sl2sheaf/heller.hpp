#pragma once

/**
 * @file heller.hpp
 * @brief Projective cover Q(a)^{r+1} -> V(lambda) and the Heller shift Omega V(lambda).
 */

#include <optional>
#include <stdexcept>

#include "sl2sheaf/families.hpp"

namespace sl2sheaf {

struct CoverData {
  long p = 0, lambda = 0, r = 0, a = 0;
  Sl2Module cover;      // Q(a)^{r+1}; copy q occupies coordinates [2pq, 2p(q+1))
  Matrix map;           // (lambda+1) x 2p(r+1), the cover map f
  Matrix kernel_basis;  // 2p(r+1) x ((r+2)p - a - 1), columns v'_i
};

/// Raised when a claimed isomorphism or homomorphism fails its exact check.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline Sl2Module power_sum(const Sl2Module& m, long copies) {
  Sl2Module acc = m;
  for (long q = 1; q < copies; ++q) acc = direct_sum(acc, m);
  return acc;
}
}  // namespace detail

/// The explicit cover map f = sum_q f_q pi_q and kernel basis v'_i.
inline CoverData projective_cover(const Field& k, long lambda) {
  const long p = k.characteristic();
  if (lambda < 0) throw std::invalid_argument("projective_cover: lambda must be nonnegative");
  const auto [r, a] = split_weight(lambda, p);
  if (a == p - 1) throw std::invalid_argument("projective_cover: a = p-1 (lambda = p-1 is projective; a = p-1 with r >= 1 is decomposable)");
  const ProjectiveBasis B{p, a};
  const Sl2Module Q = projective(k, a);
  CoverData out{p, lambda, r, a, detail::power_sum(Q, r + 1), Matrix(k, 1, 1), Matrix(k, 1, 1)};
  const std::size_t n = static_cast<std::size_t>(lambda + 1), N = static_cast<std::size_t>(2 * p * (r + 1));
  Matrix f(k, n, N);
  auto put = [&](long q, std::size_t local, long i, Elem c) {
    const long target = (q - 1) * p + a + i + 1;
    if (target < 0 || target > lambda || c == 0) return;
    f(static_cast<std::size_t>(target), static_cast<std::size_t>(2 * p * q) + local) = c;
  };
  const Elem a1sq = k.mul(k.from_int(a + 1), k.from_int(a + 1));
  for (long q = 0; q <= r; ++q) {
    for (long i = 0; i <= p - a - 2; ++i) put(q, B.v(i), i, k.neg(k.mul(a1sq, binom_mod(p - i - 1, a + 1, k))));
    for (long i = p; i <= 2 * p - a - 2; ++i) {
      const Elem sign = (a + 1) % 2 ? k.neg(1) : 1;
      put(q, B.v(i), i, k.mul(sign, k.mul(a1sq, binom_mod(i + a + 1 - p, a + 1, k))));
    }
    for (long i = p - a - 1; i <= p - 1; ++i) {
      const Elem sign = (i + a) % 2 ? k.neg(1) : 1;
      put(q, B.w(i), i, k.mul(sign, k.inv(binom_mod(a, i + a + 1 - p, k))));
    }
  }
  out.map = f;

  const long m = (r + 2) * p - a - 1;
  Matrix K(k, N, static_cast<std::size_t>(m));
  auto vq = [&](long q, long i) { return static_cast<std::size_t>(2 * p * q) + B.v(i); };
  for (long idx = 0; idx < m; ++idx) {
    const long q = idx / p, b = idx % p;
    const std::size_t col = static_cast<std::size_t>(idx);
    if (q == 0) {
      K(vq(0, b), col) = 1;
    } else if (q <= r) {
      K(vq(q, b), col) = 1;
      if (b <= p - a - 2) K(vq(q - 1, p + b), col) = 1;
    } else {
      K(vq(r, p + b), col) = 1;
    }
  }
  out.kernel_basis = K;
  return out;
}
inline CoverData projective_cover(std::uint32_t p, long lambda) { return projective_cover(Field(p), lambda); }

struct CoverCheck {
  bool homomorphism = false;
  bool surjective = false;
  bool kernel_dimension = false;   // dim ker f = (2p)(r+1) - (lambda+1) = (r+2)p - a - 1
  bool kernel_basis_in_kernel = false;
  bool kernel_basis_independent = false;
  bool coefficient_relations = false;  // c_{q, i+p} = c_{q+1, i} on ker f, 0 <= i <= p-a-2
  bool ok() const {
    return homomorphism && surjective && kernel_dimension && kernel_basis_in_kernel && kernel_basis_independent && coefficient_relations;
  }
};

inline CoverCheck check_cover(const CoverData& c) {
  CoverCheck out;
  const Field& k = c.cover.field();
  const Sl2Module V = weyl(k, c.lambda);
  out.homomorphism = is_homomorphism(c.map, c.cover, V);
  const std::size_t rk = rank(c.map);
  out.surjective = rk == static_cast<std::size_t>(c.lambda + 1);
  const auto ns = rank_nullspace(c.map).nullspace;
  const long expected = 2 * c.p * (c.r + 1) - (c.lambda + 1);
  out.kernel_dimension = static_cast<long>(ns.size()) == expected && expected == (c.r + 2) * c.p - c.a - 1;
  out.kernel_basis_in_kernel = (c.map * c.kernel_basis).is_zero();
  out.kernel_basis_independent = rank(c.kernel_basis) == c.kernel_basis.cols();
  const ProjectiveBasis B{c.p, c.a};
  bool rel = true;
  for (const auto& v : ns)
    for (long q = 0; q < c.r; ++q)
      for (long i = 0; i <= c.p - c.a - 2; ++i) {
        const Elem hi = v[static_cast<std::size_t>(2 * c.p * q) + B.v(i + c.p)];
        const Elem lo = v[static_cast<std::size_t>(2 * c.p * (q + 1)) + B.v(i)];
        if (hi != lo) rel = false;
      }
  out.coefficient_relations = rel;
  return out;
}

struct HellerShift {
  bool projective = false;       // V(lambda) projective: Omega V(lambda) = 0
  long lambda_shift = -1;        // (r+2)p - a - 2
  std::optional<Sl2Module> module;  // kernel of the cover map in the basis v'_i
  bool actions_equal_weyl = false;  // the v'_i actions equal those of V(lambda_shift) exactly
  std::optional<Matrix> isomorphism;  // invertible intertwiner module -> V(lambda_shift)
  std::string label() const { return projective ? "0" : "V(" + std::to_string(lambda_shift) + ")"; }
};

/// Omega V(lambda) computed as the kernel of the explicit cover, with its
/// identification with V((r+2)p - a - 2) certified by an invertible homomorphism.
inline HellerShift heller_shift(const Field& k, long lambda, std::uint64_t seed = 1) {
  const long p = k.characteristic();
  if (lambda < 0) throw std::invalid_argument("heller_shift: lambda must be nonnegative");
  HellerShift out;
  if (lambda == p - 1) {
    out.projective = true;
    return out;
  }
  const CoverData c = projective_cover(k, lambda);
  const CoverCheck chk = check_cover(c);
  if (!chk.homomorphism || !chk.surjective || !chk.kernel_basis_in_kernel || !chk.kernel_basis_independent || !chk.kernel_dimension)
    throw VerificationFailure("cover map check failed for lambda = " + std::to_string(lambda));
  const Matrix& K = c.kernel_basis;
  Sl2Module kernel(solve(K, c.cover.e() * K), solve(K, c.cover.f() * K), solve(K, c.cover.h() * K));
  out.lambda_shift = (c.r + 2) * p - c.a - 2;
  const Sl2Module target = weyl(k, out.lambda_shift);
  out.actions_equal_weyl = kernel.e() == target.e() && kernel.f() == target.f() && kernel.h() == target.h();
  out.isomorphism = find_isomorphism(kernel, target, seed);
  if (!out.isomorphism) throw VerificationFailure("no isomorphism Omega V(" + std::to_string(lambda) + ") -> V(" + std::to_string(out.lambda_shift) + ")");
  out.module = kernel.relabeled(Family::Weyl, out.lambda_shift);
  return out;
}
inline HellerShift heller_shift(std::uint32_t p, long lambda, std::uint64_t seed = 1) { return heller_shift(Field(p), lambda, seed); }

}  // namespace sl2sheaf
