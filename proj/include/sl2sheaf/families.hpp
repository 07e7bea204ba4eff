#pragma once

/**
 * @file families.hpp
 * @brief The indecomposable restricted sl2-modules V(l), V(l)*, Q(l), Phi_xi(l),
 *        and the SL2 action on V(l).
 */

#include "sl2sheaf/sl2_module.hpp"

namespace sl2sheaf {

/// lambda = r p + a with 0 <= a < p.
struct WeightSplit {
  long r, a;
};
inline WeightSplit split_weight(long lambda, long p) { return {lambda / p, lambda % p}; }

namespace detail {
inline void require_nonnegative(long lambda) {
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
}
}  // namespace detail

/// Weyl module V(lambda): e v_i = (l-i+1) v_{i-1}, f v_i = (i+1) v_{i+1}, h v_i = (l-2i) v_i.
inline Sl2Module weyl(const Field& k, long lambda) {
  detail::require_nonnegative(lambda);
  const std::size_t n = static_cast<std::size_t>(lambda) + 1;
  Matrix E(k, n, n), F(k, n, n), H(k, n, n);
  for (long i = 0; i <= lambda; ++i) {
    const auto c = static_cast<std::size_t>(i);
    if (i >= 1) E(c - 1, c) = k.from_int(lambda - i + 1);
    if (i + 1 <= lambda) F(c + 1, c) = k.from_int(i + 1);
    H(c, c) = k.from_int(lambda - 2 * i);
  }
  return Sl2Module(E, F, H, Family::Weyl, lambda);
}
inline Sl2Module weyl(std::uint32_t p, long lambda) { return weyl(Field(p), lambda); }

/// Dual Weyl module: e v^_i = i v^_{i-1}, f v^_i = (l-i) v^_{i+1}, h v^_i = (l-2i) v^_i.
inline Sl2Module dual_weyl(const Field& k, long lambda) {
  detail::require_nonnegative(lambda);
  const std::size_t n = static_cast<std::size_t>(lambda) + 1;
  Matrix E(k, n, n), F(k, n, n), H(k, n, n);
  for (long i = 0; i <= lambda; ++i) {
    const auto c = static_cast<std::size_t>(i);
    if (i >= 1) E(c - 1, c) = k.from_int(i);
    if (i + 1 <= lambda) F(c + 1, c) = k.from_int(lambda - i);
    H(c, c) = k.from_int(lambda - 2 * i);
  }
  return Sl2Module(E, F, H, Family::DualWeyl, lambda);
}
inline Sl2Module dual_weyl(std::uint32_t p, long lambda) { return dual_weyl(Field(p), lambda); }

/// Index of v_i and w_i inside the basis v_0..v_{2p-l-2}, w_{p-l-1}..w_{p-1} of Q(lambda).
struct ProjectiveBasis {
  long p, lambda;
  long v_count() const { return 2 * p - lambda - 1; }
  long w_first() const { return p - lambda - 1; }
  bool has_v(long i) const { return i >= 0 && i < v_count(); }
  bool has_w(long i) const { return i >= w_first() && i <= p - 1; }
  std::size_t v(long i) const { return static_cast<std::size_t>(i); }
  std::size_t w(long i) const { return static_cast<std::size_t>(v_count() + i - w_first()); }
};

/// Projective indecomposable Q(lambda), 0 <= lambda <= p-1; Q(p-1) = V(p-1).
inline Sl2Module projective(const Field& k, long lambda) {
  const long p = k.characteristic();
  if (lambda < 0 || lambda >= p) throw std::invalid_argument("projective: need 0 <= lambda <= p-1");
  if (lambda == p - 1) return weyl(k, lambda).relabeled(Family::Projective, lambda);
  const ProjectiveBasis B{p, lambda};
  const std::size_t n = static_cast<std::size_t>(2 * p);
  Matrix E(k, n, n), F(k, n, n), H(k, n, n);
  for (long i = 0; i < B.v_count(); ++i) {
    const std::size_t c = B.v(i);
    if (B.has_v(i - 1)) E(B.v(i - 1), c) = k.from_int(-(lambda + i + 1));
    if (B.has_v(i + 1)) F(B.v(i + 1), c) = k.from_int(i + 1);
    H(c, c) = k.from_int(-(lambda + 2 * i + 2));
  }
  for (long i = B.w_first(); i <= p - 1; ++i) {
    const std::size_t c = B.w(i);
    if (B.has_w(i - 1)) E(B.w(i - 1), c) = k.from_int(-(lambda + i + 1));
    if (B.has_v(i - 1)) E(B.v(i - 1), c) = k.add(E(B.v(i - 1), c), k.inv(k.from_int(i)));
    if (B.has_w(i + 1)) F(B.w(i + 1), c) = k.from_int(i + 1);
    if (i == p - 1 && B.has_v(p)) F(B.v(p), c) = k.sub(F(B.v(p), c), k.inv(k.from_int(lambda + 1)));
    H(c, c) = k.from_int(-(lambda + 2 * i + 2));
  }
  return Sl2Module(E, F, H, Family::Projective, lambda);
}
inline Sl2Module projective(std::uint32_t p, long lambda) { return projective(Field(p), lambda); }

namespace detail {
inline void require_phi_range(long p, long lambda) {
  if (lambda < p) throw std::invalid_argument("phi: need lambda >= p");
  if ((lambda + 1) % p == 0) throw std::invalid_argument("phi: p divides lambda + 1");
}
}  // namespace detail

/// Phi_xi(lambda) for lambda >= p with p not dividing lambda+1. For xi = [1:eps]
/// the basis is w_{a+1}..w_lambda; for xi = [0:1] it is the span of v_{a+1}..v_lambda in V(lambda).
inline Sl2Module phi(long lambda, const PointP1& xi) {
  const Field& k = xi.field();
  const long p = k.characteristic();
  detail::require_phi_range(p, lambda);
  const auto [r, a] = split_weight(lambda, p);
  const std::size_t n = static_cast<std::size_t>(r * p);
  auto idx = [a = a](long i) { return static_cast<std::size_t>(i - a - 1); };
  Matrix E(k, n, n), F(k, n, n), H(k, n, n);
  if (xi.is_infinity()) {
    const Sl2Module V = weyl(k, lambda);
    const std::size_t off = static_cast<std::size_t>(a + 1);
    E = V.e().block(off, off, n, n);
    F = V.f().block(off, off, n, n);
    H = V.h().block(off, off, n, n);
  } else {
    const Elem eps = xi.eps();
    for (long i = a + 1; i <= lambda; ++i) {
      const long q = i / p, b = i % p;
      if (i + 1 <= lambda) E(idx(i + 1), idx(i)) = k.from_int(i + 1);
      if (b == a) {
        const Elem corr = k.mul(k.mul(k.from_int(i + 1), binom_mod(lambda, i, k)), k.pow(eps, static_cast<std::uint64_t>(q * p)));
        E(idx(a + 1), idx(i)) = k.sub(E(idx(a + 1), idx(i)), corr);
      }
      if (i - 1 >= a + 1) F(idx(i - 1), idx(i)) = k.from_int(lambda - i + 1);
      H(idx(i), idx(i)) = k.from_int(2 * i - lambda);
    }
  }
  return Sl2Module(E, F, H, Family::NonConstant, lambda, xi);
}
inline Sl2Module phi(std::uint32_t p, long lambda, Elem eps) { return phi(lambda, PointP1::affine(Field(p), eps)); }

/// Matrix of g = [[a,b],[c,d]] acting on V(lambda) (column i is g v_i).
inline Matrix sl2_group_action(long lambda, const Matrix& g) {
  detail::require_nonnegative(lambda);
  if (g.rows() != 2 || g.cols() != 2) throw std::invalid_argument("group element must be 2x2");
  const Field& k = g.field();
  const Elem A = g(0, 0), B = g(0, 1), C = g(1, 0), D = g(1, 1);
  if (k.sub(k.mul(A, D), k.mul(B, C)) == 0) throw std::invalid_argument("group element is singular");
  const std::size_t n = static_cast<std::size_t>(lambda) + 1;
  Matrix out(k, n, n);
  for (long i = 0; i <= lambda; ++i)
    for (long j = 0; j <= lambda; ++j) {
      Elem s = 0;
      for (long t = std::max(0L, j - i); t <= std::min(j, lambda - i); ++t) {
        Elem term = k.mul(binom_mod(lambda - j, lambda - i - t, k), binom_mod(j, t, k));
        if (!term) continue;
        term = k.mul(term, k.pow(A, static_cast<std::uint64_t>(lambda - i - t)));
        term = k.mul(term, k.pow(B, static_cast<std::uint64_t>(t + i - j)));
        term = k.mul(term, k.pow(C, static_cast<std::uint64_t>(t)));
        term = k.mul(term, k.pow(D, static_cast<std::uint64_t>(j - t)));
        s = k.add(s, term);
      }
      out(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = s;
    }
  return out;
}

/// The group element phi([1:eps]) = [[0,1],[-1,-eps]]; phi([0:1]) is the identity.
inline Matrix phi_element(const PointP1& xi) {
  const Field& k = xi.field();
  if (xi.is_infinity()) return Matrix::identity(k, 2);
  Matrix g(k, 2, 2);
  g(0, 1) = 1;
  g(1, 0) = k.neg(1);
  g(1, 1) = k.neg(xi.eps());
  return g;
}

/// Columns w_i = v_{l-i} - C(r,q) eps^{qp} v_{l-b} (b <= a) or v_{l-i} (b > a), i = a+1..l, inside V(lambda).
/// At xi = [0:1] the columns are v_{a+1}..v_l.
inline Matrix phi_w_basis(long lambda, const PointP1& xi) {
  const Field& k = xi.field();
  const long p = k.characteristic();
  detail::require_phi_range(p, lambda);
  const auto [r, a] = split_weight(lambda, p);
  const std::size_t n = static_cast<std::size_t>(lambda + 1);
  Matrix W(k, n, static_cast<std::size_t>(r * p));
  const Elem eps = xi.is_infinity() ? 0 : xi.eps();
  for (long i = a + 1; i <= lambda; ++i) {
    const long q = i / p, b = i % p;
    const std::size_t col = static_cast<std::size_t>(i - a - 1);
    if (xi.is_infinity()) {
      W(static_cast<std::size_t>(i), col) = 1;
      continue;
    }
    W(static_cast<std::size_t>(lambda - i), col) = 1;
    if (b <= a) {
      const Elem c = k.mul(binom_mod(r, q, k), k.pow(eps, static_cast<std::uint64_t>(q * p)));
      W(static_cast<std::size_t>(lambda - b), col) = k.sub(W(static_cast<std::size_t>(lambda - b), col), c);
    }
  }
  return W;
}

struct PhiBasisReport {
  std::size_t rank_translate = 0;  // rank of phi(xi) v_{a+1..l}
  std::size_t rank_w = 0;          // rank of w_{a+1..l}
  std::size_t rank_joint = 0;
  bool spans_equal() const { return rank_translate == rank_w && rank_w == rank_joint; }
};

/// Compare span{phi(xi) v_{a+1}, ..., phi(xi) v_l} with span{w_{a+1}, ..., w_l} in V(lambda).
inline PhiBasisReport verify_phi_basis(long lambda, const PointP1& xi) {
  const Field& k = xi.field();
  const long p = k.characteristic();
  detail::require_phi_range(p, lambda);
  const auto [r, a] = split_weight(lambda, p);
  const Matrix g = sl2_group_action(lambda, phi_element(xi));
  const std::size_t n = static_cast<std::size_t>(lambda + 1), m = static_cast<std::size_t>(r * p);
  const Matrix U = g.block(0, static_cast<std::size_t>(a + 1), n, m);
  const Matrix W = phi_w_basis(lambda, xi);
  Matrix joint(k, n, 2 * m);
  joint.set_block(0, 0, U);
  joint.set_block(0, m, W);
  return {rank(U), rank(W), rank(joint)};
}

/// Action of V(lambda) restricted to span{w_i}, written in the w basis.
inline Sl2Module phi_from_translate(long lambda, const PointP1& xi) {
  const Field& k = xi.field();
  const Sl2Module V = weyl(k, lambda);
  const Matrix W = phi_w_basis(lambda, xi);
  return Sl2Module(solve(W, V.e() * W), solve(W, V.f() * W), solve(W, V.h() * W), Family::NonConstant, lambda, xi);
}

}  // namespace sl2sheaf
