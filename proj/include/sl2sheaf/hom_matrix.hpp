#pragma once

/**
 * @file hom_matrix.hpp
 * @brief Homogeneous matrices over F_q[s,t], the global operator Theta_M and
 *        the explicit matrices M_eps, B, B', C, D.
 */

#include <string>
#include <vector>

#include "sl2sheaf/families.hpp"

namespace sl2sheaf {

/// Matrix whose entries are homogeneous of degree tgt_twist - src_twist in s, t.
/// Coefficient k of an entry multiplies s^{deg-k} t^k.
class HomMatrix {
 public:
  HomMatrix(Field f, std::size_t rows, std::size_t cols, int src_twist, int tgt_twist)
      : f_(std::move(f)), r_(rows), c_(cols), src_(src_twist), tgt_(tgt_twist) {
    if (tgt_twist < src_twist) throw std::invalid_argument("entry degree must be nonnegative");
    a_.assign(r_ * c_ * static_cast<std::size_t>(degree() + 1), 0);
  }

  const Field& field() const { return f_; }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  int degree() const { return tgt_ - src_; }
  int src_twist() const { return src_; }
  int tgt_twist() const { return tgt_; }

  Elem coeff(std::size_t i, std::size_t j, int k) const { return a_[index(i, j, k)]; }
  void set_coeff(std::size_t i, std::size_t j, int k, Elem v) { a_[index(i, j, k)] = v; }
  void add_coeff(std::size_t i, std::size_t j, int k, Elem v) { a_[index(i, j, k)] = f_.add(a_[index(i, j, k)], v); }
  bool entry_is_zero(std::size_t i, std::size_t j) const {
    for (int k = 0; k <= degree(); ++k)
      if (coeff(i, j, k)) return false;
    return true;
  }
  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](Elem x) { return x == 0; });
  }
  bool operator==(const HomMatrix& o) const {
    return f_ == o.f_ && r_ == o.r_ && c_ == o.c_ && src_ == o.src_ && tgt_ == o.tgt_ && a_ == o.a_;
  }
  bool operator!=(const HomMatrix& o) const { return !(*this == o); }

  /// Same matrix viewed between twisted modules (both twists shifted).
  HomMatrix shifted(int by) const {
    HomMatrix m = *this;
    m.src_ += by;
    m.tgt_ += by;
    return m;
  }

  /// next ∘ this; requires next.src_twist() == this->tgt_twist().
  HomMatrix then(const HomMatrix& next) const {
    if (next.src_ != tgt_) throw std::invalid_argument("composition of homogeneous matrices with unchained twists");
    if (next.c_ != r_) throw std::invalid_argument("composition dimension mismatch");
    HomMatrix out(f_, next.r_, c_, src_, next.tgt_);
    const int d1 = degree(), d2 = next.degree();
    for (std::size_t i = 0; i < next.r_; ++i)
      for (std::size_t l = 0; l < r_; ++l) {
        if (next.entry_is_zero(i, l)) continue;
        for (std::size_t j = 0; j < c_; ++j) {
          if (entry_is_zero(l, j)) continue;
          for (int k2 = 0; k2 <= d2; ++k2) {
            const Elem x = next.coeff(i, l, k2);
            if (!x) continue;
            for (int k1 = 0; k1 <= d1; ++k1) {
              const Elem y = coeff(l, j, k1);
              if (y) out.add_coeff(i, j, k1 + k2, f_.mul(x, y));
            }
          }
        }
      }
    return out;
  }

  /// Evaluate at (s, t) = (sigma, tau).
  Matrix evaluate(Elem sigma, Elem tau) const {
    Matrix m(f_, r_, c_);
    const int d = degree();
    std::vector<Elem> mono(static_cast<std::size_t>(d + 1));
    for (int k = 0; k <= d; ++k) mono[static_cast<std::size_t>(k)] = f_.mul(f_.pow(sigma, static_cast<std::uint64_t>(d - k)), f_.pow(tau, static_cast<std::uint64_t>(k)));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) {
        Elem v = 0;
        for (int k = 0; k <= d; ++k) v = f_.add(v, f_.mul(coeff(i, j, k), mono[static_cast<std::size_t>(k)]));
        m(i, j) = v;
      }
    return m;
  }

  /// Dehomogenize at s = 1: entries become polynomials in u = t.
  PolyMatrix dehomogenize() const {
    std::vector<Matrix> layers;
    for (int k = 0; k <= degree(); ++k) {
      Matrix m(f_, r_, c_);
      for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m(i, j) = coeff(i, j, k);
      layers.push_back(std::move(m));
    }
    return PolyMatrix::from_coefficients(layers);
  }

  HomMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    HomMatrix m(f_, nr, nc, src_, tgt_);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j)
        for (int k = 0; k <= degree(); ++k) m.set_coeff(i, j, k, coeff(r0 + i, c0 + j, k));
    return m;
  }

  /// Entry as text, e.g. "2st + s^2".
  std::string entry_string(std::size_t i, std::size_t j) const {
    std::string out;
    const int d = degree();
    for (int k = 0; k <= d; ++k) {
      const Elem c = coeff(i, j, k);
      if (!c) continue;
      if (!out.empty()) out += " + ";
      std::string mono;
      auto var = [&](char v, int e) {
        if (e == 0) return;
        mono += v;
        if (e > 1) mono += "^" + std::to_string(e);
      };
      var('s', d - k);
      var('t', k);
      if (c != 1 || mono.empty()) out += f_.to_string(c);
      out += mono;
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::size_t index(std::size_t i, std::size_t j, int k) const {
    return (i * c_ + j) * static_cast<std::size_t>(degree() + 1) + static_cast<std::size_t>(k);
  }

  Field f_;
  std::size_t r_, c_;
  int src_, tgt_;
  std::vector<Elem> a_;
};

/// Theta_M = s^2 E - t^2 F + st H with twists (0, 2).
inline HomMatrix build_theta(const Sl2Module& M) {
  const Field& k = M.field();
  HomMatrix m(k, M.dim(), M.dim(), 0, 2);
  for (std::size_t i = 0; i < M.dim(); ++i)
    for (std::size_t j = 0; j < M.dim(); ++j) {
      m.set_coeff(i, j, 0, M.e()(i, j));
      m.set_coeff(i, j, 1, M.h()(i, j));
      m.set_coeff(i, j, 2, k.neg(M.f()(i, j)));
    }
  return m;
}

/// Theta(2j-2) ∘ ... ∘ Theta(2) ∘ Theta, with twists (0, 2j).
inline HomMatrix theta_power(const Sl2Module& M, int j) {
  if (j < 1 || j > static_cast<int>(M.p())) throw std::invalid_argument("theta_power: need 1 <= j <= p");
  const HomMatrix theta = build_theta(M);
  HomMatrix acc = theta;
  for (int step = 1; step < j; ++step) acc = acc.then(theta.shifted(2 * step));
  return acc;
}

enum class NamedMatrix { MEps, B, BPrime, C, D };

inline std::string named_matrix_name(NamedMatrix k) {
  switch (k) {
    case NamedMatrix::MEps: return "M_eps";
    case NamedMatrix::B: return "B";
    case NamedMatrix::BPrime: return "B'";
    case NamedMatrix::C: return "C";
    case NamedMatrix::D: return "D";
  }
  return "?";
}

namespace detail {

// Tridiagonal homogeneous matrix on indices lo..hi with given coefficient functions.
template <class Sub, class Diag, class Super>
HomMatrix tridiagonal(const Field& k, long lo, long hi, Sub sub, Diag diag, Super super) {
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  HomMatrix m(k, n, n, 0, 2);
  for (long i = lo; i <= hi; ++i) {
    const std::size_t r = static_cast<std::size_t>(i - lo);
    if (i - 1 >= lo) {  // (i, i-1)
      auto [kk, c] = sub(i);
      m.set_coeff(r, r - 1, kk, k.from_int(c));
    }
    {
      auto [kk, c] = diag(i);
      m.set_coeff(r, r, kk, k.from_int(c));
    }
    if (i + 1 <= hi) {  // (i, i+1)
      auto [kk, c] = super(i);
      m.set_coeff(r, r + 1, kk, k.from_int(c));
    }
  }
  return m;
}

inline HomMatrix matrix_B(const Field& k, long lambda) {
  return tridiagonal(
      k, 0, lambda, [](long i) { return std::pair<int, long>{2, -i}; },
      [lambda](long i) { return std::pair<int, long>{1, lambda - 2 * i}; },
      [lambda](long i) { return std::pair<int, long>{0, lambda - i}; });
}

inline HomMatrix matrix_C(const Field& k, long lambda) {
  return tridiagonal(
      k, 0, lambda, [lambda](long i) { return std::pair<int, long>{2, i - lambda - 1}; },
      [lambda](long i) { return std::pair<int, long>{1, lambda - 2 * i}; },
      [](long i) { return std::pair<int, long>{0, i + 1}; });
}

// Transpose with s and t exchanged.
inline HomMatrix dagger(const HomMatrix& m) {
  HomMatrix out(m.field(), m.cols(), m.rows(), m.src_twist(), m.tgt_twist());
  const int d = m.degree();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (int k = 0; k <= d; ++k) out.set_coeff(j, i, d - k, m.coeff(i, j, k));
  return out;
}

}  // namespace detail

/// The explicit homogeneous matrices. `param` is lambda (a for D); eps is used by M_eps.
inline HomMatrix named_matrix(NamedMatrix kind, const Field& k, long param, Elem eps = 0) {
  const long p = k.characteristic();
  if (param < 0) throw std::invalid_argument("named_matrix: negative parameter");
  switch (kind) {
    case NamedMatrix::B: return detail::matrix_B(k, param);
    case NamedMatrix::C: return detail::matrix_C(k, param);
    case NamedMatrix::BPrime: {
      detail::require_phi_range(p, param);
      const long a = param % p;
      const std::size_t off = static_cast<std::size_t>(a + 1), n = static_cast<std::size_t>(param - a);
      return detail::matrix_B(k, param).block(off, off, n, n);
    }
    case NamedMatrix::MEps: {
      detail::require_phi_range(p, param);
      const long lambda = param, r = lambda / p, a = lambda % p;
      HomMatrix m = detail::tridiagonal(
          k, a + 1, lambda, [](long i) { return std::pair<int, long>{0, i}; },
          [a](long i) { return std::pair<int, long>{1, 2 * i - a}; },
          [a](long i) { return std::pair<int, long>{2, i - a}; });
      for (long q = 1; q <= r; ++q) {
        const Elem c = k.mul(k.mul(k.from_int(-(a + 1)), binom_mod(r, q, k)), k.pow(eps, static_cast<std::uint64_t>(q * p)));
        m.add_coeff(0, static_cast<std::size_t>(q * p + a - (a + 1)), 0, c);
      }
      return m;
    }
    case NamedMatrix::D: {
      const long a = param;
      if (a >= p - 1) throw std::invalid_argument("D(a) needs 0 <= a < p-1");
      const HomMatrix top = detail::matrix_B(k, 2 * p - a - 2);
      const HomMatrix bottom = detail::dagger(detail::matrix_B(k, a));
      const std::size_t n1 = static_cast<std::size_t>(2 * p - a - 1), n2 = static_cast<std::size_t>(a + 1);
      HomMatrix m(k, n1 + n2, n1 + n2, 0, 2);
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
          for (int kk = 0; kk <= 2; ++kk) m.set_coeff(i, j, kk, top.coeff(i, j, kk));
      for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j)
          for (int kk = 0; kk <= 2; ++kk) m.set_coeff(n1 + i, n1 + j, kk, bottom.coeff(i, j, kk));
      // D'(a): 1/(i+1) s^2 where i - j = p-a-2, and 1/(a+1) t^2 at (p, a)
      for (std::size_t j = 0; j < n2; ++j) {
        const long i = static_cast<long>(j) + p - a - 2;
        if (i >= 0 && i < static_cast<long>(n1)) m.add_coeff(static_cast<std::size_t>(i), n1 + j, 0, k.inv(k.from_int(i + 1)));
      }
      m.add_coeff(static_cast<std::size_t>(p), n1 + static_cast<std::size_t>(a), 2, k.inv(k.from_int(a + 1)));
      return m;
    }
  }
  throw std::invalid_argument("unknown named matrix");
}

}  // namespace sl2sheaf
