#pragma once

/**
 * @file poly_matrix.hpp
 * @brief Matrices over K[u] and fraction-free (Bareiss) elimination.
 */

#include <limits>
#include <vector>

#include "sl2sheaf/matrix.hpp"
#include "sl2sheaf/poly.hpp"

namespace sl2sheaf {

class PolyMatrix {
 public:
  PolyMatrix(Field f, std::size_t rows, std::size_t cols) : f_(std::move(f)), r_(rows), c_(cols), e_(rows * cols) {}

  /// m0 + u*m1 + u^2*m2 + ... from constant coefficient matrices.
  static PolyMatrix from_coefficients(const std::vector<Matrix>& coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("from_coefficients: no matrices");
    const Matrix& m0 = coeffs[0];
    PolyMatrix out(m0.field(), m0.rows(), m0.cols());
    for (std::size_t i = 0; i < m0.rows(); ++i)
      for (std::size_t j = 0; j < m0.cols(); ++j) {
        detail::Coeffs c(coeffs.size());
        for (std::size_t k = 0; k < coeffs.size(); ++k) c[k] = coeffs[k](i, j);
        detail::trim(c);
        out.e_[i * out.c_ + j] = std::move(c);
      }
    return out;
  }
  static PolyMatrix identity(const Field& f, std::size_t n) {
    PolyMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.e_[i * n + i] = {1};
    return m;
  }

  const Field& field() const { return f_; }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Poly at(std::size_t i, std::size_t j) const { return Poly(f_, e_.at(i * c_ + j)); }
  void set(std::size_t i, std::size_t j, const Poly& p) {
    if (p.field() != f_) throw std::invalid_argument("entry over a different field");
    e_.at(i * c_ + j) = p.coeffs();
  }
  const detail::Coeffs& raw(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }

  PolyMatrix operator*(const PolyMatrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("polynomial matrix product dimension mismatch");
    PolyMatrix m(f_, r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        const auto& a = raw(i, k);
        if (a.empty()) continue;
        for (std::size_t j = 0; j < o.c_; ++j) {
          const auto& b = o.raw(k, j);
          if (b.empty()) continue;
          auto& dst = m.e_[i * m.c_ + j];
          dst = detail::padd(f_, dst, detail::pmul(f_, a, b));
        }
      }
    return m;
  }

  Matrix eval(Elem u) const {
    Matrix m(f_, r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) {
        const auto& c = raw(i, j);
        Elem v = 0;
        for (std::size_t k = c.size(); k-- > 0;) v = f_.add(f_.mul(v, u), c[k]);
        m(i, j) = v;
      }
    return m;
  }

  int max_degree() const {
    int d = -1;
    for (const auto& c : e_) d = std::max(d, static_cast<int>(c.size()) - 1);
    return d;
  }

 private:
  friend struct BareissAccess;
  Field f_;
  std::size_t r_, c_;
  std::vector<detail::Coeffs> e_;
};

/// Result of fraction-free elimination over K[u].
struct GenericRank {
  std::size_t rank = 0;
  Poly pivot_product;  // product of the successive Bareiss pivots (leading principal minors)
  Poly minor;          // the final pivot: an r x r minor of the input
  std::vector<std::size_t> row_order;  // rows of the selected minor (first `rank` entries)
  std::vector<std::size_t> col_order;
};

struct BareissAccess {
  static std::vector<detail::Coeffs>& entries(PolyMatrix& m) { return m.e_; }
};

/// Rank over K(u) by Bareiss elimination, choosing at each step a pivot of
/// minimal degree in the remaining block. Every division is exact.
inline GenericRank generic_rank(const PolyMatrix& input) {
  const Field& f = input.field();
  PolyMatrix m = input;
  auto& e = BareissAccess::entries(m);
  const std::size_t R = m.rows(), C = m.cols();
  auto at = [&](std::size_t i, std::size_t j) -> detail::Coeffs& { return e[i * C + j]; };

  std::vector<std::size_t> rows(R), cols(C);
  for (std::size_t i = 0; i < R; ++i) rows[i] = i;
  for (std::size_t j = 0; j < C; ++j) cols[j] = j;

  detail::Coeffs prev{1}, product{1};
  std::size_t k = 0;
  for (; k < std::min(R, C); ++k) {
    std::size_t bi = R, bj = C, bd = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = k; i < R && bd > 1; ++i)
      for (std::size_t j = k; j < C; ++j) {
        const auto& x = at(i, j);
        if (!x.empty() && x.size() < bd) {
          bd = x.size();
          bi = i;
          bj = j;
          if (bd == 1) break;
        }
      }
    if (bi == R) break;
    if (bi != k) {
      for (std::size_t j = 0; j < C; ++j) std::swap(at(k, j), at(bi, j));
      std::swap(rows[k], rows[bi]);
    }
    if (bj != k) {
      for (std::size_t i = 0; i < R; ++i) std::swap(at(i, k), at(i, bj));
      std::swap(cols[k], cols[bj]);
    }
    const detail::Coeffs piv = at(k, k);
    for (std::size_t i = k + 1; i < R; ++i) {
      const detail::Coeffs lead = at(i, k);
      for (std::size_t j = k + 1; j < C; ++j) {
        detail::Coeffs v = detail::pmul(f, piv, at(i, j));
        if (!lead.empty() && !at(k, j).empty()) v = detail::psub(f, v, detail::pmul(f, lead, at(k, j)));
        if (prev.size() > 1 || prev[0] != 1) v = detail::pdiv_exact(f, v, prev);
        at(i, j) = std::move(v);
      }
      at(i, k).clear();
    }
    product = detail::pmul(f, product, piv);
    prev = piv;
  }
  GenericRank out{k, Poly(f, product), Poly(f, k ? prev : detail::Coeffs{1}), {}, {}};
  out.row_order.assign(rows.begin(), rows.begin() + static_cast<long>(k));
  out.col_order.assign(cols.begin(), cols.begin() + static_cast<long>(k));
  return out;
}

/// Determinant of a square polynomial matrix (fraction-free).
inline Poly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return Poly::constant(m.field(), 1);
  const auto g = generic_rank(m);
  if (g.rank < m.rows()) return Poly(m.field());
  // sign of the row/column permutations
  auto parity = [](std::vector<std::size_t> perm) {
    int s = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
      while (perm[i] != i) {
        std::swap(perm[i], perm[perm[i]]);
        s = -s;
      }
    return s;
  };
  const int sign = parity(g.row_order) * parity(g.col_order);
  return sign > 0 ? g.minor : -g.minor;
}

}  // namespace sl2sheaf
