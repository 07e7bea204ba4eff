#pragma once

/**
 * @file matrix.hpp
 * @brief Dense matrices over a finite field and exact Gaussian elimination.
 */

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sl2sheaf/extension.hpp"
#include "sl2sheaf/field.hpp"

namespace sl2sheaf {

using Vec = std::vector<Elem>;

class Matrix {
 public:
  Matrix(Field f, std::size_t rows, std::size_t cols) : f_(std::move(f)), r_(rows), c_(cols), a_(rows * cols, 0) {}
  Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> data)
      : f_(std::move(f)), r_(rows), c_(cols), a_(std::move(data)) {
    if (a_.size() != rows * cols) throw std::invalid_argument("matrix data size mismatch");
  }
  /// Build from signed integers, reduced mod p.
  static Matrix from_ints(const Field& f, const std::vector<std::vector<long long>>& rows) {
    const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged matrix");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(rows[i][j]);
    }
    return m;
  }
  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  const Field& field() const { return f_; }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  const std::vector<Elem>& data() const { return a_; }
  Elem* row_ptr(std::size_t i) { return a_.data() + i * c_; }
  const Elem* row_ptr(std::size_t i) const { return a_.data() + i * c_; }

  bool operator==(const Matrix& o) const { return f_ == o.f_ && r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](Elem x) { return x == 0; });
  }

  Matrix operator+(const Matrix& o) const {
    check_same(o);
    Matrix m(f_, r_, c_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = f_.add(a_[k], o.a_[k]);
    return m;
  }
  Matrix operator-(const Matrix& o) const {
    check_same(o);
    Matrix m(f_, r_, c_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = f_.sub(a_[k], o.a_[k]);
    return m;
  }
  Matrix scaled(Elem c) const {
    Matrix m(f_, r_, c_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = f_.mul(a_[k], c);
    return m;
  }
  Matrix operator*(const Matrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix product dimension mismatch");
    if (f_ != o.f_) throw std::invalid_argument("matrix product over different fields");
    Matrix m(f_, r_, o.c_);
    if (f_.is_prime_field()) {
      const std::uint64_t p = f_.characteristic();
      std::vector<std::uint64_t> acc(o.c_);
      for (std::size_t i = 0; i < r_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < c_; ++k) {
          const std::uint64_t x = (*this)(i, k);
          if (!x) continue;
          const Elem* orow = o.row_ptr(k);
          for (std::size_t j = 0; j < o.c_; ++j) acc[j] += x * orow[j];
          if ((k & 0xfff) == 0xfff)
            for (auto& v : acc) v %= p;
        }
        for (std::size_t j = 0; j < o.c_; ++j) m(i, j) = static_cast<Elem>(acc[j] % p);
      }
    } else {
      for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
          const Elem x = (*this)(i, k);
          if (!x) continue;
          for (std::size_t j = 0; j < o.c_; ++j) m(i, j) = f_.add(m(i, j), f_.mul(x, o(k, j)));
        }
    }
    return m;
  }
  Vec apply(const Vec& v) const {
    if (v.size() != c_) throw std::invalid_argument("matrix-vector dimension mismatch");
    Vec out(r_, 0);
    for (std::size_t i = 0; i < r_; ++i) {
      Elem s = 0;
      for (std::size_t j = 0; j < c_; ++j)
        if (v[j]) s = f_.add(s, f_.mul((*this)(i, j), v[j]));
      out[i] = s;
    }
    return out;
  }

  Matrix transpose() const {
    Matrix m(f_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  Matrix pow(std::uint64_t k) const {
    if (r_ != c_) throw std::invalid_argument("power of a non-square matrix");
    Matrix r = identity(f_, r_), b = *this;
    while (k) {
      if (k & 1) r = r * b;
      k >>= 1;
      if (k) b = b * b;
    }
    return r;
  }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > r_ || c0 + nc > c_) throw std::out_of_range("submatrix out of range");
    Matrix m(f_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.r_ > r_ || c0 + b.c_ > c_) throw std::out_of_range("block out of range");
    for (std::size_t i = 0; i < b.r_; ++i)
      for (std::size_t j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
  Vec column(std::size_t j) const {
    Vec v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  static Matrix from_columns(const Field& f, std::size_t rows, const std::vector<Vec>& cols) {
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j].at(i);
    return m;
  }
  static Matrix from_rows(const Field& f, std::size_t cols, const std::vector<Vec>& rows) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i].at(j);
    return m;
  }

  /// Entrywise image under a field embedding.
  Matrix extend(const Embedding& emb) const {
    if (emb.source() != f_) throw std::invalid_argument("embedding source does not match matrix field");
    Matrix m(emb.target(), r_, c_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = emb(a_[k]);
    return m;
  }

  std::vector<std::vector<long long>> to_ints() const {
    std::vector<std::vector<long long>> out(r_, std::vector<long long>(c_));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < r_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < c_; ++j) os << (j ? "," : "") << f_.to_string((*this)(i, j));
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  void check_same(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix dimension mismatch");
    if (f_ != o.f_) throw std::invalid_argument("matrices over different fields");
  }

  Field f_;
  std::size_t r_, c_;
  std::vector<Elem> a_;
};

inline Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

namespace detail {

// row_i -= c * row_k over columns [from, cols)
inline void row_axpy(const Field& f, Elem* dst, const Elem* src, Elem c, std::size_t from, std::size_t cols) {
  if (c == 0) return;
  const Elem nc = f.neg(c);
  if (f.is_prime_field()) {
    for (std::size_t j = from; j < cols; ++j)
      if (src[j]) dst[j] = f.add(dst[j], f.reduce(std::uint64_t{nc} * src[j]));
  } else {
    for (std::size_t j = from; j < cols; ++j)
      if (src[j]) dst[j] = f.add(dst[j], f.mul(nc, src[j]));
  }
}

}  // namespace detail

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form (Gauss-Jordan, first nonzero pivot).
inline RrefResult rref(Matrix m) {
  const Field& f = m.field();
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = col; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    const Elem inv = f.inv(m(row, col));
    Elem* pr = m.row_ptr(row);
    for (std::size_t j = col; j < m.cols(); ++j) pr[j] = f.mul(pr[j], inv);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != row && m(i, col)) detail::row_axpy(f, m.row_ptr(i), pr, m(i, col), col, m.cols());
    piv.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(piv)};
}

inline std::size_t rank(const Matrix& m) {
  // forward elimination only
  Matrix a = m;
  const Field& f = a.field();
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && a(sel, col) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row)
      for (std::size_t j = col; j < a.cols(); ++j) std::swap(a(sel, j), a(row, j));
    const Elem inv = f.inv(a(row, col));
    const Elem* pr = a.row_ptr(row);
    for (std::size_t i = row + 1; i < a.rows(); ++i)
      if (a(i, col)) detail::row_axpy(f, a.row_ptr(i), pr, f.mul(a(i, col), inv), col, a.cols());
    ++row;
  }
  return row;
}

struct RankNullspace {
  std::size_t rank = 0;
  std::vector<Vec> nullspace;  // basis of {v : M v = 0}
};

/// Rank and a basis of the right nullspace; basis vectors are the standard
/// ones read off the reduced row echelon form (one per free column).
inline RankNullspace rank_nullspace(const Matrix& m) {
  auto [r, piv] = rref(m);
  RankNullspace out;
  out.rank = piv.size();
  const Field& f = m.field();
  std::vector<int> pivot_row(m.cols(), -1);
  for (std::size_t i = 0; i < piv.size(); ++i) pivot_row[piv[i]] = static_cast<int>(i);
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (pivot_row[free] >= 0) continue;
    Vec v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.neg(r(i, free));
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

/// Inverse of a square matrix, or nullopt-like failure via exception.
inline Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix::identity(m.field(), n));
  auto [r, piv] = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw std::domain_error("matrix is singular");
  return r.block(0, n, n, n);
}

/// Solve A X = B for X given A of full column rank; throws if inconsistent.
inline Matrix solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  const std::size_t n = a.cols();
  Matrix aug(a.field(), a.rows(), n + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, n, b);
  auto [r, piv] = rref(aug);
  if (!piv.empty() && piv.back() >= n) throw std::domain_error("solve: inconsistent system");
  if (piv.size() < n) throw std::domain_error("solve: matrix is not of full column rank");
  return r.block(0, n, n, b.cols());
}

/// Uniformly random matrix from a seeded generator.
inline Matrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, f.order() - 1);
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<Elem>(d(rng));
  return m;
}

}  // namespace sl2sheaf
