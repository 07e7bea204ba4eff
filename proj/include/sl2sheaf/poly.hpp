#pragma once

/**
 * @file poly.hpp
 * @brief Univariate polynomials over a finite field, with factorization.
 */

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "sl2sheaf/field.hpp"

namespace sl2sheaf {

namespace detail {

// Coefficient-vector kernels shared by Poly and the fraction-free eliminator.
// Vectors are little-endian and always trimmed (no trailing zeros).
using Coeffs = std::vector<Elem>;

inline void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Coeffs padd(const Field& f, const Coeffs& a, const Coeffs& b) {
  Coeffs c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = f.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(c);
  return c;
}

inline Coeffs psub(const Field& f, const Coeffs& a, const Coeffs& b) {
  Coeffs c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = f.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(c);
  return c;
}

inline Coeffs pmul(const Field& f, const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs c(a.size() + b.size() - 1, 0);
  if (f.is_prime_field()) {
    // delayed reduction: accumulate in 64 bits
    const std::uint64_t p = f.characteristic();
    std::vector<std::uint64_t> acc(c.size(), 0);
    const std::uint64_t limit = ~std::uint64_t{0} - p * p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        std::uint64_t& x = acc[i + j];
        x += std::uint64_t{a[i]} * b[j];
        if (x > limit) x %= p;
      }
    }
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = static_cast<Elem>(acc[k] % p);
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
    }
  }
  trim(c);
  return c;
}

inline Coeffs pscale(const Field& f, const Coeffs& a, Elem c) {
  if (c == 0) return {};
  Coeffs r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], c);
  return r;
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<Coeffs, Coeffs> pdivmod(const Field& f, Coeffs a, const Coeffs& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {Coeffs{}, a};
  Coeffs q(a.size() - b.size() + 1, 0);
  const Elem inv = f.inv(b.back());
  for (std::size_t k = a.size(); k >= b.size(); --k) {
    const Elem c = f.mul(a[k - 1], inv);
    if (!c) continue;
    const std::size_t sh = k - b.size();
    q[sh] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] = f.sub(a[sh + i], f.mul(c, b[i]));
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

/// Exact quotient a / b (caller guarantees divisibility).
inline Coeffs pdiv_exact(const Field& f, const Coeffs& a, const Coeffs& b) {
  auto [q, r] = pdivmod(f, a, b);
  if (!r.empty()) throw std::logic_error("inexact polynomial division");
  return q;
}

inline Coeffs pmonic(const Field& f, const Coeffs& a) {
  if (a.empty()) return a;
  return pscale(f, a, f.inv(a.back()));
}

inline Coeffs pgcd(const Field& f, Coeffs a, Coeffs b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = pdivmod(f, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(f, a);
}

}  // namespace detail

/// Polynomial in one indeterminate u over a finite field.
class Poly {
 public:
  explicit Poly(Field f) : f_(std::move(f)) {}
  Poly(Field f, std::vector<Elem> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
    for (auto x : c_)
      if (x >= f_.order()) throw std::invalid_argument("coefficient is not a field element");
    detail::trim(c_);
  }

  static Poly constant(const Field& f, Elem c) { return Poly(f, {c}); }
  static Poly monomial(const Field& f, Elem c, std::size_t deg) {
    std::vector<Elem> v(deg + 1, 0);
    v[deg] = c;
    return Poly(f, v);
  }
  static Poly x(const Field& f) { return monomial(f, 1, 1); }

  const Field& field() const { return f_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  Poly operator+(const Poly& o) const { return {f_, detail::padd(f_, c_, o.c_), Raw{}}; }
  Poly operator-(const Poly& o) const { return {f_, detail::psub(f_, c_, o.c_), Raw{}}; }
  Poly operator*(const Poly& o) const { return {f_, detail::pmul(f_, c_, o.c_), Raw{}}; }
  Poly operator-() const { return {f_, detail::psub(f_, {}, c_), Raw{}}; }
  Poly scaled(Elem c) const { return {f_, detail::pscale(f_, c_, c), Raw{}}; }
  bool operator==(const Poly& o) const { return f_ == o.f_ && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly monic() const { return {f_, detail::pmonic(f_, c_), Raw{}}; }

  Elem eval(Elem x) const {
    Elem r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = f_.add(f_.mul(r, x), c_[i]);
    return r;
  }

  Poly derivative() const {
    std::vector<Elem> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(f_.mul(f_.from_int(static_cast<long long>(i)), c_[i]));
    return Poly(f_, d);
  }

  std::string to_string(char var = 'u') const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (!c_[i]) continue;
      if (!out.empty()) out += " + ";
      const bool unit = c_[i] == 1 && i > 0;
      std::string coef = f_.to_string(c_[i]);
      if (!f_.is_prime_field() && coef.find('+') != std::string::npos) coef = "(" + coef + ")";
      if (!unit) out += coef;
      if (i >= 1) out += var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  struct Raw {};
  Poly(Field f, std::vector<Elem> c, Raw) : f_(std::move(f)), c_(std::move(c)) {}

  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  friend Poly gcd(const Poly& a, const Poly& b);

  Field f_;
  std::vector<Elem> c_;
};

inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  auto [q, r] = detail::pdivmod(a.f_, a.c_, b.c_);
  return {Poly(a.f_, q, Poly::Raw{}), Poly(a.f_, r, Poly::Raw{})};
}

inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

/// Monic gcd (zero if both inputs are zero).
inline Poly gcd(const Poly& a, const Poly& b) { return Poly(a.f_, detail::pgcd(a.f_, a.c_, b.c_), Poly::Raw{}); }

inline Poly powmod(Poly base, std::uint64_t k, const Poly& m) {
  Poly r = Poly::constant(base.field(), 1) % m;
  base = base % m;
  while (k) {
    if (k & 1) r = (r * base) % m;
    base = (base * base) % m;
    k >>= 1;
  }
  return r;
}

/// Multiplicity-tagged factor.
struct PolyFactor {
  Poly factor;
  int multiplicity;
};

/// Squarefree decomposition: returns (g_i, i) with f = lead * prod g_i^i, each g_i squarefree, monic.
inline std::vector<PolyFactor> squarefree_decomposition(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree decomposition of the zero polynomial");
  const Field& F = f.field();
  const std::uint64_t p = F.characteristic();
  std::vector<PolyFactor> out;
  if (f.degree() == 0) return out;

  // Yun-style loop with p-th root handling
  std::vector<PolyFactor> acc;
  Poly c = gcd(f, f.derivative());
  Poly w = f.monic() / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly z = w / y;
    if (z.degree() > 0) acc.push_back({z.monic(), i});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) {
    // c is a p-th power: take the p-th root coefficientwise (inverse Frobenius on coefficients)
    std::vector<Elem> root;
    const auto& cc = c.coeffs();
    const std::uint64_t inv_frob = F.order() / p;  // x^{q/p} is the inverse of x^p on F_q
    for (std::size_t k = 0; k < cc.size(); k += p) root.push_back(F.pow(cc[k], inv_frob));
    for (auto& pf : squarefree_decomposition(Poly(F, root))) acc.push_back({pf.factor, pf.multiplicity * static_cast<int>(p)});
  }
  // merge equal multiplicities
  std::sort(acc.begin(), acc.end(), [](const PolyFactor& a, const PolyFactor& b) { return a.multiplicity < b.multiplicity; });
  for (auto& x : acc) {
    if (!out.empty() && out.back().multiplicity == x.multiplicity)
      out.back().factor = out.back().factor * x.factor;
    else
      out.push_back(x);
  }
  return out;
}

/// Distinct-degree factorization of a monic squarefree polynomial: (product of degree-d factors, d).
inline std::vector<PolyFactor> distinct_degree_factors(const Poly& f) {
  std::vector<PolyFactor> out;
  const Field& F = f.field();
  Poly rest = f.monic();
  Poly xq = Poly::x(F);
  const Poly x = Poly::x(F);
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    xq = powmod(xq, F.order(), rest);
    Poly g = gcd(rest, xq - x);
    if (g.degree() > 0) {
      out.push_back({g, d});
      rest = rest / g;
      xq = xq % rest;
    }
  }
  if (rest.degree() > 0) out.push_back({rest, rest.degree()});
  return out;
}

/// Cantor-Zassenhaus equal-degree split of a monic squarefree product of degree-d irreducibles.
inline std::vector<Poly> equal_degree_factors(const Poly& f, int d, std::mt19937_64& rng) {
  if (f.degree() == d) return {f.monic()};
  const Field& F = f.field();
  const std::uint64_t q = F.order();
  std::uint64_t qd = 1;
  for (int i = 0; i < d; ++i) qd *= q;
  const std::uint64_t exponent = (qd - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
  while (true) {
    std::vector<Elem> r(static_cast<std::size_t>(f.degree()));
    for (auto& c : r) c = static_cast<Elem>(dist(rng));
    Poly a(F, r);
    if (a.degree() <= 0) continue;
    Poly g = gcd(a, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      auto l = equal_degree_factors(g, d, rng);
      auto rr = equal_degree_factors(f / g, d, rng);
      l.insert(l.end(), rr.begin(), rr.end());
      return l;
    }
    Poly b = powmod(a, exponent, f) - Poly::constant(F, 1);
    g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      auto l = equal_degree_factors(g, d, rng);
      auto rr = equal_degree_factors(f / g, d, rng);
      l.insert(l.end(), rr.begin(), rr.end());
      return l;
    }
  }
}

inline bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
}

/// Monic irreducible factors with multiplicity, sorted by (degree, coefficients).
inline std::vector<PolyFactor> irreducible_factors(const Poly& f, std::uint64_t seed = 0x5eed) {
  if (f.is_zero()) throw std::invalid_argument("irreducible_factors: zero polynomial");
  std::mt19937_64 rng(seed);
  std::vector<PolyFactor> out;
  for (const auto& sq : squarefree_decomposition(f)) {
    for (const auto& dd : distinct_degree_factors(sq.factor)) {
      for (auto& g : equal_degree_factors(dd.factor, dd.multiplicity, rng)) out.push_back({g, sq.multiplicity});
    }
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) { return poly_less(a.factor, b.factor); });
  return out;
}

inline bool is_irreducible(const Poly& f) {
  if (f.degree() <= 0) return false;
  auto fac = irreducible_factors(f);
  return fac.size() == 1 && fac[0].multiplicity == 1;
}

/// Distinct roots of f in its coefficient field, ascending by code.
inline std::vector<Elem> roots(const Poly& f, std::uint64_t seed = 0x5eed) {
  std::vector<Elem> out;
  for (const auto& pf : irreducible_factors(f, seed))
    if (pf.factor.degree() == 1) out.push_back(f.field().neg(pf.factor[0]));
  std::sort(out.begin(), out.end());
  return out;
}

/// Image of a polynomial under a coefficient map (e.g. a field embedding).
template <class Map>
Poly map_coeffs(const Poly& a, const Field& target, Map&& m) {
  std::vector<Elem> c;
  c.reserve(a.coeffs().size());
  for (auto x : a.coeffs()) c.push_back(m(x));
  return Poly(target, c);
}

}  // namespace sl2sheaf
