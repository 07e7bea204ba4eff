#pragma once

/**
 * @file field.hpp
 * @brief Finite fields F_q, q = p^e, with p an odd prime.
 *
 * Elements are plain 32-bit codes. An element of F_{p^e} = F_p[x]/(m(x)) with
 * residue c_0 + c_1 x + ... + c_{e-1} x^{e-1} has code sum_i c_i p^i, so the
 * prime subfield occupies codes 0..p-1 in every extension of the same
 * characteristic. The modulus m is the first monic irreducible polynomial of
 * degree e in lexicographic order, which makes F_{p^e} canonical for a given
 * (p, e): two Field objects with equal (p, e) are the same field.
 */

#include <array>
#include <cstdint>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sl2sheaf {

using Elem = std::uint32_t;

inline constexpr unsigned kMaxExtensionDegree = 16;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace detail {

// Dense polynomials over F_p as coefficient vectors (index = degree). Only
// used to find the canonical modulus; general polynomial arithmetic lives in
// poly.hpp.
using RawPoly = std::vector<std::uint64_t>;

inline void raw_trim(RawPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t raw_inv(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline RawPoly raw_mulmod(const RawPoly& a, const RawPoly& b, const RawPoly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  RawPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  const std::size_t dm = m.size() - 1;  // m monic
  for (std::size_t k = c.size(); k-- > dm;) {
    const std::uint64_t f = c[k];
    if (!f) continue;
    for (std::size_t i = 0; i <= dm; ++i) c[k - dm + i] = (c[k - dm + i] + (p - f) * m[i]) % p;
  }
  c.resize(std::min(c.size(), dm));
  raw_trim(c);
  return c;
}

inline RawPoly raw_gcd(RawPoly a, RawPoly b, std::uint64_t p) {
  raw_trim(a);
  raw_trim(b);
  while (!b.empty()) {
    const std::uint64_t inv = raw_inv(b.back(), p);
    while (a.size() >= b.size()) {
      const std::uint64_t f = a.back() * inv % p;
      const std::size_t sh = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] = (a[sh + i] + (p - f) * b[i]) % p;
      raw_trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

// Ben-Or: m of degree e is irreducible iff gcd(x^{p^i} - x, m) = 1 for 1 <= i <= e/2.
inline bool raw_is_irreducible(const RawPoly& m, std::uint64_t p) {
  const std::size_t e = m.size() - 1;
  if (e <= 1) return e == 1;
  RawPoly xp{0, 1};
  for (std::size_t i = 1; i <= e / 2; ++i) {
    // xp <- xp^p mod m
    RawPoly base = xp, acc{1};
    for (std::uint64_t k = p; k; k >>= 1) {
      if (k & 1) acc = raw_mulmod(acc, base, m, p);
      base = raw_mulmod(base, base, m, p);
    }
    xp = acc;
    RawPoly diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    raw_trim(diff);
    const RawPoly g = raw_gcd(m, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

/// First monic irreducible polynomial of degree e over F_p, enumerating the
/// lower coefficients as a base-p counter with c_0 least significant.
inline std::vector<Elem> first_irreducible(std::uint64_t p, unsigned e) {
  std::uint64_t total = 1;
  for (unsigned i = 0; i < e; ++i) total *= p;
  for (std::uint64_t code = 0; code < total; ++code) {
    RawPoly m(e + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < e; ++i) {
      m[i] = c % p;
      c /= p;
    }
    m[e] = 1;
    if (raw_is_irreducible(m, p)) return {m.begin(), m.end()};
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable for prime p
}

struct FieldData {
  std::uint32_t p = 0;
  unsigned e = 1;
  std::uint64_t q = 0;
  std::uint64_t fastmod_m = 0;  // Lemire reduction constant for p
  std::vector<Elem> modulus;    // monic, degree e, coefficients in F_p
  std::vector<Elem> inv_table;  // e == 1 only
  std::vector<Elem> log_table;  // e > 1 and q small
  std::vector<Elem> exp_table;
};

}  // namespace detail

/// Handle to an immutable finite field F_{p^e}. Cheap to copy.
class Field {
 public:
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

  explicit Field(std::uint32_t p, unsigned e = 1) {
    if (p == 2) throw std::invalid_argument("characteristic 2 is not supported (p must be an odd prime)");
    if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (p >= (1u << 16)) throw std::invalid_argument("p must be below 65536");
    if (e < 1 || e > kMaxExtensionDegree) throw std::invalid_argument("extension degree out of range");
    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->e = e;
    d->q = 1;
    for (unsigned i = 0; i < e; ++i) {
      d->q *= p;
      if (d->q >= (std::uint64_t{1} << 31)) throw std::invalid_argument("field too large for 32-bit element codes");
    }
    d->fastmod_m = ~std::uint64_t{0} / p + 1;
    d->modulus = detail::first_irreducible(p, e);
    if (e == 1) {
      d->inv_table.assign(p, 0);
      for (std::uint32_t a = 1; a < p; ++a) d->inv_table[a] = static_cast<Elem>(detail::raw_inv(a, p));
    }
    d_ = d;
    if (e > 1 && d->q <= kTableLimit) build_tables(*d);
  }

  std::uint32_t characteristic() const { return d_->p; }
  unsigned degree() const { return d_->e; }
  std::uint64_t order() const { return d_->q; }
  bool is_prime_field() const { return d_->e == 1; }
  const std::vector<Elem>& modulus() const { return d_->modulus; }

  bool operator==(const Field& o) const { return d_ == o.d_ || (d_->p == o.d_->p && d_->e == o.d_->e); }
  bool operator!=(const Field& o) const { return !(*this == o); }

  static constexpr Elem zero() { return 0; }
  static constexpr Elem one() { return 1; }

  Elem from_int(long long n) const {
    const long long p = d_->p;
    long long r = n % p;
    if (r < 0) r += p;
    return static_cast<Elem>(r);
  }

  /// Reduce a 64-bit integer below 2^32 * p modulo p.
  Elem reduce(std::uint64_t x) const {
    if (x < (std::uint64_t{1} << 32)) return fastmod(static_cast<std::uint32_t>(x));
    return static_cast<Elem>(x % d_->p);
  }

  Elem add(Elem a, Elem b) const {
    if (d_->e == 1) {
      const Elem s = a + b;
      return s >= d_->p ? s - d_->p : s;
    }
    return digitwise(a, b, false);
  }
  Elem sub(Elem a, Elem b) const {
    if (d_->e == 1) return a >= b ? a - b : a + d_->p - b;
    return digitwise(a, b, true);
  }
  Elem neg(Elem a) const { return sub(0, a); }

  Elem mul(Elem a, Elem b) const {
    if (d_->e == 1) return fastmod(a * b);
    if (a == 0 || b == 0) return 0;
    if (!d_->log_table.empty()) {
      std::uint64_t k = std::uint64_t{d_->log_table[a]} + d_->log_table[b];
      if (k >= d_->q - 1) k -= d_->q - 1;
      return d_->exp_table[k];
    }
    return slow_mul(*d_, a, b);
  }

  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    if (d_->e == 1) return d_->inv_table[a];
    if (!d_->log_table.empty()) {
      const std::uint64_t l = d_->log_table[a];
      return d_->exp_table[l == 0 ? 0 : d_->q - 1 - l];
    }
    return pow(a, d_->q - 2);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t k) const {
    Elem r = 1;
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }

  Elem frobenius(Elem a) const { return pow(a, d_->p); }

  /// The class of x in F_p[x]/(m); for e = 1 this is the root of m = x + c_0.
  Elem generator() const {
    if (d_->e == 1) return from_int(-static_cast<long long>(d_->modulus[0]));
    return d_->p;
  }

  std::vector<Elem> digits(Elem a) const {
    std::vector<Elem> out(d_->e, 0);
    for (unsigned i = 0; i < d_->e; ++i) {
      out[i] = a % d_->p;
      a /= d_->p;
    }
    return out;
  }
  Elem from_digits(const std::vector<Elem>& c) const {
    if (c.size() > d_->e) throw std::invalid_argument("too many coordinates for field element");
    Elem r = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] >= d_->p) throw std::invalid_argument("coordinate not reduced mod p");
      r = r * d_->p + c[i];
    }
    return r;
  }

  std::string to_string(Elem a) const {
    if (d_->e == 1) return std::to_string(a);
    const auto c = digits(a);
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (!c[i]) continue;
      if (!first) os << '+';
      first = false;
      if (i == 0 || c[i] != 1) os << c[i];
      if (i >= 1) os << 'x';
      if (i >= 2) os << '^' << i;
    }
    if (first) os << '0';
    return os.str();
  }

  std::string description() const {
    std::ostringstream os;
    os << "F_" << d_->p;
    if (d_->e > 1) os << '^' << d_->e;
    return os.str();
  }

 private:
  Elem fastmod(std::uint32_t a) const {
    const std::uint64_t low = d_->fastmod_m * a;
    return static_cast<Elem>((static_cast<unsigned __int128>(low) * d_->p) >> 64);
  }

  Elem digitwise(Elem a, Elem b, bool subtract) const {
    const std::uint32_t p = d_->p;
    Elem r = 0, scale = 1;
    for (unsigned i = 0; i < d_->e; ++i) {
      const Elem x = a % p, y = b % p;
      a /= p;
      b /= p;
      Elem z = subtract ? (x >= y ? x - y : x + p - y) : (x + y >= p ? x + y - p : x + y);
      r += z * scale;
      scale *= p;
    }
    return r;
  }

  static Elem slow_mul(const detail::FieldData& d, Elem a, Elem b) {
    const unsigned e = d.e;
    const std::uint64_t p = d.p;
    std::array<std::uint64_t, kMaxExtensionDegree> x{}, y{};
    std::array<std::uint64_t, 2 * kMaxExtensionDegree> z{};
    for (unsigned i = 0; i < e; ++i) {
      x[i] = a % p;
      a /= static_cast<Elem>(p);
      y[i] = b % p;
      b /= static_cast<Elem>(p);
    }
    for (unsigned i = 0; i < e; ++i)
      for (unsigned j = 0; j < e; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
    for (unsigned k = 2 * e - 1; k-- > e;) {
      const std::uint64_t f = z[k];
      if (!f) continue;
      z[k] = 0;
      for (unsigned i = 0; i < e; ++i) z[k - e + i] = (z[k - e + i] + (p - f) * d.modulus[i]) % p;
    }
    Elem r = 0;
    for (unsigned i = e; i-- > 0;) r = r * static_cast<Elem>(p) + static_cast<Elem>(z[i]);
    return r;
  }

  static void build_tables(detail::FieldData& d) {
    const std::uint64_t n = d.q - 1;
    const auto primes = prime_divisors(n);
    auto spow = [&](Elem a, std::uint64_t k) {
      Elem r = 1;
      while (k) {
        if (k & 1) r = slow_mul(d, r, a);
        a = slow_mul(d, a, a);
        k >>= 1;
      }
      return r;
    };
    Elem g = 0;
    for (Elem cand = 2; cand < d.q; ++cand) {
      bool primitive = true;
      for (auto l : primes)
        if (spow(cand, n / l) == 1) {
          primitive = false;
          break;
        }
      if (primitive) {
        g = cand;
        break;
      }
    }
    d.exp_table.resize(n);
    d.log_table.assign(d.q, 0);
    Elem cur = 1;
    for (std::uint64_t k = 0; k < n; ++k) {
      d.exp_table[k] = cur;
      d.log_table[cur] = static_cast<Elem>(k);
      cur = slow_mul(d, cur, g);
    }
  }

  std::shared_ptr<const detail::FieldData> d_;
};

/// Binomial coefficient C(n, k) reduced mod p via Lucas' theorem (0 outside 0 <= k <= n).
inline Elem binom_mod(long long n, long long k, const Field& f) {
  if (k < 0 || n < 0 || k > n) return 0;
  const long long p = f.characteristic();
  Elem r = 1;
  while (n > 0 || k > 0) {
    const long long ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    // small binomial by multiplicative formula in F_p
    Elem num = 1, den = 1;
    for (long long i = 0; i < ki; ++i) {
      num = f.mul(num, f.from_int(ni - i));
      den = f.mul(den, f.from_int(i + 1));
    }
    r = f.mul(r, f.div(num, den));
    n /= p;
    k /= p;
  }
  return r;
}

}  // namespace sl2sheaf
