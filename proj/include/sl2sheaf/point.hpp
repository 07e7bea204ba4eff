#pragma once

/**
 * @file point.hpp
 * @brief Points of P^1 over finite fields and the nullcone parametrization.
 */

#include <string>

#include "sl2sheaf/extension.hpp"

namespace sl2sheaf {

/// A point [s:t] of P^1 over F_{p^e}, normalized to [1:t] or [0:1].
class PointP1 {
 public:
  PointP1(Field f, Elem s, Elem t) : f_(std::move(f)) {
    if (s >= f_.order() || t >= f_.order()) throw std::invalid_argument("point coordinate is not a field element");
    if (s == 0 && t == 0) throw std::invalid_argument("[0:0] is not a point of P^1");
    if (s == 0) {
      s_ = 0;
      t_ = 1;
    } else {
      s_ = 1;
      t_ = f_.div(t, s);
    }
  }
  static PointP1 affine(const Field& f, Elem eps) { return PointP1(f, 1, eps); }
  static PointP1 infinity(const Field& f) { return PointP1(f, 0, 1); }

  const Field& field() const { return f_; }
  Elem s() const { return s_; }
  Elem t() const { return t_; }
  bool is_infinity() const { return s_ == 0; }
  /// The affine coordinate eps of [1:eps]; undefined at [0:1].
  Elem eps() const {
    if (is_infinity()) throw std::logic_error("[0:1] has no affine coordinate");
    return t_;
  }

  /// Same point after embedding into `target`.
  PointP1 extend(const Embedding& emb) const { return PointP1(emb.target(), emb(s_), emb(t_)); }

  /// Smallest subfield degree containing the coordinates (brute force below 2^20 elements).
  PointP1 minimal_field() const {
    if (f_.degree() == 1 || is_infinity() || t_ < f_.characteristic())
      return PointP1(Field(f_.characteristic()), s_, t_ < f_.characteristic() ? t_ : 0);
    for (unsigned d = 1; d < f_.degree(); ++d) {
      if (f_.degree() % d) continue;
      std::uint64_t qd = 1;
      for (unsigned i = 0; i < d; ++i) qd *= f_.characteristic();
      if (f_.pow(t_, qd) != t_) continue;
      if (qd > Field::kTableLimit) break;
      Field sub(f_.characteristic(), d);
      Embedding emb(sub, f_);
      for (Elem c = 0; c < qd; ++c)
        if (emb(c) == t_) return PointP1(sub, 1, c);
    }
    return *this;
  }

  std::string to_string() const { return "[" + f_.to_string(s_) + ":" + f_.to_string(t_) + "]"; }

 private:
  Field f_;
  Elem s_ = 1, t_ = 0;
};

/// Equality after embedding both points into a common field.
inline bool same_point(const PointP1& a, const PointP1& b) {
  if (a.field().characteristic() != b.field().characteristic()) return false;
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() == b.is_infinity();
  if (a.field() == b.field()) return a.t() == b.t();
  const Field common(a.field().characteristic(), lcm_degree(a.field().degree(), b.field().degree()));
  return Embedding(a.field(), common)(a.t()) == Embedding(b.field(), common)(b.t());
}

/// Coordinates (x, y, z) of x e + y f + z h in the nullcone of sl2 (xy + z^2 = 0).
struct NullconeElement {
  Field field;
  Elem x, y, z;
  bool on_nullcone() const { return field.add(field.mul(x, y), field.mul(z, z)) == 0; }
};

/// [s:t] -> (s^2, -t^2, st).
inline NullconeElement iota(const PointP1& pt) {
  const Field& f = pt.field();
  NullconeElement n{f, f.mul(pt.s(), pt.s()), f.neg(f.mul(pt.t(), pt.t())), f.mul(pt.s(), pt.t())};
  if (!n.on_nullcone()) throw std::logic_error("iota left the nullcone");
  return n;
}

}  // namespace sl2sheaf
