#pragma once

/**
 * @file extension.hpp
 * @brief Embeddings F_{p^e} -> F_{p^m} for e | m.
 */

#include <stdexcept>
#include <vector>

#include "sl2sheaf/poly.hpp"

namespace sl2sheaf {

/// Field homomorphism from a subfield K into an extension L of the same characteristic.
/// The generator of K is sent to the smallest-code root of K's modulus in L.
class Embedding {
 public:
  Embedding(Field source, Field target) : src_(std::move(source)), tgt_(std::move(target)) {
    if (src_.characteristic() != tgt_.characteristic()) throw std::invalid_argument("embedding between different characteristics");
    if (tgt_.degree() % src_.degree() != 0) throw std::invalid_argument(src_.description() + " does not embed in " + tgt_.description());
    if (src_.degree() == 1 || src_ == tgt_) {
      identity_ = true;
      return;
    }
    std::vector<Elem> m(src_.modulus().begin(), src_.modulus().end());
    const auto rs = roots(Poly(tgt_, m));
    if (rs.empty()) throw std::logic_error("modulus has no root in the extension");
    image_of_generator_ = rs.front();
    powers_.push_back(1);
    for (unsigned i = 1; i < src_.degree(); ++i) powers_.push_back(tgt_.mul(powers_.back(), image_of_generator_));
  }

  const Field& source() const { return src_; }
  const Field& target() const { return tgt_; }

  Elem operator()(Elem a) const {
    if (identity_) return a;
    const auto d = src_.digits(a);
    Elem r = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i]) r = tgt_.add(r, tgt_.mul(d[i], powers_[i]));
    return r;
  }

 private:
  Field src_, tgt_;
  bool identity_ = false;
  Elem image_of_generator_ = 0;
  std::vector<Elem> powers_;
};

inline unsigned lcm_degree(unsigned a, unsigned b) { return a / std::gcd(a, b) * b; }

}  // namespace sl2sheaf
