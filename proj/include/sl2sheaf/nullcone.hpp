#pragma once

/**
 * @file nullcone.hpp
 * @brief Operators at points of P^1, local Jordan types and Jordan type profiles.
 */

#include <random>
#include <stdexcept>
#include <string>

#include "sl2sheaf/families.hpp"

namespace sl2sheaf {

/// Raised when an exceptional-locus candidate needs a field larger than allowed.
class ProfileIncomplete : public std::runtime_error {
 public:
  ProfileIncomplete(const std::string& factor, unsigned needed, unsigned bound)
      : std::runtime_error("profile incomplete: factor " + factor + " needs F_p^" + std::to_string(needed) +
                           " beyond the extension bound " + std::to_string(bound)),
        factor_(factor), needed_(needed) {}
  const std::string& factor() const { return factor_; }
  unsigned needed_degree() const { return needed_; }

 private:
  std::string factor_;
  unsigned needed_;
};

namespace detail {
/// Bring a module and a point to a common field.
inline std::pair<Sl2Module, PointP1> common_field(const Sl2Module& M, const PointP1& pt) {
  if (M.field() == pt.field()) return {M, pt};
  const Field L(M.p(), lcm_degree(M.field().degree(), pt.field().degree()));
  return {M.extend_scalars(Embedding(M.field(), L)), pt.extend(Embedding(pt.field(), L))};
}
}  // namespace detail

/// x E + y F + z H with (x, y, z) = iota(pt), over the common field of M and pt.
inline Matrix operator_at(const Sl2Module& M, const PointP1& pt) {
  const auto [N, q] = detail::common_field(M, pt);
  const auto v = iota(q);
  return N.e().scaled(v.x) + N.f().scaled(v.y) + N.h().scaled(v.z);
}

/// Jordan type of a p-nilpotent operator.
inline Partition jordan_type_of(const Matrix& A, std::uint32_t p) {
  std::vector<int> ranks;
  Matrix power = A;
  for (std::uint32_t j = 1; j < p; ++j) {
    const int r = static_cast<int>(rank(power));
    ranks.push_back(r);
    if (r == 0) {
      ranks.resize(p - 1, 0);
      break;
    }
    power = power * A;
  }
  if (ranks.back() != 0 && !(power * A).is_zero()) throw std::domain_error("operator is not p-nilpotent");
  const Partition part = jordan_type_from_ranks(static_cast<int>(A.rows()), ranks);
  return Partition(part.parts(), static_cast<int>(p));
}

inline Partition local_jordan_type(const Sl2Module& M, const PointP1& pt) { return jordan_type_of(operator_at(M, pt), M.p()); }

/// rank of operator_at(M, pt)^j.
inline int local_j_rank(const Sl2Module& M, const PointP1& pt, int j) {
  if (j < 0 || j > static_cast<int>(M.p())) throw std::invalid_argument("local_j_rank: need 0 <= j <= p");
  return static_cast<int>(rank(operator_at(M, pt).pow(static_cast<std::uint64_t>(j))));
}

/// The operator at the symbolic point [1:u]: E - u^2 F + u H over K[u].
inline PolyMatrix generic_operator(const Sl2Module& M) {
  const Field& k = M.field();
  return PolyMatrix::from_coefficients({M.e(), M.h(), M.f().scaled(k.neg(1))});
}

struct ProfileOptions {
  unsigned ext_max = 8;
  std::uint64_t seed = 0x5eed;
  int compressions = 3;  // random minors used to discard spurious candidate factors
};

namespace detail {

// det(P A Q) for seeded constant P (r x n) and Q (n x r): a combination of r x r minors of A.
inline Poly compressed_minor(const PolyMatrix& A, std::size_t r, std::mt19937_64& rng) {
  const Field& k = A.field();
  const Matrix P = random_matrix(k, r, A.rows(), rng), Q = random_matrix(k, A.cols(), r, rng);
  PolyMatrix Pp = PolyMatrix::from_coefficients({P}), Qp = PolyMatrix::from_coefficients({Q});
  return determinant(Pp * A * Qp);
}

inline JordanTypeProfile compute_profile(const Sl2Module& M, const ProfileOptions& opt) {
  const Field& k = M.field();
  const std::uint32_t p = M.p();
  const int n = static_cast<int>(M.dim());
  const PolyMatrix A = generic_operator(M);

  std::vector<int> ranks;
  std::vector<Poly> locus;  // per power: polynomial whose roots contain the rank-drop points
  PolyMatrix power = A;
  std::mt19937_64 rng(opt.seed);
  for (std::uint32_t j = 1; j < p; ++j) {
    const GenericRank g = generic_rank(power);
    ranks.push_back(static_cast<int>(g.rank));
    if (g.rank == 0) {
      ranks.resize(p - 1, 0);
      break;
    }
    locus.push_back(g.minor);
    if (j + 1 < p) power = power * A;
  }
  JordanTypeProfile prof;
  prof.generic = Partition(jordan_type_from_ranks(n, ranks).parts(), static_cast<int>(p));

  // Candidate irreducible factors over K; refine factors whose splitting field is too large.
  std::vector<Poly> candidates;
  {
    PolyMatrix pw = A;
    for (std::size_t j = 0; j < locus.size(); ++j) {
      if (j) pw = pw * A;
      if (locus[j].degree() <= 0) continue;
      for (const auto& pf : irreducible_factors(locus[j], opt.seed)) {
        const Poly& fac = pf.factor;
        bool keep = true;
        if (k.degree() * static_cast<unsigned>(fac.degree()) > opt.ext_max) {
          for (int c = 0; c < opt.compressions && keep; ++c) {
            const Poly other = compressed_minor(pw, static_cast<std::size_t>(ranks[j]), rng);
            if (!other.is_zero() && !(other % fac).is_zero()) keep = false;
          }
          if (keep) throw ProfileIncomplete(fac.to_string(), k.degree() * static_cast<unsigned>(fac.degree()), opt.ext_max);
        }
        if (keep && std::find(candidates.begin(), candidates.end(), fac) == candidates.end()) candidates.push_back(fac);
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), poly_less);

  // Each irreducible factor gives a Galois orbit of points with a common type.
  for (const auto& fac : candidates) {
    const unsigned deg = k.degree() * static_cast<unsigned>(fac.degree());
    const Field L(p, deg);
    const Embedding emb(k, L);
    prof.largest_field_degree = std::max(prof.largest_field_degree, deg);
    const Poly lifted = map_coeffs(fac, L, [&](Elem c) { return emb(c); });
    const auto rts = roots(lifted, opt.seed);
    if (rts.empty()) throw std::logic_error("candidate factor has no root in its splitting field");
    const Sl2Module ML = M.extend_scalars(emb);
    const Partition type = local_jordan_type(ML, PointP1::affine(L, rts.front()));
    if (type != prof.generic)
      for (Elem rho : rts) prof.exceptional.push_back({PointP1::affine(L, rho).minimal_field(), type});
  }
  const Partition at_inf = local_jordan_type(M, PointP1::infinity(k));
  if (at_inf != prof.generic) prof.exceptional.push_back({PointP1::infinity(k), at_inf});
  return prof;
}

}  // namespace detail

/// Generic Jordan type over K(u) and every point where the type differs. Cached per module.
inline JordanTypeProfile jordan_profile(const Sl2Module& M, const ProfileOptions& opt = {}) {
  auto& cache = M.profile_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto it = cache.by_bound.find(opt.ext_max);
    if (it != cache.by_bound.end()) return it->second;
  }
  JordanTypeProfile prof = detail::compute_profile(M, opt);
  std::lock_guard<std::mutex> lock(cache.mutex);
  cache.by_bound.emplace(opt.ext_max, prof);
  return prof;
}

inline bool has_constant_jordan_type(const Sl2Module& M, const ProfileOptions& opt = {}) {
  return jordan_profile(M, opt).constant();
}

/// Projective iff constant Jordan type [p]^{n/p}.
inline bool is_projective(const Sl2Module& M, const ProfileOptions& opt = {}) {
  const auto prof = jordan_profile(M, opt);
  if (!prof.constant()) return false;
  const int p = static_cast<int>(M.p());
  for (int x : prof.generic.parts())
    if (x != p) return false;
  return true;
}

inline std::string profile_summary(const JordanTypeProfile& prof) {
  if (prof.constant()) return "constant " + prof.generic.to_string();
  std::string out = "generic " + prof.generic.to_string() + "; exceptional";
  for (const auto& [pt, part] : prof.exceptional) out += " " + pt.to_string() + " -> " + part.to_string();
  return out;
}

}  // namespace sl2sheaf
