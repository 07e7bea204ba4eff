#pragma once

/**
 * @file sl2_module.hpp
 * @brief Finite-dimensional restricted sl2-modules given by matrices for e, f, h.
 */

#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sl2sheaf/matrix.hpp"
#include "sl2sheaf/partition.hpp"
#include "sl2sheaf/point.hpp"
#include "sl2sheaf/poly_matrix.hpp"

namespace sl2sheaf {

enum class Family { Weyl, DualWeyl, Projective, NonConstant, Other };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::Weyl: return "weyl";
    case Family::DualWeyl: return "dual-weyl";
    case Family::Projective: return "projective";
    case Family::NonConstant: return "phi";
    case Family::Other: return "other";
  }
  return "other";
}

/// Generic Jordan type plus the finitely many points where it differs.
struct JordanTypeProfile {
  Partition generic;
  std::vector<std::pair<PointP1, Partition>> exceptional;
  unsigned largest_field_degree = 1;  // largest extension visited while checking candidates

  bool constant() const { return exceptional.empty(); }
  /// Type at a point, read from the profile.
  Partition at(const PointP1& pt) const {
    for (const auto& [q, part] : exceptional)
      if (same_point(q, pt)) return part;
    return generic;
  }
};

namespace detail {
struct ProfileCache {
  std::mutex mutex;
  std::map<unsigned, JordanTypeProfile> by_bound;
};
}  // namespace detail

class Sl2Module {
 public:
  Sl2Module(Matrix e, Matrix f, Matrix h, Family family = Family::Other, std::optional<long> lambda = std::nullopt,
            std::optional<PointP1> xi = std::nullopt)
      : e_(std::move(e)), f_(std::move(f)), h_(std::move(h)), family_(family), lambda_(lambda), xi_(std::move(xi)),
        cache_(std::make_shared<detail::ProfileCache>()) {
    const std::size_t n = e_.rows();
    for (const Matrix* m : {&e_, &f_, &h_})
      if (m->rows() != n || m->cols() != n) throw std::invalid_argument("module actions must be square of equal size");
    if (e_.field() != f_.field() || e_.field() != h_.field()) throw std::invalid_argument("module actions over different fields");
  }

  const Field& field() const { return e_.field(); }
  std::uint32_t p() const { return field().characteristic(); }
  std::size_t dim() const { return e_.rows(); }
  const Matrix& e() const { return e_; }
  const Matrix& f() const { return f_; }
  const Matrix& h() const { return h_; }
  Family family() const { return family_; }
  std::optional<long> lambda() const { return lambda_; }
  const std::optional<PointP1>& xi() const { return xi_; }

  std::string label() const {
    const std::string l = lambda_ ? std::to_string(*lambda_) : "?";
    switch (family_) {
      case Family::Weyl: return "V(" + l + ")";
      case Family::DualWeyl: return "V(" + l + ")*";
      case Family::Projective: return "Q(" + l + ")";
      case Family::NonConstant: return "Phi_" + (xi_ ? xi_->to_string() : std::string("?")) + "(" + l + ")";
      case Family::Other: break;
    }
    return "M(dim " + std::to_string(dim()) + ")";
  }

  /// Same module over a larger field.
  Sl2Module extend_scalars(const Embedding& emb) const {
    if (emb.source() == emb.target()) return *this;
    std::optional<PointP1> xi;
    if (xi_) xi = xi_->field() == emb.source() ? xi_->extend(emb) : *xi_;
    return Sl2Module(e_.extend(emb), f_.extend(emb), h_.extend(emb), family_, lambda_, xi);
  }
  Sl2Module relabeled(Family family, std::optional<long> lambda) const {
    return Sl2Module(e_, f_, h_, family, lambda, xi_);
  }

  /// Memoized per-module storage for Jordan type profiles (see nullcone.hpp).
  detail::ProfileCache& profile_cache() const { return *cache_; }

 private:
  Matrix e_, f_, h_;
  Family family_;
  std::optional<long> lambda_;
  std::optional<PointP1> xi_;
  std::shared_ptr<detail::ProfileCache> cache_;
};

/// Result of checking the defining relations of a restricted sl2-module.
struct ModuleCheck {
  bool brackets = false;     // [e,f] = h, [h,e] = 2e, [h,f] = -2f
  bool restricted = false;   // e^p = 0, f^p = 0, h^p = h
  bool ok() const { return brackets && restricted; }
};

inline ModuleCheck check_module(const Sl2Module& m) {
  const Matrix &E = m.e(), &F = m.f(), &H = m.h();
  const Field& k = m.field();
  ModuleCheck c;
  c.brackets = (E * F - F * E) == H && (H * E - E * H) == E.scaled(2) && (H * F - F * H) == F.scaled(k.neg(2));
  const std::size_t p = m.p();
  c.restricted = E.pow(p).is_zero() && F.pow(p).is_zero() && H.pow(p) == H;
  return c;
}

inline Sl2Module direct_sum(const Sl2Module& a, const Sl2Module& b) {
  if (a.field() != b.field()) throw std::invalid_argument("direct sum of modules over different fields");
  return Sl2Module(block_diagonal(a.e(), b.e()), block_diagonal(a.f(), b.f()), block_diagonal(a.h(), b.h()));
}

/// Contragredient module: X acts by -X^T.
inline Sl2Module dual(const Sl2Module& m) {
  const Field& k = m.field();
  const Elem minus_one = k.neg(1);
  return Sl2Module(m.e().transpose().scaled(minus_one), m.f().transpose().scaled(minus_one),
                   m.h().transpose().scaled(minus_one));
}

namespace detail {
inline bool is_diagonal(const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j)) return false;
  return true;
}
}  // namespace detail

/// Basis of Hom(M, N) = {T : T X_M = X_N T, X in {e, f, h}}, each T of size dim N x dim M.
inline std::vector<Matrix> hom_space(const Sl2Module& M, const Sl2Module& N) {
  if (M.field() != N.field()) throw std::invalid_argument("hom_space: modules over different fields");
  const Field& k = M.field();
  const std::size_t m = M.dim(), n = N.dim();
  // With h diagonal on both sides, T_ij must vanish unless the weights agree.
  const bool diag = detail::is_diagonal(M.h()) && detail::is_diagonal(N.h());
  std::vector<long> unknown(n * m, -1);
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (!diag || N.h()(i, i) == M.h()(j, j)) {
        unknown[i * m + j] = static_cast<long>(cells.size());
        cells.push_back({i, j});
      }
  std::vector<const Matrix*> xs_m{&M.e(), &M.f()}, xs_n{&N.e(), &N.f()};
  if (!diag) {
    xs_m.push_back(&M.h());
    xs_n.push_back(&N.h());
  }
  std::vector<Vec> eqs;
  for (std::size_t x = 0; x < xs_m.size(); ++x) {
    const Matrix &XM = *xs_m[x], &XN = *xs_n[x];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < m; ++c) {
        // (T XM)_{ic} - (XN T)_{ic}
        Vec row(cells.size(), 0);
        bool any = false;
        for (std::size_t j = 0; j < m; ++j) {
          const long u = unknown[i * m + j];
          if (u >= 0 && XM(j, c)) {
            row[static_cast<std::size_t>(u)] = k.add(row[static_cast<std::size_t>(u)], XM(j, c));
            any = true;
          }
        }
        for (std::size_t l = 0; l < n; ++l) {
          const long u = unknown[l * m + c];
          if (u >= 0 && XN(i, l)) {
            row[static_cast<std::size_t>(u)] = k.sub(row[static_cast<std::size_t>(u)], XN(i, l));
            any = true;
          }
        }
        if (any) eqs.push_back(std::move(row));
      }
  }
  std::vector<Matrix> out;
  const auto rn = rank_nullspace(Matrix::from_rows(k, cells.size(), eqs));
  for (const auto& v : rn.nullspace) {
    Matrix t(k, n, m);
    for (std::size_t u = 0; u < cells.size(); ++u) t(cells[u].first, cells[u].second) = v[u];
    out.push_back(std::move(t));
  }
  return out;
}

inline bool is_homomorphism(const Matrix& t, const Sl2Module& M, const Sl2Module& N) {
  return t * M.e() == N.e() * t && t * M.f() == N.f() * t && t * M.h() == N.h() * t;
}

/// Characteristic polynomial det(u I - T).
inline Poly characteristic_polynomial(const Matrix& t) {
  const Field& k = t.field();
  const std::size_t n = t.rows();
  Matrix c0 = t.scaled(k.neg(1));
  return determinant(PolyMatrix::from_coefficients({c0, Matrix::identity(k, n)}));
}

/// An invertible element of Hom(M, N) if one is found among the basis and seeded random combinations.
inline std::optional<Matrix> find_isomorphism(const Sl2Module& M, const Sl2Module& N, std::uint64_t seed = 1, int tries = 16) {
  if (M.dim() != N.dim()) return std::nullopt;
  const auto basis = hom_space(M, N);
  if (basis.empty()) return std::nullopt;
  auto invertible = [](const Matrix& t) { return rank(t) == t.rows(); };
  for (const auto& b : basis)
    if (invertible(b)) return b;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> d(0, M.field().order() - 1);
  for (int k = 0; k < tries; ++k) {
    Matrix t(M.field(), N.dim(), M.dim());
    for (const auto& b : basis) t = t + b.scaled(static_cast<Elem>(d(rng)));
    if (invertible(t)) return t;
  }
  return std::nullopt;
}

enum class Decomposability { Indecomposable, Decomposable, Inconclusive };

inline std::string to_string(Decomposability d) {
  switch (d) {
    case Decomposability::Indecomposable: return "true";
    case Decomposability::Decomposable: return "false";
    case Decomposability::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

/// Fitting-lemma test on End(M): an endomorphism whose characteristic polynomial
/// has two coprime factors splits M; if every sampled endomorphism is a scalar
/// plus a nilpotent, M is reported indecomposable.
inline Decomposability is_indecomposable(const Sl2Module& M, std::uint64_t seed = 1, int random_samples = 4) {
  if (M.dim() == 0) return Decomposability::Decomposable;
  const auto basis = hom_space(M, M);
  std::vector<Matrix> samples = basis;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> d(0, M.field().order() - 1);
  for (int k = 0; k < random_samples && basis.size() > 1; ++k) {
    Matrix t(M.field(), M.dim(), M.dim());
    for (const auto& b : basis) t = t + b.scaled(static_cast<Elem>(d(rng)));
    samples.push_back(std::move(t));
  }
  bool all_local = true;
  for (const auto& t : samples) {
    const auto factors = irreducible_factors(characteristic_polynomial(t));
    if (factors.size() >= 2) return Decomposability::Decomposable;
    if (factors.size() == 1 && factors[0].factor.degree() != 1) all_local = false;
  }
  return all_local ? Decomposability::Indecomposable : Decomposability::Inconclusive;
}

}  // namespace sl2sheaf
