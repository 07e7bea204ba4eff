#pragma once

/**
 * @file graded.hpp
 * @brief Graded submodules of R^n, R = F_q[s,t], computed degree by degree.
 *
 * The degree-d part of R^n has basis e_i s^{d-k} t^k. When the homogeneous
 * matrices involved admit an integer weight on the basis of R^n compatible
 * with wt(s) = -1, wt(t) = +1, every degree splits into weight blocks that the
 * maps preserve, and all linear algebra is done block by block.
 */

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "sl2sheaf/hom_matrix.hpp"

namespace sl2sheaf {

/// Weight function on the basis of R^n, or ungraded (a single block per degree).
struct WeightGrading {
  bool graded = false;
  std::vector<int> weight;
};

/// Weights with wt(j) = wt(i) + 2k - deg for every nonzero coefficient k of entry (i, j).
inline WeightGrading find_weights(const std::vector<const HomMatrix*>& maps, std::size_t n) {
  WeightGrading g;
  g.weight.assign(n, 0);
  // adjacency: (neighbor, offset) meaning wt(neighbor) = wt(self) + offset
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(n);
  for (const HomMatrix* m : maps) {
    if (m->rows() != n || m->cols() != n) return g;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (int k = 0; k <= m->degree(); ++k)
          if (m->coeff(i, j, k)) {
            const int off = 2 * k - m->degree();
            adj[i].push_back({j, off});
            adj[j].push_back({i, -off});
          }
  }
  std::vector<bool> seen(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::queue<std::size_t> todo;
    todo.push(root);
    while (!todo.empty()) {
      const std::size_t u = todo.front();
      todo.pop();
      for (auto [v, off] : adj[u]) {
        const int w = g.weight[u] + off;
        if (!seen[v]) {
          seen[v] = true;
          g.weight[v] = w;
          todo.push(v);
        } else if (g.weight[v] != w) {
          g.weight.assign(n, 0);
          return g;  // inconsistent: no grading
        }
      }
    }
  }
  g.graded = true;
  return g;
}

/// Coordinates of (R^n)_d grouped into weight blocks.
struct DegreeLayout {
  int degree = 0;
  std::vector<int> keys;                                       // block weights, ascending
  std::vector<std::vector<std::pair<std::size_t, int>>> coords;  // per block: (basis index i, k)
  std::vector<std::pair<std::size_t, std::size_t>> where;      // flat (i*(d+1)+k) -> (block, offset)

  std::size_t flat(std::size_t i, int k) const { return i * static_cast<std::size_t>(degree + 1) + static_cast<std::size_t>(k); }
  std::optional<std::size_t> block_of(int key) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - keys.begin());
  }
  std::size_t total() const { return where.size(); }
};

/// The free module R^n over a field with an optional weight grading.
class GradedAmbient {
 public:
  GradedAmbient(Field f, std::size_t n, WeightGrading g) : f_(std::move(f)), n_(n), g_(std::move(g)) {
    if (g_.weight.size() != n_) g_ = WeightGrading{false, std::vector<int>(n_, 0)};
  }

  const Field& field() const { return f_; }
  std::size_t rank() const { return n_; }
  bool graded() const { return g_.graded; }
  const WeightGrading& grading() const { return g_; }
  int weight_of(std::size_t i, int k, int d) const { return g_.graded ? g_.weight[i] + 2 * k - d : 0; }
  /// Weight shift caused by multiplying with s (k unchanged) or t (k+1).
  int shift_s() const { return g_.graded ? -1 : 0; }
  int shift_t() const { return g_.graded ? 1 : 0; }

  const DegreeLayout& layout(int d) const {
    if (d < 0) throw std::invalid_argument("negative degree");
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = layouts_.find(d);
    if (it != layouts_.end()) return *it->second;
    auto L = std::make_unique<DegreeLayout>();
    L->degree = d;
    std::map<int, std::vector<std::pair<std::size_t, int>>> blocks;
    for (std::size_t i = 0; i < n_; ++i)
      for (int k = 0; k <= d; ++k) blocks[weight_of(i, k, d)].push_back({i, k});
    L->where.resize(n_ * static_cast<std::size_t>(d + 1));
    for (auto& [key, cs] : blocks) {
      const std::size_t b = L->keys.size();
      L->keys.push_back(key);
      for (std::size_t o = 0; o < cs.size(); ++o) L->where[L->flat(cs[o].first, cs[o].second)] = {b, o};
      L->coords.push_back(std::move(cs));
    }
    const DegreeLayout& ref = *L;
    layouts_.emplace(d, std::move(L));
    return ref;
  }

 private:
  Field f_;
  std::size_t n_;
  WeightGrading g_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<DegreeLayout>> layouts_;
};

using AmbientPtr = std::shared_ptr<const GradedAmbient>;

namespace detail {

/// Canonical row basis (reduced echelon form without zero rows).
inline Matrix row_basis(const Matrix& rows) {
  auto [r, piv] = rref(rows);
  return r.block(0, 0, piv.size(), rows.cols());
}

inline Matrix empty_rows(const Field& f, std::size_t cols) { return Matrix(f, 0, cols); }

/// Reduce v modulo a reduced echelon row basis; returns the residue.
inline Vec reduce_mod(const Field& f, const Matrix& basis, Vec v) {
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    const Elem* row = basis.row_ptr(r);
    std::size_t piv = 0;
    while (row[piv] == 0) ++piv;
    if (v[piv]) detail::row_axpy(f, v.data(), row, v[piv], piv, basis.cols());
  }
  return v;
}

inline Matrix stack(const Matrix& a, const Matrix& b) {
  Matrix m(a.field(), a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

/// Intersection of two row spaces.
inline Matrix intersect_rows(const Matrix& a, const Matrix& b) {
  const Field& f = a.field();
  if (a.rows() == 0 || b.rows() == 0) return empty_rows(f, a.cols());
  // x a = y b  <=>  [a^T | -b^T] (x; y) = 0
  const std::size_t m = a.cols();
  Matrix sys(f, m, a.rows() + b.rows());
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) sys(c, r) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r) sys(c, a.rows() + r) = f.neg(b(r, c));
  }
  const auto ns = rank_nullspace(sys).nullspace;
  Matrix out(f, ns.size(), m);
  for (std::size_t v = 0; v < ns.size(); ++v)
    for (std::size_t r = 0; r < a.rows(); ++r) {
      const Elem x = ns[v][r];
      if (!x) continue;
      for (std::size_t c = 0; c < m; ++c) out(v, c) = f.add(out(v, c), f.mul(x, a(r, c)));
    }
  return row_basis(out);
}

}  // namespace detail

/// Degree-d component of a graded submodule: one echelon row basis per weight block.
struct Component {
  int degree = 0;
  std::vector<Matrix> blocks;

  std::size_t dim() const {
    std::size_t s = 0;
    for (const auto& b : blocks) s += b.rows();
    return s;
  }
  bool operator==(const Component& o) const { return degree == o.degree && blocks == o.blocks; }
  bool operator!=(const Component& o) const { return !(*this == o); }
};

inline Component zero_component(const GradedAmbient& amb, int d) {
  const auto& L = amb.layout(d);
  Component c{d, {}};
  for (const auto& cs : L.coords) c.blocks.push_back(detail::empty_rows(amb.field(), cs.size()));
  return c;
}

inline Component full_component(const GradedAmbient& amb, int d) {
  const auto& L = amb.layout(d);
  Component c{d, {}};
  for (const auto& cs : L.coords) c.blocks.push_back(Matrix::identity(amb.field(), cs.size()));
  return c;
}

inline Component intersect(const Component& a, const Component& b) {
  Component c{a.degree, {}};
  for (std::size_t i = 0; i < a.blocks.size(); ++i) c.blocks.push_back(detail::intersect_rows(a.blocks[i], b.blocks[i]));
  return c;
}

inline bool contains(const Component& big, const Component& small) {
  for (std::size_t i = 0; i < big.blocks.size(); ++i) {
    const Matrix& s = small.blocks[i];
    for (std::size_t r = 0; r < s.rows(); ++r) {
      Vec v(s.row_ptr(r), s.row_ptr(r) + s.cols());
      const Vec res = detail::reduce_mod(s.field(), big.blocks[i], v);
      if (std::any_of(res.begin(), res.end(), [](Elem x) { return x != 0; })) return false;
    }
  }
  return true;
}

/// Full coordinates (entry i, coefficient k of s^{d-k} t^k) of a block vector.
inline std::vector<std::vector<Elem>> to_polynomial_vector(const GradedAmbient& amb, int d, std::size_t block, const Elem* v) {
  const auto& L = amb.layout(d);
  std::vector<std::vector<Elem>> out(amb.rank(), std::vector<Elem>(static_cast<std::size_t>(d + 1), 0));
  const auto& cs = L.coords[block];
  for (std::size_t o = 0; o < cs.size(); ++o) out[cs[o].first][static_cast<std::size_t>(cs[o].second)] = v[o];
  return out;
}

/// Multiply every vector of component d by s and by t, giving R_1 * C_d inside degree d+1 (unreduced rows per block).
inline std::vector<Matrix> times_linear_forms(const GradedAmbient& amb, const Component& c) {
  const int d = c.degree;
  const auto& L = amb.layout(d);
  const auto& L1 = amb.layout(d + 1);
  std::vector<std::vector<Vec>> rows(L1.keys.size());
  for (std::size_t b = 0; b < c.blocks.size(); ++b) {
    const Matrix& m = c.blocks[b];
    for (int which = 0; which < 2; ++which) {
      const int key = L.keys[b] + (which == 0 ? amb.shift_s() : amb.shift_t());
      const auto tb = L1.block_of(key);
      if (!tb) throw std::logic_error("weight block missing in next degree");
      for (std::size_t r = 0; r < m.rows(); ++r) {
        Vec v(L1.coords[*tb].size(), 0);
        for (std::size_t o = 0; o < m.cols(); ++o) {
          if (!m(r, o)) continue;
          const auto [i, k] = L.coords[b][o];
          const auto [tb2, off] = L1.where[L1.flat(i, k + which)];
          v[off] = m(r, o);
          (void)tb2;
        }
        rows[*tb].push_back(std::move(v));
      }
    }
  }
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < rows.size(); ++b) out.push_back(Matrix::from_rows(amb.field(), L1.coords[b].size(), rows[b]));
  return out;
}

/// Lazily evaluated graded submodule of R^n with memoized components.
class GradedSubmodule {
 public:
  using Rule = std::function<Component(int)>;

  GradedSubmodule(AmbientPtr amb, Rule rule, std::string name = "")
      : impl_(std::make_shared<Impl>()) {
    impl_->amb = std::move(amb);
    impl_->rule = std::move(rule);
    impl_->name = std::move(name);
  }

  const AmbientPtr& ambient() const { return impl_->amb; }
  const std::string& name() const { return impl_->name; }

  const Component& at(int d) const {
    if (d < 0) throw std::invalid_argument("negative degree");
    {
      std::lock_guard<std::mutex> lock(impl_->mutex);
      auto it = impl_->memo.find(d);
      if (it != impl_->memo.end()) return it->second;
    }
    Component c = impl_->rule(d);  // computed outside the lock; rules may query other modules
    std::lock_guard<std::mutex> lock(impl_->mutex);
    return impl_->memo.emplace(d, std::move(c)).first->second;
  }
  std::size_t dim(int d) const { return at(d).dim(); }

 private:
  struct Impl {
    AmbientPtr amb;
    Rule rule;
    std::string name;
    std::mutex mutex;
    std::map<int, Component> memo;
  };
  std::shared_ptr<Impl> impl_;
};

namespace detail {

// Sparse column description of a homogeneous matrix: for column j, (i, k, coefficient).
struct SparseHom {
  int degree = 0;
  std::vector<std::vector<std::tuple<std::size_t, int, Elem>>> cols;
  explicit SparseHom(const HomMatrix& m) : degree(m.degree()), cols(m.cols()) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (int k = 0; k <= m.degree(); ++k)
          if (m.coeff(i, j, k)) cols[j].push_back({i, k, m.coeff(i, j, k)});
  }
};

// Matrix of the map on block `b` of degree d into the same-weight block of degree d + deg
// (rows: target coordinates, columns: source coordinates). Returns the target block index too.
inline std::pair<Matrix, std::optional<std::size_t>> block_map(const GradedAmbient& amb, const SparseHom& m, int d, std::size_t b) {
  const auto& L = amb.layout(d);
  const auto& T = amb.layout(d + m.degree);
  const auto tb = T.block_of(L.keys[b]);
  const std::size_t rows = tb ? T.coords[*tb].size() : 0;
  Matrix out(amb.field(), rows, L.coords[b].size());
  for (std::size_t o = 0; o < L.coords[b].size(); ++o) {
    const auto [j, kk] = L.coords[b][o];
    for (const auto& [i, k, c] : m.cols[j]) {
      const auto [blk, off] = T.where[T.flat(i, kk + k)];
      if (!tb || blk != *tb) throw std::logic_error("homogeneous matrix does not preserve weights");
      out(off, o) = amb.field().add(out(off, o), c);
    }
  }
  return {std::move(out), tb};
}

}  // namespace detail

/// Build the ambient for square homogeneous matrices acting on R^n.
inline AmbientPtr make_ambient(const std::vector<const HomMatrix*>& maps) {
  if (maps.empty()) throw std::invalid_argument("make_ambient: no maps");
  const std::size_t n = maps[0]->cols();
  return std::make_shared<GradedAmbient>(maps[0]->field(), n, find_weights(maps, n));
}

inline GradedSubmodule whole_module(const AmbientPtr& amb) {
  return GradedSubmodule(amb, [amb](int d) { return full_component(*amb, d); }, "R^n");
}

inline GradedSubmodule zero_module(const AmbientPtr& amb) {
  return GradedSubmodule(amb, [amb](int d) { return zero_component(*amb, d); }, "0");
}

/// Kernel of m: degree-d elements v of R^n with m v = 0.
inline GradedSubmodule kernel_of(const AmbientPtr& amb, const HomMatrix& m, std::string name = "ker") {
  auto sp = std::make_shared<detail::SparseHom>(m);
  return GradedSubmodule(
      amb,
      [amb, sp](int d) {
        Component c{d, {}};
        const auto& L = amb->layout(d);
        for (std::size_t b = 0; b < L.keys.size(); ++b) {
          auto [map, tb] = detail::block_map(*amb, *sp, d, b);
          const auto ns = rank_nullspace(map).nullspace;
          c.blocks.push_back(detail::row_basis(Matrix::from_rows(amb->field(), L.coords[b].size(), ns)));
        }
        return c;
      },
      std::move(name));
}

/// Image of m: degree-d part of m * (R^n)_{d - deg m}.
inline GradedSubmodule image_of(const AmbientPtr& amb, const HomMatrix& m, std::string name = "im") {
  auto sp = std::make_shared<detail::SparseHom>(m);
  return GradedSubmodule(
      amb,
      [amb, sp](int d) {
        Component c = zero_component(*amb, d);
        const int src = d - sp->degree;
        if (src < 0) return c;
        const auto& S = amb->layout(src);
        for (std::size_t b = 0; b < S.keys.size(); ++b) {
          auto [map, tb] = detail::block_map(*amb, *sp, src, b);
          if (!tb) continue;
          c.blocks[*tb] = detail::row_basis(map.transpose());
        }
        return c;
      },
      std::move(name));
}

inline GradedSubmodule intersection(const GradedSubmodule& a, const GradedSubmodule& b, std::string name = "") {
  return GradedSubmodule(
      a.ambient(), [a, b](int d) { return intersect(a.at(d), b.at(d)); },
      name.empty() ? a.name() + " ∩ " + b.name() : std::move(name));
}

/// (S : (s, t)) in each degree: v with s v and t v in S_{d+1}.
inline GradedSubmodule colon_irrelevant(const GradedSubmodule& S) {
  const AmbientPtr amb = S.ambient();
  return GradedSubmodule(
      amb,
      [amb, S](int d) {
        const auto& L = amb->layout(d);
        const auto& L1 = amb->layout(d + 1);
        const Component& next = S.at(d + 1);
        const Field& f = amb->field();
        Component c{d, {}};
        for (std::size_t b = 0; b < L.keys.size(); ++b) {
          const std::size_t m = L.coords[b].size();
          std::vector<Vec> residue_rows;  // rows: residue coordinates; columns: basis vectors of block b
          std::vector<Vec> cols(m);
          for (int which = 0; which < 2; ++which) {
            const auto tb = L1.block_of(L.keys[b] + (which == 0 ? amb->shift_s() : amb->shift_t()));
            const Matrix& basis = next.blocks[*tb];
            for (std::size_t o = 0; o < m; ++o) {
              const auto [i, k] = L.coords[b][o];
              Vec v(L1.coords[*tb].size(), 0);
              v[L1.where[L1.flat(i, k + which)].second] = 1;
              const Vec res = detail::reduce_mod(f, basis, std::move(v));
              cols[o].insert(cols[o].end(), res.begin(), res.end());
            }
          }
          const std::size_t h = cols.empty() ? 0 : cols[0].size();
          Matrix sys(f, h, m);
          for (std::size_t o = 0; o < m; ++o)
            for (std::size_t r = 0; r < h; ++r) sys(r, o) = cols[o][r];
          const auto ns = rank_nullspace(sys).nullspace;
          c.blocks.push_back(detail::row_basis(Matrix::from_rows(f, m, ns)));
        }
        return c;
      },
      "(" + S.name() + ":m)");
}

/// Raised when saturation does not stabilize within the iteration bound.
class SaturationUnstable : public std::runtime_error {
 public:
  explicit SaturationUnstable(int k) : std::runtime_error("saturation not stable within " + std::to_string(k) + " iterations") {}
};

/// Saturation with respect to (s, t): iterate S -> (S : (s,t)) until two
/// consecutive stages agree in all degrees 0..D, at most K iterations.
inline GradedSubmodule saturation(const GradedSubmodule& S, int D, int K) {
  GradedSubmodule cur = S;
  for (int it = 0; it < K; ++it) {
    GradedSubmodule next = colon_irrelevant(cur);
    bool stable = true;
    for (int d = 0; d <= D && stable; ++d) stable = next.at(d) == cur.at(d);
    if (stable) return cur;
    cur = next;
  }
  throw SaturationUnstable(K);
}

/// Minimal homogeneous generator of a graded module.
struct Generator {
  int degree = 0;
  std::vector<std::vector<Elem>> vector;  // per entry: coefficients of s^{d-k} t^k, k = 0..d
};

/// Materialized degrees 0..max_degree of a graded submodule.
struct GradedSubmoduleData {
  std::size_t ambient_rank = 0;
  int max_degree = -1;
  std::vector<Component> components;
  std::vector<Generator> generators;
  bool certified = false;         // generator list known to be complete
  std::size_t corank_target = 0;  // rank of the module over the fraction field when known

  std::size_t dim(int d) const { return components.at(static_cast<std::size_t>(d)).dim(); }
  std::vector<std::size_t> hilbert() const {
    std::vector<std::size_t> h;
    for (const auto& c : components) h.push_back(c.dim());
    return h;
  }
  std::vector<int> generator_degrees() const {
    std::vector<int> out;
    for (const auto& g : generators) out.push_back(g.degree);
    return out;
  }
};

/// New minimal generators in degree d: basis vectors of C_d not in R_1 * C_{d-1}.
inline std::vector<Generator> new_generators(const GradedAmbient& amb, const Component& prev, const Component& cur, bool has_prev) {
  std::vector<Generator> out;
  const int d = cur.degree;
  std::vector<Matrix> span;
  if (has_prev) {
    for (auto& m : times_linear_forms(amb, prev)) span.push_back(detail::row_basis(m));
  } else {
    for (const auto& b : cur.blocks) span.push_back(detail::empty_rows(amb.field(), b.cols()));
  }
  for (std::size_t b = 0; b < cur.blocks.size(); ++b) {
    Matrix acc = span[b];
    const Matrix& m = cur.blocks[b];
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Vec v(m.row_ptr(r), m.row_ptr(r) + m.cols());
      const Vec res = detail::reduce_mod(amb.field(), acc, v);
      if (std::all_of(res.begin(), res.end(), [](Elem x) { return x == 0; })) continue;
      out.push_back({d, to_polynomial_vector(amb, d, b, m.row_ptr(r))});
      acc = detail::row_basis(detail::stack(acc, Matrix::from_rows(amb.field(), m.cols(), {v})));
    }
  }
  return out;
}

/// Materialize degrees 0..D and extract minimal generators.
inline GradedSubmoduleData materialize(const GradedSubmodule& S, int D) {
  GradedSubmoduleData out;
  out.ambient_rank = S.ambient()->rank();
  for (int d = 0; d <= D; ++d) {
    out.components.push_back(S.at(d));
    auto g = new_generators(*S.ambient(), d ? out.components[static_cast<std::size_t>(d - 1)] : out.components[0],
                            out.components.back(), d > 0);
    out.generators.insert(out.generators.end(), g.begin(), g.end());
    out.max_degree = d;
  }
  return out;
}

/// Raised when a kernel's generators are not all found by the degree bound.
class KernelIncomplete : public std::runtime_error {
 public:
  KernelIncomplete(int D, GradedSubmoduleData partial)
      : std::runtime_error("kernel incomplete at degree bound " + std::to_string(D) + ": found " +
                           std::to_string(partial.generators.size()) + " of " + std::to_string(partial.corank_target) +
                           " generators; retry with a larger bound such as " + std::to_string(2 * D + 2)),
        partial_(std::move(partial)) {}
  const GradedSubmoduleData& partial() const { return partial_; }

 private:
  GradedSubmoduleData partial_;
};

/// Corank of m over the fraction field, by fraction-free elimination on the chart s = 1.
inline std::size_t generic_corank(const HomMatrix& m) { return m.cols() - generic_rank(m.dehomogenize()).rank; }

/// Kernel generators degree by degree; certified once as many minimal
/// generators as the corank have appeared (the kernel is free of that rank).
inline GradedSubmoduleData graded_kernel(const HomMatrix& m, int D, AmbientPtr amb = nullptr) {
  if (D < 0) throw std::invalid_argument("degree bound must be nonnegative");
  if (!amb) amb = make_ambient({&m});
  const GradedSubmodule K = kernel_of(amb, m);
  GradedSubmoduleData out;
  out.ambient_rank = m.cols();
  out.corank_target = generic_corank(m);
  for (int d = 0; d <= D; ++d) {
    if (out.generators.size() == out.corank_target) break;
    out.components.push_back(K.at(d));
    auto g = new_generators(*amb, d ? out.components[static_cast<std::size_t>(d - 1)] : out.components[0],
                            out.components.back(), d > 0);
    out.generators.insert(out.generators.end(), g.begin(), g.end());
    out.max_degree = d;
  }
  out.certified = out.generators.size() == out.corank_target;
  if (!out.certified) throw KernelIncomplete(D, std::move(out));
  return out;
}

inline GradedSubmoduleData graded_image(const HomMatrix& m, int D, AmbientPtr amb = nullptr) {
  if (D < 0) throw std::invalid_argument("degree bound must be nonnegative");
  if (!amb) amb = make_ambient({&m});
  GradedSubmoduleData out = materialize(image_of(amb, m), D);
  out.certified = D >= m.degree();  // all generators live in degree deg m
  out.corank_target = generic_rank(m.dehomogenize()).rank;
  return out;
}

/// dim (R^n)_d - dim Im_d for d = 0..D.
inline std::vector<std::size_t> graded_coker_hilbert(const HomMatrix& m, int D, AmbientPtr amb = nullptr) {
  const auto im = graded_image(m, D, std::move(amb));
  std::vector<std::size_t> h;
  for (int d = 0; d <= D; ++d) h.push_back(m.rows() * static_cast<std::size_t>(d + 1) - im.dim(d));
  return h;
}

/// Check that a generator is annihilated by m.
inline bool annihilates(const HomMatrix& m, const Generator& g) {
  const Field& f = m.field();
  const int dm = m.degree();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<Elem> acc(static_cast<std::size_t>(g.degree + dm + 1), 0);
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (int a = 0; a <= dm; ++a) {
        const Elem x = m.coeff(i, j, a);
        if (!x) continue;
        for (int b = 0; b <= g.degree; ++b) {
          const Elem y = g.vector[j][static_cast<std::size_t>(b)];
          if (y) acc[static_cast<std::size_t>(a + b)] = f.add(acc[static_cast<std::size_t>(a + b)], f.mul(x, y));
        }
      }
    if (std::any_of(acc.begin(), acc.end(), [](Elem x) { return x != 0; })) return false;
  }
  return true;
}

/// Multiset of twists {a_i} of a sum of line bundles on P^1, kept in descending order.
class SplittingType {
 public:
  SplittingType() = default;
  explicit SplittingType(std::vector<int> twists) : t_(std::move(twists)) { std::sort(t_.begin(), t_.end(), std::greater<>()); }
  const std::vector<int>& twists() const { return t_; }
  std::size_t rank() const { return t_.size(); }
  int degree() const { return std::accumulate(t_.begin(), t_.end(), 0); }
  bool operator==(const SplittingType& o) const { return t_ == o.t_; }
  bool operator!=(const SplittingType& o) const { return t_ != o.t_; }
  SplittingType twisted(int by) const {
    auto v = t_;
    for (auto& x : v) x += by;
    return SplittingType(v);
  }
  /// "O(-2)^2 + O(-6)", or "0" for the zero sheaf.
  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < t_.size();) {
      std::size_t j = i;
      while (j < t_.size() && t_[j] == t_[i]) ++j;
      if (!out.empty()) out += " + ";
      out += "O(" + std::to_string(t_[i]) + ")";
      if (j - i > 1) out += "^" + std::to_string(j - i);
      i = j;
    }
    return out;
  }

 private:
  std::vector<int> t_;
};

/// Twists -m_i from the degrees of a certified free generating set.
inline SplittingType splitting_from_generators(const GradedSubmoduleData& s) {
  if (!s.certified) throw std::invalid_argument("splitting_type: generator list not certified");
  std::vector<int> t;
  for (const auto& g : s.generators) t.push_back(-g.degree);
  return SplittingType(t);
}

/// Splitting read from a Hilbert function h(0..D) of a rank-r bundle's sections.
struct HilbertSplitting {
  std::size_t rank = 0;
  long degree_sum = 0;             // sum of a_i from the linear tail h(d) = r(d+1) + sum a_i
  bool tail_stable = false;        // linear form holds across the window
  bool window_valid = false;       // individual twists reconstructed and consistent on 0..D
  std::optional<SplittingType> splitting;
};

inline HilbertSplitting splitting_from_hilbert(const std::vector<long>& h, int window = 3) {
  HilbertSplitting out;
  const int D = static_cast<int>(h.size()) - 1;
  if (D < 1) return out;
  window = std::min(window, D);
  const long r = h[static_cast<std::size_t>(D)] - h[static_cast<std::size_t>(D - 1)];
  out.rank = r < 0 ? 0 : static_cast<std::size_t>(r);
  out.degree_sum = h[static_cast<std::size_t>(D)] - r * (D + 1);
  out.tail_stable = r >= 0;
  for (int d = D - window + 1; d <= D; ++d)
    if (h[static_cast<std::size_t>(d)] != r * (d + 1) + out.degree_sum) out.tail_stable = false;
  if (!out.tail_stable) return out;
  // For d >= 1, Delta h(d) = #{i : a_i >= -d}, so twists <= -2 are read off
  // directly. The c twists >= -1 are only known through c and h(0) = sum (a_i + 1),
  // which fixes them when c <= 1 or h(0) <= 1.
  std::vector<int> twists;
  long prev = h[1] - h[0];
  const long c = prev, s0 = h[0];
  bool ok = c >= 0 && c <= r;
  for (int d = 2; d <= D && ok; ++d) {
    const long dh = h[static_cast<std::size_t>(d)] - h[static_cast<std::size_t>(d - 1)];
    if (dh < prev) ok = false;
    for (long k = prev; k < dh; ++k) twists.push_back(-d);
    prev = std::max(prev, dh);
  }
  if (ok && prev == r) {
    if (c == 1) {
      twists.push_back(static_cast<int>(s0 - 1));
    } else if (c > 1 && s0 <= 1) {
      for (long k = 0; k < c; ++k) twists.push_back(k < s0 ? 0 : -1);
    } else if (c > 1) {
      ok = false;
    }
    if (ok) {
      SplittingType cand(twists);
      for (int d = 0; d <= D && ok; ++d) {
        long expect = 0;
        for (int a : cand.twists()) expect += std::max(0, d + a + 1);
        if (expect != h[static_cast<std::size_t>(d)]) ok = false;
      }
      if (ok) {
        out.window_valid = true;
        out.splitting = cand;
      }
    }
  }
  if (!out.splitting && (out.rank == 1 || (out.rank == 0 && out.degree_sum == 0))) {
    // rank 0 or 1: the tail alone determines the sheaf
    out.splitting = out.rank == 0 ? SplittingType() : SplittingType({static_cast<int>(out.degree_sum)});
  }
  return out;
}

}  // namespace sl2sheaf
