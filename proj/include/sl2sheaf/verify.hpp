#pragma once

/**
 * @file verify.hpp
 * @brief The verification suite: every check is an independent case, run on a
 * worker pool and merged back in generation order.
 */

#include <atomic>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "sl2sheaf/report.hpp"

namespace sl2sheaf {

struct VerifyConfig {
  std::vector<std::uint32_t> primes{3, 5, 7};
  long lambda_max = -1;          // -1: 3p for each p
  std::vector<int> criteria;     // empty: all
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  unsigned ext_max = 8;
  int max_degree = -1;           // -1: 2 lambda + 2p per module
  std::uint32_t fi_prime_max = 5;  // criterion 8 is restricted to p <= this

  long lambda_limit(std::uint32_t p) const { return lambda_max < 0 ? 3L * p : lambda_max; }
  bool wants(int c) const { return criteria.empty() || std::find(criteria.begin(), criteria.end(), c) != criteria.end(); }
};

struct CaseResult {
  int criterion = 0;
  std::string key;
  bool pass = false;
  std::string detail;
};

struct VerifyCase {
  int criterion = 0;
  std::string key;
  std::function<std::pair<bool, std::string>()> run;
};

inline const std::map<int, std::string>& criterion_names() {
  static const std::map<int, std::string> names{
      {1, "Jordan type tables"},
      {2, "V(2) operator, global operator and type"},
      {3, "named matrices equal build_theta"},
      {4, "kernel splitting types"},
      {5, "pointwise Jordan types of B'"},
      {6, "B(lambda) powers and F_i of small Weyl modules"},
      {7, "Heller shifts of Weyl modules"},
      {8, "F_i of Weyl modules and the Omega twist relation"},
      {9, "property suites"},
  };
  return names;
}

struct CriterionSummary {
  int id = 0;
  std::string name;
  std::size_t passed = 0, failed = 0;
  bool ok() const { return failed == 0 && passed > 0; }
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<CaseResult> cases;

  std::vector<CriterionSummary> summaries() const {
    std::map<int, CriterionSummary> by;
    for (const auto& c : cases) {
      auto& s = by[c.criterion];
      s.id = c.criterion;
      s.name = criterion_names().at(c.criterion);
      (c.pass ? s.passed : s.failed)++;
    }
    std::vector<CriterionSummary> out;
    for (auto& [id, s] : by) out.push_back(s);
    return out;
  }
  bool ok() const {
    return !cases.empty() && std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; });
  }
};

namespace detail {

inline std::string primes_key(std::uint32_t p) { return "p=" + std::to_string(p); }

inline Partition blocks(std::uint32_t p, std::vector<std::pair<int, int>> b) { return Partition::from_blocks(b, static_cast<int>(p)); }

/// [p]^r [a+1]
inline Partition weyl_type(std::uint32_t p, long lambda) {
  const auto [r, a] = split_weight(lambda, p);
  return blocks(p, {{static_cast<int>(p), static_cast<int>(r)}, {static_cast<int>(a + 1), 1}});
}

/// [p]^{r-1} [p-a-1] [a+1]
inline Partition exceptional_type(std::uint32_t p, long lambda) {
  const auto [r, a] = split_weight(lambda, p);
  return blocks(p, {{static_cast<int>(p), static_cast<int>(r - 1)}, {static_cast<int>(p - a - 1), 1}, {static_cast<int>(a + 1), 1}});
}

inline bool weyl_indecomposable_range(std::uint32_t p, long lambda) { return lambda < static_cast<long>(p) || (lambda + 1) % p != 0; }
inline bool phi_range(std::uint32_t p, long lambda) { return lambda >= static_cast<long>(p) && (lambda + 1) % p != 0; }

/// Points [1:0..p-1] and [0:1].
inline std::vector<PointP1> rational_points(const Field& k) {
  std::vector<PointP1> pts;
  for (Elem e = 0; e < k.characteristic(); ++e) pts.push_back(PointP1::affine(k, e));
  pts.push_back(PointP1::infinity(k));
  return pts;
}

inline std::string check_list(const std::vector<std::pair<std::string, bool>>& items) {
  std::string bad;
  for (const auto& [name, ok] : items)
    if (!ok) bad += (bad.empty() ? "" : ", ") + name;
  return bad.empty() ? "ok" : "failed: " + bad;
}

inline HomMatrix hom_power(const HomMatrix& m, int j) {
  HomMatrix acc = m;
  for (int step = 1; step < j; ++step) acc = acc.then(m.shifted(step * m.degree()));
  return acc;
}

// ---- criterion 1 ----------------------------------------------------------

inline std::pair<bool, std::string> constant_type_case(const Sl2Module& M, const Partition& expect, unsigned ext_max) {
  ProfileOptions opt;
  opt.ext_max = ext_max;
  const auto prof = jordan_profile(M, opt);
  const bool ok = prof.constant() && prof.generic == expect;
  return {ok, profile_summary(prof) + " (expected constant " + expect.to_string() + ")"};
}

inline std::pair<bool, std::string> phi_type_case(long lambda, const PointP1& xi, unsigned ext_max) {
  const std::uint32_t p = xi.field().characteristic();
  ProfileOptions opt;
  opt.ext_max = ext_max;
  const Sl2Module M = phi(lambda, xi);
  const auto prof = jordan_profile(M, opt);
  const auto [r, a] = split_weight(lambda, p);
  const Partition gen = blocks(p, {{static_cast<int>(p), static_cast<int>(r)}});
  const Partition ex = exceptional_type(p, lambda);
  const bool ok = prof.generic == gen && prof.exceptional.size() == 1 && same_point(prof.exceptional[0].first, xi) &&
                  prof.exceptional[0].second == ex;
  return {ok, profile_summary(prof) + " (expected generic " + gen.to_string() + "; exceptional " + xi.to_string() + " -> " +
                  ex.to_string() + ")"};
}

inline void add_c1(std::vector<VerifyCase>& out, const VerifyConfig& cfg, std::uint32_t p) {
  const Field k(p);
  const Field k2(p, 2);
  const unsigned em = cfg.ext_max;
  for (long l = 0; l <= cfg.lambda_limit(p); ++l) {
    const std::string at = primes_key(p) + " lambda=" + std::to_string(l);
    out.push_back({1, at + " V", [=] { return constant_type_case(weyl(k, l), weyl_type(p, l), em); }});
    out.push_back({1, at + " V*", [=] { return constant_type_case(dual_weyl(k, l), weyl_type(p, l), em); }});
    if (l <= static_cast<long>(p) - 2)
      out.push_back({1, at + " Q", [=] { return constant_type_case(projective(k, l), blocks(p, {{static_cast<int>(p), 2}}), em); }});
    if (phi_range(p, l)) {
      for (const auto& xi : rational_points(k))
        out.push_back({1, at + " Phi" + xi.to_string(), [=] { return phi_type_case(l, xi, em); }});
      const PointP1 xi2 = PointP1::affine(k2, k2.generator());
      out.push_back({1, at + " Phi" + xi2.to_string() + " over F_" + std::to_string(p) + "^2",
                     [=] { return phi_type_case(l, xi2, em); }});
    }
  }
}

// ---- criterion 2 ----------------------------------------------------------

inline std::pair<bool, std::string> v2_case() {
  const Field k(5);
  const Sl2Module V = weyl(k, 2);
  const Matrix E = Matrix::from_ints(k, {{0, 2, 0}, {0, 0, 1}, {0, 0, 0}});
  const Matrix F = Matrix::from_ints(k, {{0, 0, 0}, {1, 0, 0}, {0, 2, 0}});
  const Matrix H = Matrix::from_ints(k, {{2, 0, 0}, {0, 0, 0}, {0, 0, -2}});

  // [[2st, 2s^2, 0], [-t^2, 0, s^2], [0, -2t^2, -2st]]; coefficient k multiplies s^{2-k} t^k
  HomMatrix theta(k, 3, 3, 0, 2);
  theta.set_coeff(0, 0, 1, k.from_int(2));
  theta.set_coeff(0, 1, 0, k.from_int(2));
  theta.set_coeff(1, 0, 2, k.from_int(-1));
  theta.set_coeff(1, 2, 0, k.from_int(1));
  theta.set_coeff(2, 1, 2, k.from_int(-2));
  theta.set_coeff(2, 2, 1, k.from_int(-2));

  // A = x e + y f + z h at y = 1, x = -z^2, and its square
  bool chart = true;
  for (Elem z = 0; z < 5; ++z) {
    const long zi = z;
    const Matrix A = Matrix::from_ints(k, {{2 * zi, -2 * zi * zi, 0}, {1, 0, -zi * zi}, {0, 2, -2 * zi}});
    const Matrix A2 = Matrix::from_ints(k, {{2 * zi * zi, -4 * zi * zi * zi, 2 * zi * zi * zi * zi},
                                            {2 * zi, -4 * zi * zi, 2 * zi * zi * zi},
                                            {2, -4 * zi, 2 * zi * zi}});
    const Elem x = k.neg(k.mul(z, z));
    const Matrix fromV = V.e().scaled(x) + V.f() + V.h().scaled(z);
    chart = chart && fromV == A && A * A == A2 && rank(A) == 2 && rank(A2) == 1 &&
            jordan_type_of(A, 5) == Partition({3});
  }
  // y = 0 forces z = 0; scale to x = 1
  const bool at_y0 = jordan_type_of(V.e(), 5) == Partition({3});
  const auto prof = jordan_profile(V);
  const bool constant3 = prof.constant() && prof.generic == Partition({3});
  const std::string verdict = check_list({{"E", V.e() == E},
                                          {"F", V.f() == F},
                                          {"H", V.h() == H},
                                          {"Theta", build_theta(V) == theta},
                                          {"rank A = 2, rank A^2 = 1 on y = 1", chart},
                                          {"type at y = 0", at_y0},
                                          {"constant [3]", constant3}});
  return {verdict == "ok", verdict + "; " + profile_summary(prof)};
}

// ---- criterion 3 ----------------------------------------------------------

inline std::pair<bool, std::string> named_case(const HomMatrix& theta, const HomMatrix& named, const std::string& what) {
  const bool ok = theta == named;
  return {ok, what + (ok ? " equal" : " differ")};
}

inline void add_c3(std::vector<VerifyCase>& out, const VerifyConfig& cfg, std::uint32_t p) {
  const Field k(p);
  for (long l = 0; l <= cfg.lambda_limit(p); ++l) {
    const std::string at = primes_key(p) + " lambda=" + std::to_string(l);
    out.push_back({3, at + " V<->B", [=] { return named_case(build_theta(weyl(k, l)), named_matrix(NamedMatrix::B, k, l), "B"); }});
    out.push_back({3, at + " V*<->C", [=] { return named_case(build_theta(dual_weyl(k, l)), named_matrix(NamedMatrix::C, k, l), "C"); }});
    if (l <= static_cast<long>(p) - 2)
      out.push_back({3, at + " Q<->D", [=] { return named_case(build_theta(projective(k, l)), named_matrix(NamedMatrix::D, k, l), "D"); }});
    if (phi_range(p, l)) {
      out.push_back({3, at + " Phi[0:1]<->B'", [=] {
                       return named_case(build_theta(phi(l, PointP1::infinity(k))), named_matrix(NamedMatrix::BPrime, k, l), "B'");
                     }});
      for (Elem e = 0; e < p; ++e)
        out.push_back({3, at + " Phi[1:" + std::to_string(e) + "]<->M_eps", [=] {
                         return named_case(build_theta(phi(l, PointP1::affine(k, e))), named_matrix(NamedMatrix::MEps, k, l, e), "M_eps");
                       }});
    }
  }
}

// ---- criterion 4 ----------------------------------------------------------

inline std::pair<bool, std::string> kernel_case(const Sl2Module& M, const SplittingType& expect, int D) {
  if (D < 0) D = default_degree_bound(M);
  const HomMatrix theta = build_theta(M);
  const auto data = graded_kernel(theta, D);
  bool annihilated = true;
  for (const auto& g : data.generators) annihilated = annihilated && annihilates(theta, g);
  const SplittingType got = splitting_from_generators(data);
  const bool ok = data.certified && annihilated && got == expect;
  return {ok, "Ker = " + got.to_string() + " (expected " + expect.to_string() + ")" + (annihilated ? "" : ", generator not in kernel")};
}

inline void add_c4(std::vector<VerifyCase>& out, const VerifyConfig& cfg, std::uint32_t p) {
  const Field k(p);
  const int P = static_cast<int>(p);
  const int D = cfg.max_degree;
  for (long l = 0; l <= cfg.lambda_limit(p); ++l) {
    const auto [r, a] = split_weight(l, p);
    const int R = static_cast<int>(r), A = static_cast<int>(a), L = static_cast<int>(l);
    const std::string at = primes_key(p) + " lambda=" + std::to_string(l) + (l <= 2L * p - 2 ? " [FP]" : "");
    auto repeat = [](int twist, int n) { return std::vector<int>(static_cast<std::size_t>(n), twist); };
    if (weyl_indecomposable_range(p, l)) {
      auto t = repeat(A + 2 - P, R);
      t.push_back(-L);
      out.push_back({4, at + " V", [=] { return kernel_case(weyl(k, l), SplittingType(t), D); }});
    }
    out.push_back({4, at + " V*", [=] { return kernel_case(dual_weyl(k, l), SplittingType(repeat(-A, R + 1)), D); }});
    if (l <= static_cast<long>(p) - 2)
      out.push_back({4, at + " Q", [=] { return kernel_case(projective(k, l), SplittingType({-L, L + 2 - 2 * P}), D); }});
    if (phi_range(p, l))
      for (const auto& xi : rational_points(k))
        out.push_back({4, at + " Phi" + xi.to_string(), [=] { return kernel_case(phi(l, xi), SplittingType(repeat(A + 2 - P, R)), D); }});
  }
}

// ---- criterion 5 ----------------------------------------------------------

inline std::pair<bool, std::string> bprime_case(const Field& k, long lambda) {
  const std::uint32_t p = k.characteristic();
  const auto [r, a] = split_weight(lambda, p);
  const HomMatrix B = named_matrix(NamedMatrix::BPrime, k, lambda);
  const int n = static_cast<int>(r * p);
  std::vector<std::pair<std::string, bool>> items;
  const Partition zero = jordan_type_of(B.evaluate(0, 0), p);
  items.push_back({"(0,0)", zero == blocks(p, {{1, n}})});
  const Partition inf = jordan_type_of(B.evaluate(0, 1), p);
  items.push_back({"(0,1)", inf == exceptional_type(p, lambda)});
  const Partition full = blocks(p, {{static_cast<int>(p), static_cast<int>(r)}});
  for (Elem c = 0; c < p; ++c) items.push_back({"(1," + std::to_string(c) + ")", jordan_type_of(B.evaluate(1, c), p) == full});
  const std::string v = check_list(items);
  return {v == "ok", v + "; (0,0) -> " + zero.to_string() + ", (0,1) -> " + inf.to_string()};
}

// ---- criterion 6 ----------------------------------------------------------

inline std::pair<bool, std::string> small_weyl_case(const Field& k, long lambda, int D) {
  const std::uint32_t p = k.characteristic();
  const HomMatrix B = named_matrix(NamedMatrix::B, k, lambda);
  const Sl2Module V = weyl(k, lambda);
  std::vector<std::pair<std::string, bool>> items;
  items.push_back({"B^(lambda+1) = 0", hom_power(B, static_cast<int>(lambda) + 1).is_zero()});
  items.push_back({"Theta^(lambda+1) = 0", theta_power(V, static_cast<int>(lambda) + 1).is_zero()});
  bool support = true;
  if (lambda >= 1) {
    const HomMatrix Bl = hom_power(B, static_cast<int>(lambda));
    for (std::size_t i = 0; i < Bl.rows(); ++i)
      for (std::size_t j = 0; j < Bl.cols(); ++j)
        for (int t = 0; t <= Bl.degree(); ++t)
          if (Bl.coeff(i, j, t) != 0 && t != static_cast<int>(lambda) - static_cast<int>(j) + static_cast<int>(i)) support = false;
  }
  items.push_back({"support of B^lambda", support});
  if (D < 0) D = default_degree_bound(V);
  const HomMatrix theta = build_theta(V);
  const GradedSubmodule ker = kernel_of(make_ambient({&theta}), theta);
  std::string fi_text;
  for (int i = 1; i <= static_cast<int>(p); ++i) {
    const FiData fd = fi_data(V, i, D);
    if (i == lambda + 1) {
      bool same = true;
      for (int d = 0; d <= D; ++d) same = same && fd.hilbert[static_cast<std::size_t>(d)] == static_cast<long>(ker.dim(d));
      items.push_back({"F_" + std::to_string(i) + " Hilbert data = Ker", same});
      items.push_back({"F_" + std::to_string(i) + " = O(-lambda)",
                       fd.analysis.splitting && *fd.analysis.splitting == SplittingType({-static_cast<int>(lambda)})});
    } else {
      const bool zero = std::all_of(fd.hilbert.begin(), fd.hilbert.end(), [](long x) { return x == 0; });
      items.push_back({"F_" + std::to_string(i) + " = 0", zero});
    }
    fi_text += " F_" + std::to_string(i) + "=" + (fd.analysis.splitting ? fd.analysis.splitting->to_string() : "?");
  }
  const std::string v = check_list(items);
  return {v == "ok", v + ";" + fi_text};
}

// ---- criterion 7 ----------------------------------------------------------

inline std::pair<bool, std::string> heller_case(const Field& k, long lambda, std::uint64_t seed) {
  const long p = k.characteristic();
  const auto [r, a] = split_weight(lambda, p);
  if (lambda == p - 1) {
    const HellerShift h = heller_shift(k, lambda, seed);
    return {h.projective && is_projective(weyl(k, lambda)), "Omega = " + h.label() + " (projective)"};
  }
  const CoverData c = projective_cover(k, lambda);
  const CoverCheck chk = check_cover(c);
  const HellerShift h = heller_shift(k, lambda, seed);
  const long expect = (r + 2) * p - a - 2;
  const bool iso = h.isomorphism && is_homomorphism(*h.isomorphism, *h.module, weyl(k, expect)) && rank(*h.isomorphism) == h.module->dim();
  const std::string v = check_list({{"cover homomorphism", chk.homomorphism},
                                    {"cover surjective", chk.surjective},
                                    {"dim ker", chk.kernel_dimension && static_cast<long>(h.module->dim()) == 2 * p * (r + 1) - (lambda + 1) &&
                                                    static_cast<long>(h.module->dim()) == expect + 1},
                                    {"kernel basis", chk.kernel_basis_in_kernel && chk.kernel_basis_independent},
                                    {"coefficient relations", chk.coefficient_relations},
                                    {"shift", h.lambda_shift == expect},
                                    {"isomorphism", iso}});
  return {v == "ok", v + "; Omega V(" + std::to_string(lambda) + ") = " + h.label() + ", dim " + std::to_string(h.module->dim()) +
                         (h.actions_equal_weyl ? ", actions equal" : "")};
}

// ---- criterion 8 ----------------------------------------------------------

inline std::pair<bool, std::string> fi_case(const Field& k, long lambda, int i, int D, std::uint64_t seed) {
  const long p = k.characteristic();
  const Sl2Module V = weyl(k, lambda);
  const FiData fd = fi_data(V, i, D);
  const bool hit = (lambda + 1 - i) % p == 0;
  const SplittingType expect = hit ? SplittingType({-static_cast<int>(lambda)}) : SplittingType();
  std::vector<std::pair<std::string, bool>> items;
  items.push_back({"F_i", fd.analysis.splitting && *fd.analysis.splitting == expect});
  std::string text = "F_" + std::to_string(i) + " = " + (fd.analysis.splitting ? fd.analysis.splitting->to_string() : "?") +
                     " (expected " + expect.to_string() + ")";
  if (lambda != p - 1) {
    const HellerShift h = heller_shift(k, lambda, seed);
    const FiData fo = fi_data(*h.module, static_cast<int>(p) - i, D < 0 ? -1 : D);
    const long shift = static_cast<long>(fo.rank()) * (2 * p - 2 * i);
    const bool rel = fd.rank() == fo.rank() && fd.analysis.degree_sum == fo.analysis.degree_sum + shift;
    items.push_back({"Omega twist", rel});
    text += "; F_" + std::to_string(p - i) + "(" + h.label() + ") rank " + std::to_string(fo.rank()) + " degree " +
            std::to_string(fo.analysis.degree_sum);
  }
  const std::string v = check_list(items);
  return {v == "ok", v + "; " + text};
}

// ---- criterion 9 ----------------------------------------------------------

inline Partition random_partition(int n, int bound, std::mt19937_64& rng) {
  std::vector<int> parts;
  while (n > 0) {
    const int m = std::min(n, bound);
    const int x = std::uniform_int_distribution<int>(1, m)(rng);
    parts.push_back(x);
    n -= x;
  }
  return Partition::from_unsorted(parts);
}

/// Nilpotent Jordan matrix with the given blocks (ones on the superdiagonal).
inline Matrix jordan_matrix(const Field& k, const Partition& part) {
  Matrix J(k, static_cast<std::size_t>(part.size()), static_cast<std::size_t>(part.size()));
  std::size_t at = 0;
  for (int b : part.parts()) {
    for (int i = 0; i + 1 < b; ++i) J(at + static_cast<std::size_t>(i), at + static_cast<std::size_t>(i) + 1) = 1;
    at += static_cast<std::size_t>(b);
  }
  return J;
}

inline Matrix random_invertible(const Field& k, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix P = random_matrix(k, n, n, rng);
    if (rank(P) == n) return P;
  }
}

/// Number of vectors of F_p^n killed by A, by enumeration.
inline std::uint64_t count_kernel(const Matrix& A) {
  const Field& k = A.field();
  const std::size_t n = A.cols();
  const std::uint32_t p = k.characteristic();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  std::uint64_t count = 0;
  Vec v(n, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= p) v[i] = static_cast<Elem>(c % p);
    const Vec w = A.apply(v);
    if (std::all_of(w.begin(), w.end(), [](Elem x) { return x == 0; })) ++count;
  }
  return count;
}

inline int log_p(std::uint64_t x, std::uint32_t p) {
  int e = 0;
  while (x > 1) x /= p, ++e;
  return e;
}

inline std::pair<bool, std::string> conjugation_property(std::uint32_t p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Partition x = random_partition(std::uniform_int_distribution<int>(0, 30)(rng), static_cast<int>(p), rng);
    const Partition c = x.conjugate();
    if (c.conjugate() != x || c.size() != x.size()) ++bad;
  }
  return {bad == 0, std::to_string(200 - bad) + "/200 partitions"};
}

inline std::pair<bool, std::string> brute_force_property(std::uint32_t p, std::uint64_t seed) {
  const Field k(p);
  std::mt19937_64 rng(seed);
  int max_n = 0;
  for (std::uint64_t q = 1; max_n < 8 && q * p <= 6561; q *= p) ++max_n;
  int trials = 0, bad = 0;
  for (int n = 1; n <= max_n; ++n)
    for (int rep = 0; rep < 4; ++rep, ++trials) {
      const Partition want = random_partition(n, static_cast<int>(p), rng);
      const Matrix P = random_invertible(k, static_cast<std::size_t>(n), rng);
      const Matrix A = P * jordan_matrix(k, want) * inverse(P);
      // #parts >= j = dim ker A^j - dim ker A^{j-1}
      std::vector<int> kers{0};
      Matrix pw = Matrix::identity(k, static_cast<std::size_t>(n));
      for (int j = 1; j <= n; ++j) {
        pw = pw * A;
        kers.push_back(log_p(count_kernel(pw), p));
      }
      std::vector<int> cols;
      for (int j = 1; j <= n; ++j)
        if (kers[j] - kers[j - 1] > 0) cols.push_back(kers[j] - kers[j - 1]);
      const Partition brute = Partition(cols).conjugate();
      const Partition got = jordan_type_of(A, p);
      bool ranks_ok = true;
      for (int j = 1; j <= static_cast<int>(p); ++j) ranks_ok = ranks_ok && got.j_rank(j) == static_cast<int>(rank(A.pow(static_cast<std::uint64_t>(j))));
      if (brute != want || got != want || !ranks_ok) ++bad;
    }
  return {bad == 0, std::to_string(trials - bad) + "/" + std::to_string(trials) + " matrices, dim <= " + std::to_string(max_n)};
}

inline std::pair<bool, std::string> scaling_property(std::uint32_t p, std::uint64_t seed) {
  const Field k(p), L(p, 2);
  const Embedding emb(k, L);
  std::mt19937_64 rng(seed);
  int bad = 0, trials = 0;
  for (int n = 1; n <= 8; ++n, ++trials) {
    const Partition want = random_partition(n, static_cast<int>(p), rng);
    const Matrix P = random_invertible(k, static_cast<std::size_t>(n), rng);
    const Matrix A = (P * jordan_matrix(k, want) * inverse(P)).extend(emb);
    const Elem c = static_cast<Elem>(std::uniform_int_distribution<std::uint64_t>(1, L.order() - 1)(rng));
    if (jordan_type_of(A.scaled(c), p) != jordan_type_of(A, p)) ++bad;
  }
  for (long l = 0; l <= 2L * p; ++l, ++trials) {
    const Sl2Module V = weyl(k, l);
    for (Elem e = 0; e < p; ++e) {
      const Matrix A = operator_at(V, PointP1::affine(k, e));
      for (Elem c = 1; c < p; ++c)
        if (jordan_type_of(A.scaled(c), p) != jordan_type_of(A, p)) ++bad;
    }
  }
  return {bad == 0, std::to_string(trials) + " operators, " + std::to_string(bad) + " mismatches"};
}

inline std::vector<Sl2Module> property_modules(const Field& k) {
  const long p = k.characteristic();
  return {weyl(k, 2), weyl(k, p + 1), dual_weyl(k, p), projective(k, 1), phi(p + 1, PointP1::affine(k, 1))};
}

inline std::pair<bool, std::string> saturation_property(const Field& k) {
  int bad = 0;
  std::string text;
  for (const auto& M : property_modules(k)) {
    const int D = std::min(default_degree_bound(M), 16);
    const HomMatrix theta = build_theta(M);
    const HomMatrix theta2 = theta_power(M, 2);
    const AmbientPtr amb = make_ambient({&theta});
    const GradedSubmodule S = intersection(kernel_of(amb, theta), image_of(amb, theta2));
    const GradedSubmodule sat = saturation(S, D, D);
    const GradedSubmodule sat2 = saturation(sat, D, D);
    for (int d = 0; d <= D; ++d)
      if (!(sat2.at(d) == sat.at(d)) || !contains(sat.at(d), S.at(d))) {
        ++bad;
        text += " " + M.label() + "@" + std::to_string(d);
        break;
      }
  }
  return {bad == 0, bad ? "not idempotent:" + text : "idempotent and inflationary on " + std::to_string(property_modules(k).size()) + " modules"};
}

/// Dense matrix of the degree-d piece R_d^n -> R_{d+deg}^m, columns (j, k) for s^{d-k} t^k.
inline Matrix degree_piece(const HomMatrix& m, int d) {
  const int e = m.degree();
  const std::size_t cw = static_cast<std::size_t>(d + 1), rw = static_cast<std::size_t>(d + e + 1);
  Matrix out(m.field(), m.rows() * rw, m.cols() * cw);
  const Field& f = m.field();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (int c = 0; c <= e; ++c) {
        const Elem x = m.coeff(i, j, c);
        if (!x) continue;
        for (int kk = 0; kk <= d; ++kk) {
          Elem& y = out(i * rw + static_cast<std::size_t>(kk + c), j * cw + static_cast<std::size_t>(kk));
          y = f.add(y, x);
        }
      }
  return out;
}

inline std::pair<bool, std::string> rank_nullity_property(const Field& k) {
  int bad = 0, checked = 0;
  for (const auto& M : property_modules(k)) {
    const int D = std::min(default_degree_bound(M), 16);
    for (int j = 1; j <= 2; ++j) {
      const HomMatrix th = theta_power(M, j);
      const GradedSubmodule ker = kernel_of(make_ambient({&th}), th);
      for (int d = 0; d <= D; ++d, ++checked)
        if (ker.dim(d) != M.dim() * static_cast<std::size_t>(d + 1) - rank(degree_piece(th, d))) ++bad;
    }
  }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " degrees"};
}

}  // namespace detail

inline VerifyReport run_verification(const VerifyConfig& cfg);

namespace detail {

inline std::string report_fingerprint(const VerifyReport& rep) {
  std::ostringstream os;
  for (const auto& c : rep.cases) os << c.criterion << '|' << c.key << '|' << c.pass << '|' << c.detail << '\n';
  return os.str();
}

inline std::pair<bool, std::string> determinism_property(std::uint32_t p, std::uint64_t seed) {
  VerifyConfig sub;
  sub.primes = {p};
  sub.lambda_max = std::min<long>(2L * p, 10);
  sub.criteria = {1, 3, 5};
  sub.seed = seed;
  sub.jobs = 1;
  const std::string a = report_fingerprint(run_verification(sub));
  sub.jobs = 4;
  const std::string b = report_fingerprint(run_verification(sub));
  const std::string c = report_fingerprint(run_verification(sub));
  return {a == b && b == c && !a.empty(), a == b && b == c ? "identical reports for 1 and 4 workers" : "reports differ"};
}

inline void add_c9(std::vector<VerifyCase>& out, const VerifyConfig& cfg, std::uint32_t p) {
  const Field k(p);
  const std::uint64_t seed = cfg.seed;
  const std::string at = primes_key(p);
  out.push_back({9, at + " conjugation involution", [=] { return conjugation_property(p, seed); }});
  out.push_back({9, at + " rank sequence vs enumeration", [=] { return brute_force_property(p, seed); }});
  out.push_back({9, at + " scaling invariance", [=] { return scaling_property(p, seed); }});
  out.push_back({9, at + " saturation idempotence", [=] { return saturation_property(k); }});
  out.push_back({9, at + " degreewise rank-nullity", [=] { return rank_nullity_property(k); }});
  out.push_back({9, at + " determinism", [=] { return determinism_property(p, seed); }});
}

}  // namespace detail

/// All cases for a configuration, in a fixed order.
inline std::vector<VerifyCase> build_cases(const VerifyConfig& cfg) {
  for (auto p : cfg.primes)
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("verify: p must be an odd prime, got " + std::to_string(p));
  std::vector<VerifyCase> out;
  using namespace detail;
  for (auto p : cfg.primes) {
    const Field k(p);
    if (cfg.wants(1)) add_c1(out, cfg, p);
    if (cfg.wants(2) && p == 5) out.push_back({2, "p=5 V(2)", [] { return v2_case(); }});
    if (cfg.wants(3)) add_c3(out, cfg, p);
    if (cfg.wants(4)) add_c4(out, cfg, p);
    if (cfg.wants(5))
      for (long l = p; l <= cfg.lambda_limit(p); ++l)
        if (phi_range(p, l)) out.push_back({5, primes_key(p) + " lambda=" + std::to_string(l), [=] { return bprime_case(k, l); }});
    if (cfg.wants(6))
      for (long l = 0; l < static_cast<long>(p) && l <= cfg.lambda_limit(p); ++l)
        out.push_back({6, primes_key(p) + " lambda=" + std::to_string(l), [=, D = cfg.max_degree] { return small_weyl_case(k, l, D); }});
    if (cfg.wants(7))
      for (long l = 0; l <= cfg.lambda_limit(p); ++l)
        if (weyl_indecomposable_range(p, l))
          out.push_back({7, primes_key(p) + " lambda=" + std::to_string(l), [=, s = cfg.seed] { return heller_case(k, l, s); }});
    if (cfg.wants(8) && p <= cfg.fi_prime_max)
      for (long l = 0; l <= cfg.lambda_limit(p); ++l)
        if (weyl_indecomposable_range(p, l))
          for (int i = 1; i < static_cast<int>(p); ++i)
            out.push_back({8, primes_key(p) + " lambda=" + std::to_string(l) + " i=" + std::to_string(i),
                           [=, s = cfg.seed, D = cfg.max_degree] { return fi_case(k, l, i, D, s); }});
    if (cfg.wants(9)) add_c9(out, cfg, p);
  }
  return out;
}

/// Run every case on `jobs` workers; results keep generation order.
inline VerifyReport run_cases(const VerifyConfig& cfg, const std::vector<VerifyCase>& cases) {
  VerifyReport rep;
  rep.config = cfg;
  rep.cases.resize(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      CaseResult& res = rep.cases[i];
      res.criterion = cases[i].criterion;
      res.key = cases[i].key;
      try {
        auto [ok, detail] = cases[i].run();
        res.pass = ok;
        res.detail = std::move(detail);
      } catch (const std::exception& e) {
        res.pass = false;
        res.detail = std::string("error: ") + e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(cases.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rep;
}

inline VerifyReport run_verification(const VerifyConfig& cfg) { return run_cases(cfg, build_cases(cfg)); }

inline json to_json(const VerifyReport& rep) {
  json crit = json::array();
  for (const auto& s : rep.summaries()) {
    json cases = json::array();
    for (const auto& c : rep.cases)
      if (c.criterion == s.id) cases.push_back({{"key", c.key}, {"status", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
    crit.push_back({{"id", s.id}, {"name", s.name}, {"passed", s.passed}, {"failed", s.failed}, {"status", s.ok() ? "pass" : "fail"},
                    {"cases", cases}});
  }
  return {{"config",
           {{"primes", rep.config.primes},
            {"lambda_max", rep.config.lambda_max},
            {"seed", rep.config.seed},
            {"ext_max", rep.config.ext_max}}},
          {"criteria", crit},
          {"status", rep.ok() ? "pass" : "fail"}};
}

/// One line per criterion.
inline std::string summary_text(const VerifyReport& rep) {
  std::ostringstream os;
  for (const auto& s : rep.summaries())
    os << (s.ok() ? "PASS" : "FAIL") << "  criterion " << s.id << " (" << s.name << "): " << s.passed << "/" << (s.passed + s.failed)
       << " cases\n";
  return os.str();
}

}  // namespace sl2sheaf
