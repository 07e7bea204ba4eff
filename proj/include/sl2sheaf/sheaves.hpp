#pragma once

/**
 * @file sheaves.hpp
 * @brief Kernel sheaves and the subquotients F_i = (Ker ∩ Im^{i-1}) / (Ker ∩ Im^i) of a module.
 */

#include <string>
#include <vector>

#include "sl2sheaf/graded.hpp"
#include "sl2sheaf/nullcone.hpp"

namespace sl2sheaf {

/// Default degree bound 2*lambda + 2p (2*dim + 2p when lambda is unknown).
inline int default_degree_bound(const Sl2Module& M) {
  const long l = M.lambda().value_or(static_cast<long>(M.dim()));
  return static_cast<int>(2 * l + 2 * static_cast<long>(M.p()));
}

/// Splitting type of Ker(Theta_M) from a certified free basis.
struct KernelSheaf {
  GradedSubmoduleData data;
  SplittingType splitting;
};

inline KernelSheaf kernel_sheaf(const Sl2Module& M, int D = -1) {
  if (D < 0) D = default_degree_bound(M);
  const HomMatrix theta = build_theta(M);
  auto data = graded_kernel(theta, D);
  auto st = splitting_from_generators(data);
  return {std::move(data), std::move(st)};
}

struct FiData {
  int i = 0;
  int max_degree = 0;
  std::vector<long> hilbert;  // dim of the saturated numerator minus saturated denominator, d = 0..D
  HilbertSplitting analysis;
  bool graded_by_weight = false;

  std::size_t rank() const { return analysis.rank; }
  bool determined() const { return analysis.splitting.has_value(); }
};

/// Sub-quotient data of F_i(M) computed degreewise with both intersections saturated.
inline FiData fi_data(const Sl2Module& M, int i, int D = -1) {
  const int p = static_cast<int>(M.p());
  if (i < 1 || i > p) throw std::invalid_argument("fi_data: need 1 <= i <= p");
  if (D < 0) D = default_degree_bound(M);
  const HomMatrix theta = build_theta(M);
  const AmbientPtr amb = make_ambient({&theta});
  const GradedSubmodule ker = kernel_of(amb, theta, "ker");
  const GradedSubmodule im_prev = i == 1 ? whole_module(amb) : image_of(amb, theta_power(M, i - 1), "im^" + std::to_string(i - 1));
  const GradedSubmodule im_cur = image_of(amb, theta_power(M, i), "im^" + std::to_string(i));
  const GradedSubmodule num = saturation(intersection(ker, im_prev), D, std::max(D, 1));
  const GradedSubmodule den = saturation(intersection(ker, im_cur), D, std::max(D, 1));
  FiData out;
  out.i = i;
  out.max_degree = D;
  out.graded_by_weight = amb->graded();
  for (int d = 0; d <= D; ++d) out.hilbert.push_back(static_cast<long>(num.dim(d)) - static_cast<long>(den.dim(d)));
  out.analysis = splitting_from_hilbert(out.hilbert);
  return out;
}

struct FiRankReport {
  Partition generic;
  Partition from_fi;
  std::vector<std::size_t> ranks;  // a_1..a_p
  bool ok() const { return generic == from_fi; }
};

/// Compare the generic Jordan type with [p]^{a_p} ... [1]^{a_1}, a_i = rank F_i(M).
inline FiRankReport verify_fi_rank_theorem(const Sl2Module& M, int D = -1) {
  FiRankReport rep;
  rep.generic = jordan_profile(M).generic;
  if (!jordan_profile(M).constant()) throw std::invalid_argument("verify_fi_rank_theorem: module is not of constant Jordan type");
  std::vector<std::pair<int, int>> blocks;
  for (int i = 1; i <= static_cast<int>(M.p()); ++i) {
    const auto fd = fi_data(M, i, D);
    rep.ranks.push_back(fd.rank());
    blocks.push_back({i, static_cast<int>(fd.rank())});
  }
  rep.from_fi = Partition::from_blocks(blocks, static_cast<int>(M.p()));
  return rep;
}

}  // namespace sl2sheaf
