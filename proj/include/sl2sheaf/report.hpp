#pragma once

/**
 * @file report.hpp
 * @brief JSON views of modules, Jordan type profiles and sheaf data.
 *
 * Field elements are written as their integer codes (sum c_i p^i), so values
 * in F_p are plain residues.
 */

#include <json.hpp>

#include "sl2sheaf/heller.hpp"
#include "sl2sheaf/sheaves.hpp"

namespace sl2sheaf {

using json = nlohmann::json;

inline json to_json(const Field& f) {
  json modulus = json::array();
  for (Elem c : f.modulus()) modulus.push_back(c);
  return {{"p", f.characteristic()}, {"e", f.degree()}, {"modulus", modulus}};
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const PointP1& pt) { return {{"point", {pt.s(), pt.t()}}, {"field", to_json(pt.field())}}; }

inline json to_json(const Sl2Module& M) {
  json j;
  j["p"] = M.p();
  j["dim"] = M.dim();
  j["family"] = family_name(M.family());
  j["lambda"] = M.lambda() ? json(*M.lambda()) : json(nullptr);
  j["xi"] = M.xi() ? to_json(*M.xi()) : json(nullptr);
  if (!M.field().is_prime_field()) j["field"] = to_json(M.field());
  j["E"] = to_json(M.e());
  j["F"] = to_json(M.f());
  j["H"] = to_json(M.h());
  return j;
}

inline json to_json(const JordanTypeProfile& prof) {
  json ex = json::array();
  for (const auto& [pt, part] : prof.exceptional) {
    json e = to_json(pt);
    e["type"] = part.to_string();
    ex.push_back(std::move(e));
  }
  return {{"generic", prof.generic.to_string()}, {"exceptional", ex}};
}

inline json to_json(const SplittingType& s) { return json(s.twists()); }

inline json hilbert_json(const std::vector<long>& h) {
  json out = json::array();
  for (std::size_t d = 0; d < h.size(); ++d) out.push_back({{"d", d}, {"dim", h[d]}});
  return out;
}

inline json to_json(const Generator& g) { return {{"degree", g.degree}, {"vector", g.vector}}; }

/// Sheaf report {module, object, certified, generators, splitting, hilbert}.
inline json sheaf_json(const std::string& module, const std::string& object, const GradedSubmoduleData& data,
                       const std::optional<SplittingType>& split) {
  json gens = json::array();
  for (const auto& g : data.generators) gens.push_back(to_json(g));
  std::vector<long> h;
  for (auto x : data.hilbert()) h.push_back(static_cast<long>(x));
  return {{"module", module},
          {"object", object},
          {"certified", data.certified},
          {"generators", gens},
          {"splitting", split ? to_json(*split) : json(nullptr)},
          {"hilbert", hilbert_json(h)}};
}

inline json to_json(const Sl2Module& M, const KernelSheaf& k) { return sheaf_json(M.label(), "ker^1", k.data, k.splitting); }

inline json to_json(const Sl2Module& M, const FiData& fd) {
  json j = {{"module", M.label()},
            {"object", "F_" + std::to_string(fd.i)},
            {"certified", fd.analysis.window_valid},
            {"generators", json::array()},
            {"splitting", fd.analysis.splitting ? to_json(*fd.analysis.splitting) : json(nullptr)},
            {"hilbert", hilbert_json(fd.hilbert)}};
  j["rank"] = fd.analysis.rank;
  j["degree_sum"] = fd.analysis.degree_sum;
  j["tail_stable"] = fd.analysis.tail_stable;
  return j;
}

inline json to_json(const HellerShift& h) {
  json j = {{"projective", h.projective}, {"label", h.label()}};
  if (!h.projective) {
    j["lambda_shift"] = h.lambda_shift;
    j["actions_equal_weyl"] = h.actions_equal_weyl;
    j["isomorphism_found"] = h.isomorphism.has_value();
    j["module"] = to_json(*h.module);
  }
  return j;
}

}  // namespace sl2sheaf
