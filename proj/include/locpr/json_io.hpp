#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "locpr/backward_push.hpp"
#include "locpr/contrib_detect.hpp"
#include "locpr/errors.hpp"
#include "locpr/estimate.hpp"
#include "locpr/hard_instances.hpp"
#include "locpr/oracle.hpp"

namespace locpr {

inline nlohmann::json to_json(const QueryStats& s) {
  return {{"indeg", s.n_indeg}, {"outdeg", s.n_outdeg},   {"parent", s.n_parent},
          {"child", s.n_child}, {"jump", s.n_jump},       {"local_total", s.local_total()}};
}

namespace detail {

template <class T>
nlohmann::json sorted_pairs(const std::unordered_map<node_t, T>& map) {
  std::vector<std::pair<node_t, T>> items(map.begin(), map.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [v, x] : items) arr.push_back({v, x});
  return arr;
}

}  // namespace detail

inline nlohmann::json to_json(const PushResult& pr) {
  return {{"target", pr.target},
          {"alpha", pr.alpha},
          {"epsilon", pr.epsilon},
          {"pushbacks", pr.pushbacks},
          {"reserves", detail::sorted_pairs(pr.reserves)},
          {"residues", detail::sorted_pairs(pr.residues)},
          {"queries", to_json(pr.stats)}};
}

inline nlohmann::json to_json(const Estimate& est) {
  return {{"value", est.value},
          {"eps", est.eps},
          {"n_r", est.n_r},
          {"trials", est.trials},
          {"queries", to_json(est.queries)},
          {"converged_by", to_string(est.converged_by)},
          {"reserve_floor", est.reserve_floor}};
}

inline nlohmann::json to_json(const DetectionResult& res) {
  nlohmann::json history = nlohmann::json::array();
  for (const TEpsEntry& e : res.t_eps_history)
    history.push_back({{"eps", e.eps},
                       {"t_indeg", e.t_indeg},
                       {"t_outdeg", e.t_outdeg},
                       {"t_sqrtm", e.t_sqrtm}});
  return {{"nodes", res.nodes},
          {"final_eps", res.final_eps},
          {"t_eps_history", history},
          {"variant", to_string(res.variant)},
          {"queries", to_json(res.stats)},
          {"whole_graph_fallback", res.whole_graph_fallback}};
}

inline nlohmann::json to_json(const IdRange& r) { return {r.begin, r.end}; }

inline nlohmann::json to_json(const HardInstanceMeta& meta) {
  nlohmann::json j{{"kind", meta.kind == HardInstanceMeta::Kind::contribution ? "contribution"
                                                                              : "pagerank_family"},
                   {"t", meta.t},
                   {"u", to_json(meta.u)},
                   {"v", to_json(meta.v)},
                   {"w", to_json(meta.w)},
                   {"x", to_json(meta.x)},
                   {"y", to_json(meta.y)},
                   {"d", meta.d},
                   {"p", meta.p},
                   {"i", meta.i},
                   {"arity", meta.arity},
                   {"levels_v", meta.levels_v},
                   {"levels_y", meta.levels_y},
                   {"filler", to_json(meta.filler)},
                   {"alpha", meta.alpha},
                   {"delta", meta.delta},
                   {"pi_t", meta.pi_t},
                   {"pi_u_t", meta.pi_u_t},
                   {"y_pointing", meta.y_pointing},
                   {"n", meta.n},
                   {"m", meta.m}};
  if (meta.u_star) j["u_star"] = *meta.u_star;
  if (meta.v_star) j["v_star"] = *meta.v_star;
  if (meta.arity != 0) {
    j["beta"] = meta.beta;
    j["exponent"] = meta.exponent;
  }
  nlohmann::json tv = nlohmann::json::array(), ty = nlohmann::json::array();
  for (const IdRange& r : meta.tree_v_levels) tv.push_back(to_json(r));
  for (const IdRange& r : meta.tree_y_levels) ty.push_back(to_json(r));
  j["tree_v_levels"] = tv;
  j["tree_y_levels"] = ty;
  return j;
}

/// Edge-list text export in the loader's format, with the node-count header.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# n=" << g.num_nodes() << '\n';
  for (node_t u = 0; u < g.num_nodes(); ++u)
    for (std::uint32_t i = 0; i < g.out_degree(u); ++i) out << u << ' ' << g.child(u, i) << '\n';
}

/// Instance export: "<stem>.el" plus the "<stem>.meta.json" sidecar.
inline void export_instance(const std::string& stem, const Graph& g, const HardInstanceMeta& meta) {
  std::ofstream el(stem + ".el");
  if (!el) throw Error("cannot open " + stem + ".el for writing");
  write_edge_list(el, g);
  std::ofstream js(stem + ".meta.json");
  if (!js) throw Error("cannot open " + stem + ".meta.json for writing");
  js << to_json(meta).dump(2) << '\n';
}

}  // namespace locpr
