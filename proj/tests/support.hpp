#pragma once

// Shared graph fixtures and helpers for the test suites.

#include <sstream>
#include <unordered_map>
#include <vector>

#include "locpr/graph.hpp"
#include "locpr/ground_truth.hpp"
#include "locpr/rng.hpp"

namespace test_support {

inline locpr::Graph two_cycle() {
  return locpr::Graph(2, {{0, 1}, {1, 0}});
}

inline locpr::Graph self_loop() {
  return locpr::Graph(1, {{0, 0}});
}

// 0 -> 1, 1 -> 1
inline locpr::Graph chain_to_sink() {
  return locpr::Graph(2, {{0, 1}, {1, 1}});
}

/// Seeded G(n, p) digraph; dangling nodes get self-loops so the result is
/// always valid.
inline locpr::Graph random_digraph(locpr::node_t n, double edge_prob, std::uint64_t seed) {
  auto rng = locpr::make_stream(seed, 0);
  std::vector<locpr::Edge> edges;
  for (locpr::node_t u = 0; u < n; ++u)
    for (locpr::node_t v = 0; v < n; ++v) {
      if (u == v) continue;
      if (locpr::uniform_unit(rng) < edge_prob) edges.push_back({u, v});
    }
  locpr::Graph g(n, edges);
  return locpr::validate_out_degrees(g, locpr::DanglingPolicy::add_self_loops);
}

/// Contribution-vector columns of a graph, solved on demand and cached:
/// column v holds pi(s, v) for all s.
class PprColumns {
 public:
  PprColumns(const locpr::Graph& g, double alpha, double tol = 1e-12)
      : g_(&g), alpha_(alpha), tol_(tol) {}

  const std::vector<double>& column(locpr::node_t v) {
    auto it = cache_.find(v);
    if (it == cache_.end())
      it = cache_.emplace(v, locpr::exact_contributions(*g_, v, alpha_, tol_).values).first;
    return it->second;
  }

 private:
  const locpr::Graph* g_;
  double alpha_;
  double tol_;
  std::unordered_map<locpr::node_t, std::vector<double>> cache_;
};

/// Max over s of |pi(s,t) - p(s) - sum_v pi(s,v) r(v)|, the invariant
/// residual of one push state against ground truth.
inline double invariant_residual(const locpr::Graph& g, PprColumns& columns, locpr::node_t t,
                                 const std::unordered_map<locpr::node_t, double>& reserves,
                                 const std::unordered_map<locpr::node_t, double>& residues) {
  const locpr::node_t n = g.num_nodes();
  std::vector<double> expected(columns.column(t));
  for (const auto& [v, r] : residues) {
    const std::vector<double>& col = columns.column(v);
    for (locpr::node_t s = 0; s < n; ++s) expected[s] -= r * col[s];
  }
  for (const auto& [s, p] : reserves) expected[s] -= p;
  double worst = 0.0;
  for (locpr::node_t s = 0; s < n; ++s) worst = std::max(worst, std::abs(expected[s]));
  return worst;
}

}  // namespace test_support
