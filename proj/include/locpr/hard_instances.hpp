#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locpr/errors.hpp"
#include "locpr/graph.hpp"
#include "locpr/oracle.hpp"
#include "locpr/rng.hpp"

namespace locpr {

struct IdRange {
  node_t begin = 0;
  node_t end = 0;

  node_t size() const { return end - begin; }
  bool contains(node_t v) const { return v >= begin && v < end; }
  node_t operator[](node_t k) const { return begin + k; }
};

/// Node-set labels and structural parameters of a generated hard instance,
/// together with the analytic scores the construction guarantees. The
/// closed forms are exact for these graphs (every path that matters is
/// deterministic), so tests can compare them against the solvers at
/// numerical tolerance.
struct HardInstanceMeta {
  enum class Kind { contribution, pagerank_family };
  Kind kind = Kind::contribution;

  node_t t = 0;
  IdRange u, v, w, x, y;
  std::optional<node_t> u_star, v_star;
  std::uint32_t d = 0;
  std::uint32_t p = 0;
  std::uint32_t i = 0;
  std::uint32_t arity = 0;  // 0 = direct mode
  std::uint32_t levels_v = 1;
  std::uint32_t levels_y = 0;
  std::vector<IdRange> tree_v_levels;  // levels 2..L_V (level 1 is v)
  std::vector<IdRange> tree_y_levels;  // levels 2..L_Y (level 1 is y)
  IdRange filler;

  double alpha = 0.2;
  double delta = 0.0;    // safe threshold: every u in U is delta-contributing
  double pi_t = 0.0;     // analytic PageRank of t
  double pi_u_t = 0.0;   // analytic contribution of each u in U to t
  node_t y_pointing = 0; // nodes of Y wired toward u_star
  double beta = 0.0;     // log_k(1-alpha), multi-level family mode
  double exponent = 0.0; // achieved exponent 1/(2-beta)

  node_t n = 0;
  std::uint64_t m = 0;
};

struct ContributionParams {
  node_t n_budget = 0;
  std::uint64_t m_budget = 0;
  std::uint32_t d = 0;
  node_t v_size = 0;
  bool multi_level = false;
  std::uint32_t arity = 0;
  double alpha = 0.2;
};

struct PageRankFamilyParams {
  node_t n_budget = 0;
  std::uint64_t m_budget = 0;
  std::uint32_t d = 0;
  node_t v_size = 0;
  std::uint32_t p = 1;
  std::uint32_t i = 0;
  node_t y_size = 0;  // 0: |Y| = |V| in direct mode, |V|^(1-beta) in multi-level mode
  bool multi_level = false;
  std::uint32_t arity = 0;
  double alpha = 0.2;
};

namespace detail {

struct TreeShape {
  std::uint32_t levels = 1;   // including the top level
  node_t top_size = 0;        // nodes in the top level
};

/// Round a requested top-level size down to a complete arity-ary tree,
/// arity^L with L >= 1.
inline TreeShape fit_tree(node_t requested, std::uint32_t arity) {
  if (requested < arity)
    throw GenError("tree size: top level (" + std::to_string(requested) +
                   ") must be at least the arity (" + std::to_string(arity) + ")");
  std::uint32_t levels = 0;
  std::uint64_t size = 1;
  while (size * arity <= requested) {
    size *= arity;
    ++levels;
  }
  return {levels, static_cast<node_t>(size)};
}

struct Builder {
  std::vector<Edge> edges;
  node_t next_id = 0;

  IdRange take(node_t count) {
    IdRange r{next_id, next_id + count};
    next_id = r.end;
    return r;
  }
  void edge(node_t from, node_t to) { edges.push_back({from, to}); }
};

/// Reversed complete arity-ary tree from a given top level down to a root
/// node. top_edge_present selects which top-level nodes are wired in (the
/// rest get self-loops); deeper levels are always complete. Appends the
/// intermediate level ranges and returns nothing; edges go top -> down.
inline void build_tree(Builder& b, const IdRange& top, std::uint32_t levels, std::uint32_t arity,
                       node_t top_present, node_t root, std::vector<IdRange>& inner_levels) {
  IdRange cur = top;
  for (std::uint32_t lev = 1; lev < levels; ++lev) {
    IdRange next = b.take(cur.size() / arity);
    inner_levels.push_back(next);
    for (node_t k = 0; k < cur.size(); ++k) {
      if (lev == 1 && k >= top_present) {
        b.edge(cur[k], cur[k]);  // unwired top node keeps a self-loop
      } else {
        b.edge(cur[k], next[k / arity]);
      }
    }
    cur = next;
  }
  for (node_t k = 0; k < cur.size(); ++k) {
    if (levels == 1 && k >= top_present) {
      b.edge(cur[k], cur[k]);
    } else {
      b.edge(cur[k], root);
    }
  }
}

/// Deterministic isolated filler: one star per declared max degree plus a
/// stride block, landing the total edge count exactly on the budget.
inline IdRange build_filler(Builder& b, std::uint64_t m_budget, std::uint32_t max_in,
                            std::uint32_t max_out, node_t n_budget) {
  const node_t start = b.next_id;
  if (b.edges.size() > m_budget)
    throw GenError("edge budget: main construction needs " + std::to_string(b.edges.size()) +
                   " edges, m_budget=" + std::to_string(m_budget));
  std::uint64_t extra = m_budget - b.edges.size();

  const std::uint64_t in_star_edges = static_cast<std::uint64_t>(max_in) + 1;
  if (extra >= in_star_edges && max_in >= 1) {
    IdRange spokes = b.take(max_in);
    IdRange center = b.take(1);
    for (node_t k = 0; k < spokes.size(); ++k) b.edge(spokes[k], center[0]);
    b.edge(center[0], center[0]);
    extra -= in_star_edges;
  }
  const std::uint64_t out_star_edges = 2ull * max_out;
  if (extra >= out_star_edges && max_out >= 1) {
    IdRange center = b.take(1);
    IdRange leaves = b.take(max_out);
    for (node_t k = 0; k < leaves.size(); ++k) {
      b.edge(center[0], leaves[k]);
      b.edge(leaves[k], leaves[k]);
    }
    extra -= out_star_edges;
  }
  if (extra > 0) {
    const std::uint64_t smax = std::max<std::uint32_t>(1, std::min(max_in, max_out));
    node_t block;
    if (extra <= 2) {
      block = static_cast<node_t>(extra);  // one or two self-loop nodes
      IdRange r = b.take(block);
      for (node_t k = 0; k < r.size(); ++k) b.edge(r[k], r[k]);
    } else {
      block = static_cast<node_t>(std::max<std::uint64_t>(3, (extra + smax - 1) / smax));
      IdRange r = b.take(block);
      std::uint64_t emitted = 0;
      for (std::uint32_t stride = 1; emitted < extra; ++stride) {
        for (node_t k = 0; k < r.size() && emitted < extra; ++k, ++emitted)
          b.edge(r[k], r[(k + stride) % r.size()]);
      }
    }
  }
  IdRange filler{start, b.next_id};
  if (b.next_id > 3ull * n_budget + 16)
    throw GenError("node budget: filler for m_budget=" + std::to_string(m_budget) +
                   " would need " + std::to_string(b.next_id) + " nodes against n_budget=" +
                   std::to_string(n_budget));
  return filler;
}

/// PageRank level sums down a reversed tree where every node has
/// out-degree one: S_{j+1} = |level j+1| * alpha/n + (1-alpha) * S_j.
inline double tree_level_sum(double top_sum, node_t top_size, std::uint32_t levels,
                             std::uint32_t arity, double alpha, double n) {
  double sum = top_sum;
  node_t size = top_size;
  for (std::uint32_t lev = 2; lev <= levels; ++lev) {
    size /= arity;
    sum = static_cast<double>(size) * alpha / n + (1.0 - alpha) * sum;
  }
  return sum;
}

inline void check_common(node_t n_budget, std::uint64_t m_budget, std::uint32_t d, node_t v_size,
                         bool multi_level, std::uint32_t arity, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw GenError("alpha must lie in (0,1)");
  if (n_budget < 1) throw GenError("n_budget must be at least 1");
  if (m_budget < 1) throw GenError("m_budget must be at least 1");
  if (d < 1) throw GenError("d must be at least 1");
  if (v_size < 1) throw GenError("v_size must be at least 1");
  if (multi_level) {
    if (arity < 2) throw GenError("arity must be at least 2 in multi-level mode");
    if (!(static_cast<double>(arity) * (1.0 - alpha) >= 1.0 - 1e-12))
      throw GenError("arity: arity*(1-alpha) must be at least 1 for the intended alpha");
  }
}

}  // namespace detail

/// The contributing-set hard instance: N_in(t) = V (directly or through a
/// reversed complete tree) plus a self-loop on t, an exclusive matching
/// U -> V, a W -> V block giving each v in-degree d from W, out-degree
/// padding from W into the self-looped set X, and an isolated filler that
/// lands the node and edge counts on the budgets.
inline std::pair<Graph, HardInstanceMeta> gen_contribution_hard(const ContributionParams& prm) {
  detail::check_common(prm.n_budget, prm.m_budget, prm.d, prm.v_size, prm.multi_level, prm.arity,
                       prm.alpha);
  HardInstanceMeta meta;
  meta.kind = HardInstanceMeta::Kind::contribution;
  meta.alpha = prm.alpha;
  meta.d = prm.d;
  meta.arity = prm.multi_level ? prm.arity : 0;

  node_t v_size = prm.v_size;
  if (prm.multi_level) {
    auto shape = detail::fit_tree(prm.v_size, prm.arity);
    meta.levels_v = shape.levels;
    v_size = shape.top_size;
  }
  const node_t w_size = std::max<node_t>(prm.d, v_size);

  detail::Builder b;
  meta.t = b.take(1).begin;
  meta.u = b.take(v_size);
  meta.v = b.take(v_size);
  meta.w = b.take(w_size);
  meta.x = b.take(prm.n_budget);

  b.edge(meta.t, meta.t);
  for (node_t k = 0; k < v_size; ++k) b.edge(meta.u[k], meta.v[k]);
  std::vector<std::uint32_t> w_out(w_size, 0);
  for (node_t j = 0; j < v_size; ++j)
    for (std::uint32_t k = 0; k < prm.d; ++k) {
      const node_t w = static_cast<node_t>((static_cast<std::uint64_t>(j) * prm.d + k) % w_size);
      b.edge(meta.w[w], meta.v[j]);
      ++w_out[w];
    }
  node_t x_cursor = 0;
  for (node_t w = 0; w < w_size; ++w)
    while (w_out[w] < prm.d) {
      b.edge(meta.w[w], meta.x[x_cursor++ % meta.x.size()]);
      ++w_out[w];
    }
  detail::build_tree(b, meta.v, meta.levels_v, std::max<std::uint32_t>(prm.arity, 1), v_size,
                     meta.t, meta.tree_v_levels);
  for (node_t k = 0; k < meta.x.size(); ++k) b.edge(meta.x[k], meta.x[k]);

  if (b.next_id - meta.x.size() > prm.n_budget)
    throw GenError("node budget: sets besides X need " +
                   std::to_string(b.next_id - meta.x.size()) + " nodes against n_budget=" +
                   std::to_string(prm.n_budget));

  // t gets |V|+1 parents directly or arity+1 through the tree
  const std::uint32_t max_in_main =
      std::max({prm.d + 1, (prm.multi_level ? prm.arity : v_size) + 1, 2u});
  const std::uint32_t max_out_main = std::max(prm.d, 1u);
  meta.filler = detail::build_filler(b, prm.m_budget, max_in_main, max_out_main, prm.n_budget);

  meta.n = b.next_id;
  meta.m = b.edges.size();

  const double a = prm.alpha;
  const double n = static_cast<double>(meta.n);
  const double pi_v = a / n + (1.0 - a) * (a / n + a / n);
  const double level_sum = detail::tree_level_sum(static_cast<double>(v_size) * pi_v, v_size,
                                                  meta.levels_v, std::max(prm.arity, 1u), a, n);
  meta.pi_t = (a / n + (1.0 - a) * level_sum) / a;
  meta.pi_u_t = std::pow(1.0 - a, meta.levels_v + 1);
  meta.delta = meta.pi_u_t / (2.0 * n * meta.pi_t);

  Graph g(meta.n, b.edges);
  return {std::move(g), std::move(meta)};
}

/// The single-node PageRank hard family H_i: the contributing-set skeleton
/// plus a set Y of which floor(i*|Y|/p) nodes are wired toward a designated
/// u_star (directly, or through a second reversed tree in multi-level
/// mode); the remaining Y nodes keep self-loops.
inline std::pair<Graph, HardInstanceMeta> gen_pagerank_hard(const PageRankFamilyParams& prm) {
  detail::check_common(prm.n_budget, prm.m_budget, prm.d, prm.v_size, prm.multi_level, prm.arity,
                       prm.alpha);
  if (prm.p < 1) throw GenError("p must be at least 1");
  if (prm.i > prm.p) throw GenError("family index i must satisfy 0 <= i <= p");

  HardInstanceMeta meta;
  meta.kind = HardInstanceMeta::Kind::pagerank_family;
  meta.alpha = prm.alpha;
  meta.d = prm.d;
  meta.p = prm.p;
  meta.i = prm.i;
  meta.arity = prm.multi_level ? prm.arity : 0;

  node_t v_size = prm.v_size;
  node_t y_size = prm.y_size;
  if (prm.multi_level) {
    auto shape = detail::fit_tree(prm.v_size, prm.arity);
    meta.levels_v = shape.levels;
    v_size = shape.top_size;
    meta.beta = std::log(1.0 - prm.alpha) /
                std::log(static_cast<double>(prm.arity) * (1.0 - prm.alpha));
    meta.exponent = 1.0 / (2.0 - meta.beta);
    if (y_size == 0) {
      // |Y| = |V|^(1-beta), rounded to the nearest realizable tree size
      const double want_levels = static_cast<double>(meta.levels_v) * (1.0 - meta.beta);
      meta.levels_y = static_cast<std::uint32_t>(std::max(1.0, std::round(want_levels)));
      y_size = static_cast<node_t>(
          std::llround(std::pow(static_cast<double>(prm.arity), meta.levels_y)));
    } else {
      auto shape_y = detail::fit_tree(y_size, prm.arity);
      meta.levels_y = shape_y.levels;
      y_size = shape_y.top_size;
    }
  } else {
    if (y_size == 0) y_size = v_size;
    meta.levels_y = 1;
  }
  const node_t w_size = std::max<node_t>(prm.d, v_size);

  detail::Builder b;
  meta.t = b.take(1).begin;
  meta.u = b.take(v_size);
  meta.v = b.take(v_size);
  meta.w = b.take(w_size);
  meta.x = b.take(prm.n_budget);
  meta.y = b.take(y_size);
  meta.u_star = meta.u[0];
  meta.v_star = meta.v[0];
  meta.y_pointing = static_cast<node_t>(
      (static_cast<std::uint64_t>(prm.i) * y_size) / prm.p);

  b.edge(meta.t, meta.t);
  for (node_t k = 0; k < v_size; ++k) b.edge(meta.u[k], meta.v[k]);
  std::vector<std::uint32_t> w_out(w_size, 0);
  for (node_t j = 0; j < v_size; ++j)
    for (std::uint32_t k = 0; k < prm.d; ++k) {
      const node_t w = static_cast<node_t>((static_cast<std::uint64_t>(j) * prm.d + k) % w_size);
      b.edge(meta.w[w], meta.v[j]);
      ++w_out[w];
    }
  node_t x_cursor = 0;
  for (node_t w = 0; w < w_size; ++w)
    while (w_out[w] < prm.d) {
      b.edge(meta.w[w], meta.x[x_cursor++ % meta.x.size()]);
      ++w_out[w];
    }
  detail::build_tree(b, meta.v, meta.levels_v, std::max<std::uint32_t>(prm.arity, 1), v_size,
                     meta.t, meta.tree_v_levels);
  for (node_t k = 0; k < meta.x.size(); ++k) b.edge(meta.x[k], meta.x[k]);
  detail::build_tree(b, meta.y, meta.levels_y, std::max<std::uint32_t>(prm.arity, 1),
                     meta.y_pointing, *meta.u_star, meta.tree_y_levels);

  if (b.next_id - meta.x.size() > prm.n_budget)
    throw GenError("node budget: sets besides X need " +
                   std::to_string(b.next_id - meta.x.size()) + " nodes against n_budget=" +
                   std::to_string(prm.n_budget));

  const std::uint32_t y_indeg_at_ustar =
      prm.multi_level ? prm.arity : static_cast<std::uint32_t>(meta.y_pointing);
  const std::uint32_t max_in_main = std::max(
      {prm.d + 1, (prm.multi_level ? prm.arity : v_size) + 1, y_indeg_at_ustar, 2u});
  const std::uint32_t max_out_main = std::max(prm.d, 1u);
  meta.filler = detail::build_filler(b, prm.m_budget, max_in_main, max_out_main, prm.n_budget);

  meta.n = b.next_id;
  meta.m = b.edges.size();

  const double a = prm.alpha;
  const double n = static_cast<double>(meta.n);
  const double y_sum = detail::tree_level_sum(static_cast<double>(meta.y_pointing) * a / n, y_size,
                                              meta.levels_y, std::max(prm.arity, 1u), a, n);
  const double pi_ustar = a / n + (1.0 - a) * y_sum;
  const double pi_v_reg = a / n + (1.0 - a) * (a / n + a / n);
  const double pi_vstar = a / n + (1.0 - a) * (pi_ustar + a / n);
  const double top_sum = static_cast<double>(v_size - 1) * pi_v_reg + pi_vstar;
  const double level_sum =
      detail::tree_level_sum(top_sum, v_size, meta.levels_v, std::max(prm.arity, 1u), a, n);
  meta.pi_t = (a / n + (1.0 - a) * level_sum) / a;
  meta.pi_u_t = std::pow(1.0 - a, meta.levels_v + 1);
  meta.delta = meta.pi_u_t / (2.0 * n * meta.pi_t);

  Graph g(meta.n, b.edges);
  return {std::move(g), std::move(meta)};
}

/// Uniformly random label permutations of one instance, derived
/// deterministically from the master seed; stream 0 is reserved for the
/// identity, so the first oracle equals the base.
inline std::vector<PermutedOracle<AccessOracle>> permuted_family(const Graph& g, std::uint32_t count,
                                                                 std::uint64_t master_seed) {
  std::vector<PermutedOracle<AccessOracle>> out;
  out.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) {
    NodePermutation perm;
    if (k == 0) {
      perm = NodePermutation::identity(g.num_nodes());
    } else {
      auto rng = make_stream(master_seed, k);
      perm = NodePermutation::random(g.num_nodes(), rng);
    }
    out.emplace_back(AccessOracle(g), std::move(perm), k);
  }
  return out;
}

}  // namespace locpr
