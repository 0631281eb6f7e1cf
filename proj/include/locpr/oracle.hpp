#pragma once

#include <concepts>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "locpr/errors.hpp"
#include "locpr/graph.hpp"
#include "locpr/rng.hpp"

namespace locpr {

/// Per-query-kind counters of the arc-centric access model. The four local
/// kinds and the global jump are tallied separately.
struct QueryStats {
  std::uint64_t n_indeg = 0;
  std::uint64_t n_outdeg = 0;
  std::uint64_t n_parent = 0;
  std::uint64_t n_child = 0;
  std::uint64_t n_jump = 0;

  std::uint64_t local_total() const { return n_indeg + n_outdeg + n_parent + n_child; }
  std::uint64_t total() const { return local_total() + n_jump; }

  QueryStats operator-(const QueryStats& rhs) const {
    return {n_indeg - rhs.n_indeg, n_outdeg - rhs.n_outdeg, n_parent - rhs.n_parent,
            n_child - rhs.n_child, n_jump - rhs.n_jump};
  }
  QueryStats& operator+=(const QueryStats& rhs) {
    n_indeg += rhs.n_indeg;
    n_outdeg += rhs.n_outdeg;
    n_parent += rhs.n_parent;
    n_child += rhs.n_child;
    n_jump += rhs.n_jump;
    return *this;
  }
  bool operator==(const QueryStats&) const = default;
};

/// Query facade over a Graph; every query increments its counter. Edge
/// indices are 1-based to mirror the access model's parent(v, i) with
/// i running from 1 to indeg(v). The oracle owns no randomness: jump()
/// draws from the caller-supplied source. Counters are per-instance, so
/// concurrent experiments on separate instances do not interfere; a single
/// instance is single-owner.
class AccessOracle {
 public:
  explicit AccessOracle(const Graph& g) : g_(&g) {}

  node_t num_nodes() const { return g_->num_nodes(); }

  std::uint32_t indeg(node_t v) {
    check_node(v);
    ++stats_.n_indeg;
    return g_->in_degree(v);
  }
  std::uint32_t outdeg(node_t v) {
    check_node(v);
    ++stats_.n_outdeg;
    return g_->out_degree(v);
  }
  node_t parent(node_t v, std::uint32_t i) {
    check_node(v);
    if (i < 1 || i > g_->in_degree(v)) throw QueryError(bad_index("parent", v, i));
    ++stats_.n_parent;
    return g_->parent(v, i - 1);
  }
  node_t child(node_t v, std::uint32_t i) {
    check_node(v);
    if (i < 1 || i > g_->out_degree(v)) throw QueryError(bad_index("child", v, i));
    ++stats_.n_child;
    return g_->child(v, i - 1);
  }
  template <class Rng>
  node_t jump(Rng& rng) {
    ++stats_.n_jump;
    return static_cast<node_t>(uniform_index(rng, g_->num_nodes()));
  }

  QueryStats snapshot_stats() const { return stats_; }
  void reset_stats() { stats_ = QueryStats{}; }

  /// The underlying graph, for verification against ground truth. Not part
  /// of the query surface; algorithms must not touch it.
  const Graph& graph() const { return *g_; }

 private:
  void check_node(node_t v) const {
    if (v >= g_->num_nodes()) throw QueryError("node id " + std::to_string(v) + " out of range");
  }
  static std::string bad_index(const char* kind, node_t v, std::uint32_t i) {
    return std::string(kind) + " index " + std::to_string(i) + " out of range at node " +
           std::to_string(v);
  }

  const Graph* g_;
  QueryStats stats_;
};

/// Oracle surface the local algorithms are written against.
template <class O>
concept GraphOracle = requires(O& o, node_t v, std::uint32_t i, std::mt19937_64& rng) {
  { o.num_nodes() } -> std::convertible_to<node_t>;
  { o.indeg(v) } -> std::convertible_to<std::uint32_t>;
  { o.outdeg(v) } -> std::convertible_to<std::uint32_t>;
  { o.parent(v, i) } -> std::convertible_to<node_t>;
  { o.child(v, i) } -> std::convertible_to<node_t>;
  { o.jump(rng) } -> std::convertible_to<node_t>;
  { o.snapshot_stats() } -> std::convertible_to<QueryStats>;
};

/// A bijection on node ids, stored with its inverse.
class NodePermutation {
 public:
  static NodePermutation identity(node_t n) {
    NodePermutation p;
    p.fwd_.resize(n);
    p.inv_.resize(n);
    for (node_t v = 0; v < n; ++v) p.fwd_[v] = p.inv_[v] = v;
    return p;
  }

  /// Fisher-Yates shuffle driven by the given stream.
  template <class Rng>
  static NodePermutation random(node_t n, Rng& rng) {
    NodePermutation p = identity(n);
    for (node_t i = n; i > 1; --i) {
      node_t j = static_cast<node_t>(uniform_index(rng, i));
      std::swap(p.fwd_[i - 1], p.fwd_[j]);
    }
    for (node_t v = 0; v < n; ++v) p.inv_[p.fwd_[v]] = v;
    return p;
  }

  node_t apply(node_t v) const { return fwd_[v]; }
  node_t invert(node_t v) const { return inv_[v]; }
  node_t size() const { return static_cast<node_t>(fwd_.size()); }
  bool operator==(const NodePermutation&) const = default;

 private:
  std::vector<node_t> fwd_, inv_;
};

/// Exposes the graph isomorphic to the base oracle under a label
/// permutation: queries on label x delegate to perm^-1(x) and outputs are
/// relabeled through perm. Adjacency order is preserved, so algorithm
/// outputs transport through the permutation exactly. The base oracle is
/// owned, so each permuted copy carries its own counters.
template <class Base = AccessOracle>
class PermutedOracle {
 public:
  PermutedOracle(Base base, NodePermutation perm, std::uint64_t seed = 0)
      : base_(std::move(base)), perm_(std::move(perm)), seed_(seed) {}

  node_t num_nodes() const { return base_.num_nodes(); }
  std::uint32_t indeg(node_t v) { return base_.indeg(unlabel(v)); }
  std::uint32_t outdeg(node_t v) { return base_.outdeg(unlabel(v)); }
  node_t parent(node_t v, std::uint32_t i) { return perm_.apply(base_.parent(unlabel(v), i)); }
  node_t child(node_t v, std::uint32_t i) { return perm_.apply(base_.child(unlabel(v), i)); }
  template <class Rng>
  node_t jump(Rng& rng) {
    return perm_.apply(base_.jump(rng));
  }

  QueryStats snapshot_stats() const { return base_.snapshot_stats(); }
  void reset_stats() { base_.reset_stats(); }

  const NodePermutation& permutation() const { return perm_; }
  std::uint64_t seed() const { return seed_; }

 private:
  node_t unlabel(node_t v) const {
    if (v >= perm_.size()) throw QueryError("node id " + std::to_string(v) + " out of range");
    return perm_.invert(v);
  }

  Base base_;
  NodePermutation perm_;
  std::uint64_t seed_;
};

static_assert(GraphOracle<AccessOracle>);
static_assert(GraphOracle<PermutedOracle<AccessOracle>>);

}  // namespace locpr
