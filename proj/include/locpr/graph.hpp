#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "locpr/errors.hpp"

namespace locpr {

using node_t = std::uint32_t;

struct Edge {
  node_t from;
  node_t to;
};

/// Immutable directed multigraph with forward and backward adjacency in
/// compressed sparse form. Node ids are dense 0..n-1. Adjacency order is
/// deterministic: children appear in edge-insertion order, and the parents
/// of v appear in the insertion order of the edges pointing at v.
///
/// Immutable after construction; safe to share across concurrent readers.
class Graph {
 public:
  Graph(node_t n, const std::vector<Edge>& edges) { build(n, edges); }

  node_t num_nodes() const { return n_; }
  std::uint64_t num_edges() const { return m_; }

  std::uint32_t out_degree(node_t v) const {
    return static_cast<std::uint32_t>(out_off_[v + 1] - out_off_[v]);
  }
  std::uint32_t in_degree(node_t v) const {
    return static_cast<std::uint32_t>(in_off_[v + 1] - in_off_[v]);
  }

  /// i-th child / parent, 0-based.
  node_t child(node_t v, std::uint32_t i) const { return out_adj_[out_off_[v] + i]; }
  node_t parent(node_t v, std::uint32_t i) const { return in_adj_[in_off_[v] + i]; }

  std::uint32_t max_in_degree() const { return max_in_; }
  std::uint32_t max_out_degree() const { return max_out_; }

  /// Edges in insertion order.
  std::vector<Edge> edge_list() const {
    std::vector<Edge> edges;
    edges.reserve(m_);
    for (node_t u = 0; u < n_; ++u)
      for (std::uint32_t i = 0; i < out_degree(u); ++i) edges.push_back({u, child(u, i)});
    return edges;
  }

 private:
  void build(node_t n, const std::vector<Edge>& edges) {
    if (n < 1) throw ValidationError("graph must have at least one node");
    n_ = n;
    m_ = edges.size();
    out_off_.assign(n_ + 1, 0);
    in_off_.assign(n_ + 1, 0);
    for (const Edge& e : edges) {
      if (e.from >= n_ || e.to >= n_) throw ValidationError("edge endpoint exceeds node count");
      ++out_off_[e.from + 1];
      ++in_off_[e.to + 1];
    }
    for (node_t v = 0; v < n_; ++v) {
      out_off_[v + 1] += out_off_[v];
      in_off_[v + 1] += in_off_[v];
    }
    out_adj_.resize(m_);
    in_adj_.resize(m_);
    std::vector<std::uint64_t> out_cur(out_off_.begin(), out_off_.end() - 1);
    std::vector<std::uint64_t> in_cur(in_off_.begin(), in_off_.end() - 1);
    for (const Edge& e : edges) {
      out_adj_[out_cur[e.from]++] = e.to;
      in_adj_[in_cur[e.to]++] = e.from;
    }
    max_in_ = max_out_ = 0;
    for (node_t v = 0; v < n_; ++v) {
      if (out_degree(v) > max_out_) max_out_ = out_degree(v);
      if (in_degree(v) > max_in_) max_in_ = in_degree(v);
    }
  }

  node_t n_ = 0;
  std::uint64_t m_ = 0;
  std::uint32_t max_in_ = 0;
  std::uint32_t max_out_ = 0;
  std::vector<std::uint64_t> out_off_, in_off_;
  std::vector<node_t> out_adj_, in_adj_;
};

/// (max in-degree, max out-degree).
inline std::pair<std::uint32_t, std::uint32_t> max_degrees(const Graph& g) {
  return {g.max_in_degree(), g.max_out_degree()};
}

enum class DanglingPolicy { reject, add_self_loops };

/// Enforce nonzero out-degrees. Under reject, a dangling node is a
/// validation error listing the offending ids; under add_self_loops each
/// dangling node gains a self-loop appended after the original edges.
inline Graph validate_out_degrees(const Graph& g, DanglingPolicy policy) {
  std::vector<node_t> dangling;
  for (node_t v = 0; v < g.num_nodes(); ++v)
    if (g.out_degree(v) == 0) dangling.push_back(v);
  if (dangling.empty()) return g;
  if (policy == DanglingPolicy::reject) {
    std::string msg = "nodes with zero out-degree:";
    for (node_t v : dangling) msg += " " + std::to_string(v);
    throw ValidationError(msg);
  }
  std::vector<Edge> edges = g.edge_list();
  for (node_t v : dangling) edges.push_back({v, v});
  return Graph(g.num_nodes(), edges);
}

namespace detail {

inline bool parse_node(std::string_view token, node_t& out) {
  std::uint64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) return false;
  if (value > std::numeric_limits<node_t>::max()) return false;
  out = static_cast<node_t>(value);
  return true;
}

}  // namespace detail

/// Parse the edge-list text format: optional first line "# n=<count>",
/// '#'-prefixed comment lines, and "<u> <v>" data lines with ASCII
/// whitespace separation. LF and CRLF both accepted. Duplicate edges keep
/// multigraph semantics. Without a header the node count is one past the
/// largest id referenced.
inline Graph load_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  bool have_header = false;
  node_t declared_n = 0;
  node_t max_id = 0;
  bool saw_node = false;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view sv(line);
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
    if (sv.empty()) continue;
    if (sv.front() == '#') {
      if (line_no == 1 && sv.substr(0, 4) == "# n=") {
        node_t n;
        if (!detail::parse_node(sv.substr(4), n) || n == 0)
          throw ParseError("line 1: malformed node-count header");
        declared_n = n;
        have_header = true;
      }
      continue;
    }
    std::istringstream fields{std::string(sv)};
    std::string a, b, rest;
    if (!(fields >> a >> b) || (fields >> rest)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected \"<u> <v>\"");
    }
    node_t u, v;
    if (!detail::parse_node(a, u) || !detail::parse_node(b, v)) {
      throw ParseError("line " + std::to_string(line_no) + ": malformed node id");
    }
    if (have_header && (u >= declared_n || v >= declared_n)) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": node id exceeds declared count n=" + std::to_string(declared_n));
    }
    edges.push_back({u, v});
    max_id = std::max({max_id, u, v});
    saw_node = true;
  }
  if (have_header) return Graph(declared_n, edges);
  if (!saw_node) throw ParseError("empty edge list and no node-count header");
  return Graph(max_id + 1, edges);
}

/// Remap arbitrary 64-bit ids to dense 0..n-1 in first-appearance order.
/// Returns the dense edges plus the original id of each dense node.
struct RemappedEdges {
  std::vector<Edge> edges;
  std::vector<std::uint64_t> original_ids;
};

inline RemappedEdges remap_node_ids(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& raw) {
  RemappedEdges out;
  std::unordered_map<std::uint64_t, node_t> dense;
  auto id_of = [&](std::uint64_t raw_id) {
    auto it = dense.find(raw_id);
    if (it != dense.end()) return it->second;
    node_t id = static_cast<node_t>(out.original_ids.size());
    dense.emplace(raw_id, id);
    out.original_ids.push_back(raw_id);
    return id;
  };
  out.edges.reserve(raw.size());
  for (const auto& [u, v] : raw) out.edges.push_back({id_of(u), id_of(v)});
  return out;
}

}  // namespace locpr
