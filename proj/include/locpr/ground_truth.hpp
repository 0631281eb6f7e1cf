#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include "locpr/errors.hpp"
#include "locpr/graph.hpp"

namespace locpr {

/// A dense per-node score vector together with the convergence tolerance
/// it was solved to. These solvers are correctness oracles for desk-scale
/// graphs, not part of the local-algorithm surface.
struct DenseScoreVector {
  std::vector<double> values;
  double tol = 0.0;

  double operator[](node_t v) const { return values[v]; }
  node_t size() const { return static_cast<node_t>(values.size()); }

  double sum() const {
    double s = 0.0;
    for (double x : values) s += x;
    return s;
  }
};

namespace detail {

/// Number of sweeps that drives the geometric iteration error (rate 1-alpha)
/// below tol, plus slack.
inline std::uint32_t iteration_cap(double alpha, double tol) {
  return static_cast<std::uint32_t>(std::ceil(std::log(1.0 / tol) / std::log(1.0 / (1.0 - alpha)))) + 8;
}

struct NoObserver {
  void operator()(const std::vector<double>&) const {}
};

}  // namespace detail

/// Exact PageRank by fixed-point iteration of
///   pi(v) = alpha/n + (1-alpha) * sum_{u in parents(v)} pi(u)/d_out(u),
/// starting from the zero vector (iterates are component-wise
/// non-decreasing). Max-norm residual of the fixed point is below tol.
template <class Observer = detail::NoObserver>
DenseScoreVector exact_pagerank(const Graph& g, double alpha, double tol = 1e-12,
                                Observer&& observe = {}) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParamError("alpha must lie in (0,1)");
  if (!(tol > 0.0)) throw ParamError("tol must be positive");
  const node_t n = g.num_nodes();
  const double base = alpha / static_cast<double>(n);
  std::vector<double> x(n, 0.0), next(n, 0.0);
  const std::uint32_t cap = detail::iteration_cap(alpha, tol);
  for (std::uint32_t it = 0; it < cap; ++it) {
    double delta = 0.0;
    for (node_t v = 0; v < n; ++v) {
      double acc = 0.0;
      for (std::uint32_t i = 0; i < g.in_degree(v); ++i) {
        node_t u = g.parent(v, i);
        acc += x[u] / static_cast<double>(g.out_degree(u));
      }
      next[v] = base + (1.0 - alpha) * acc;
      delta = std::max(delta, next[v] - x[v]);
    }
    x.swap(next);
    observe(x);
    if (delta < alpha * tol) break;
  }
  return {std::move(x), tol};
}

/// Exact contribution vector for target t:
///   x(u) = alpha * [u == t] + (1-alpha)/d_out(u) * sum_{v in children(u)} x(v),
/// iterated from zero. x(u) converges to the probability that a discounted
/// walk from u terminates at t.
template <class Observer = detail::NoObserver>
DenseScoreVector exact_contributions(const Graph& g, node_t t, double alpha, double tol = 1e-12,
                                     Observer&& observe = {}) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParamError("alpha must lie in (0,1)");
  if (!(tol > 0.0)) throw ParamError("tol must be positive");
  if (t >= g.num_nodes()) throw ParamError("target node out of range");
  const node_t n = g.num_nodes();
  std::vector<double> x(n, 0.0), next(n, 0.0);
  const std::uint32_t cap = detail::iteration_cap(alpha, tol);
  for (std::uint32_t it = 0; it < cap; ++it) {
    double delta = 0.0;
    for (node_t u = 0; u < n; ++u) {
      double acc = 0.0;
      const std::uint32_t dout = g.out_degree(u);
      for (std::uint32_t i = 0; i < dout; ++i) acc += x[g.child(u, i)];
      next[u] = (dout > 0 ? (1.0 - alpha) * acc / static_cast<double>(dout) : 0.0);
      if (u == t) next[u] += alpha;
      delta = std::max(delta, next[u] - x[u]);
    }
    x.swap(next);
    observe(x);
    if (delta < alpha * tol) break;
  }
  return {std::move(x), tol};
}

/// CSV dump, "node,score" rows.
inline void write_scores_csv(std::ostream& out, const DenseScoreVector& scores) {
  out << "node,score\n";
  out.precision(17);
  for (node_t v = 0; v < scores.size(); ++v) out << v << ',' << scores[v] << '\n';
}

}  // namespace locpr
