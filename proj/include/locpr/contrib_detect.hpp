#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "locpr/backward_push.hpp"
#include "locpr/errors.hpp"
#include "locpr/oracle.hpp"

namespace locpr {

/// Stopping-quantity variant for the adaptive detector. The three single
/// variants realize the in-degree, out-degree and sqrt(m) budget
/// accountings; combined tracks all three budgets in lock-step and stops on
/// whichever is exhausted first.
enum class DetectVariant { indeg, outdeg, sqrt_m, combined, known_npi };

inline const char* to_string(DetectVariant v) {
  switch (v) {
    case DetectVariant::indeg: return "indeg";
    case DetectVariant::outdeg: return "outdeg";
    case DetectVariant::sqrt_m: return "sqrtm";
    case DetectVariant::combined: return "combined";
    case DetectVariant::known_npi: return "known_npi";
  }
  return "?";
}

/// One completed run in the halving schedule, with all three stopping
/// quantities (tracking the unused ones costs no extra queries).
struct TEpsEntry {
  double eps = 0.0;
  double t_indeg = 0.0;
  double t_outdeg = 0.0;
  double t_sqrtm = 0.0;
};

struct DetectionResult {
  std::vector<node_t> nodes;  // sorted ascending
  double final_eps = 0.0;
  std::vector<TEpsEntry> t_eps_history;
  DetectVariant variant = DetectVariant::known_npi;
  QueryStats stats;
  bool whole_graph_fallback = false;
};

struct DetectOptions {
  /// Budget constant B; the halving stops when the cumulative stopping
  /// quantity would exceed B/delta. Zero means the default 4/alpha, the
  /// natural scale of the per-node bound sp[v] <= pi(v,t)/(alpha*eps) + 1.
  double budget_constant = 0.0;
  PushOrder order = PushOrder::fifo;
  /// Cap on total local queries before falling back to whole-graph
  /// exploration. The edge count is not locally known, so callers that
  /// know the graph pass ~2(n+m); the default never triggers.
  std::uint64_t work_cap = std::numeric_limits<std::uint64_t>::max();
};

namespace detail {

inline std::vector<node_t> sorted_keys_with(const std::unordered_map<node_t, double>& map,
                                            double threshold) {
  std::vector<node_t> nodes;
  for (const auto& [v, p] : map)
    if (p >= threshold) nodes.push_back(v);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

/// Read the whole graph through the oracle (n outdeg + m child queries)
/// and return every node; the trivial O(n+m) fallback.
template <GraphOracle Oracle>
DetectionResult explore_whole_graph(Oracle& oracle, DetectVariant variant, double final_eps,
                                    std::vector<TEpsEntry> history, const QueryStats& start) {
  DetectionResult out;
  const node_t n = oracle.num_nodes();
  out.nodes.resize(n);
  for (node_t v = 0; v < n; ++v) {
    out.nodes[v] = v;
    const std::uint32_t dout = oracle.outdeg(v);
    for (std::uint32_t i = 1; i <= dout; ++i) oracle.child(v, i);
  }
  out.final_eps = final_eps;
  out.t_eps_history = std::move(history);
  out.variant = variant;
  out.stats = oracle.snapshot_stats() - start;
  out.whole_graph_fallback = true;
  return out;
}

}  // namespace detail

/// Detection with known n*pi(t): run one push with eps = delta*npi/2 and
/// threshold the reserves at eps. The result contains the delta-contributing
/// set and is contained in the (delta/2)-contributing set.
template <GraphOracle Oracle>
DetectionResult detect_known_npi(Oracle& oracle, node_t t, double alpha, double delta, double npi,
                                 PushOrder order = PushOrder::fifo) {
  if (!(delta > 0.0 && delta < 1.0)) throw ParamError("delta must lie in (0,1)");
  if (!(npi > 0.0)) throw ParamError("npi must be positive");
  const QueryStats start = oracle.snapshot_stats();
  const double eps = delta * npi / 2.0;
  PushResult pr = approx_contributions(oracle, t, alpha, eps, order);
  DetectionResult out;
  out.nodes = detail::sorted_keys_with(pr.reserves, eps);
  out.final_eps = eps;
  out.t_eps_history = {{eps, pr.t_eps_indeg(), pr.t_eps_outdeg(), pr.t_eps_sqrtm()}};
  out.variant = DetectVariant::known_npi;
  out.stats = oracle.snapshot_stats() - start;
  return out;
}

/// Adaptive detection with no knowledge of n*pi(t). Runs backward push with
/// eps = 1, 1/2, 1/4, ... from scratch, recording the stopping quantity per
/// run. A run executes under an abort-on-budget-exceeded guard: once the
/// cumulative stopping quantity (for any tracked variant) would surpass
/// B/delta, the in-flight run is aborted and the last completed run's
/// result is restored. Returns every node with a nonzero reserve.
template <GraphOracle Oracle>
DetectionResult detect_adaptive(Oracle& oracle, node_t t, double alpha, double delta,
                                DetectVariant variant, DetectOptions opt = {}) {
  if (!(delta > 0.0 && delta < 1.0)) throw ParamError("delta must lie in (0,1)");
  if (variant == DetectVariant::known_npi) throw ParamError("known_npi is not an adaptive variant");
  const double budget_constant = opt.budget_constant > 0.0 ? opt.budget_constant : 4.0 / alpha;
  const double budget = budget_constant / delta;

  const bool track_in = variant == DetectVariant::indeg || variant == DetectVariant::combined;
  const bool track_out = variant == DetectVariant::outdeg || variant == DetectVariant::combined;
  const bool track_sqrt = variant == DetectVariant::sqrt_m || variant == DetectVariant::combined;

  const QueryStats start = oracle.snapshot_stats();
  double cum_in = 0.0, cum_out = 0.0, cum_sqrt = 0.0;
  std::uint64_t queries_spent = 0;
  std::vector<TEpsEntry> history;
  std::optional<PushResult> last;
  double last_eps = 1.0;

  for (double eps = 1.0;; eps /= 2.0) {
    bool capped = false;
    auto guard = [&](const PushResult& partial) {
      if ((track_in && cum_in + partial.t_eps_indeg() > budget) ||
          (track_out && cum_out + partial.t_eps_outdeg() > budget) ||
          (track_sqrt && cum_sqrt + partial.t_eps_sqrtm() > budget))
        return PushStep::abort;
      if (queries_spent + partial.stats.local_total() > opt.work_cap) {
        capped = true;
        return PushStep::abort;
      }
      return PushStep::proceed;
    };
    auto run = approx_contributions_guarded(oracle, t, alpha, eps, opt.order, guard);
    if (capped)
      return detail::explore_whole_graph(oracle, variant, last_eps, std::move(history), start);
    if (!run) break;  // budget exhausted; keep the last completed run
    cum_in += run->t_eps_indeg();
    cum_out += run->t_eps_outdeg();
    cum_sqrt += run->t_eps_sqrtm();
    queries_spent += run->stats.local_total();
    history.push_back({eps, run->t_eps_indeg(), run->t_eps_outdeg(), run->t_eps_sqrtm()});
    const bool exact = run->residues.empty();
    last = std::move(run);
    last_eps = eps;
    if (exact) break;  // residues fully drained; deeper eps adds nothing
  }

  DetectionResult out;
  if (last) {
    // every stored reserve is strictly positive, so this is {v : p(v) > 0}
    for (const auto& [v, p] : last->reserves) out.nodes.push_back(v);
    std::sort(out.nodes.begin(), out.nodes.end());
  }
  out.final_eps = last_eps;
  out.t_eps_history = std::move(history);
  out.variant = variant;
  out.stats = oracle.snapshot_stats() - start;
  return out;
}

}  // namespace locpr
