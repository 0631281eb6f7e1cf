#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "locpr/errors.hpp"
#include "locpr/oracle.hpp"

namespace locpr {

/// Selection rule for the next node with residue above the threshold. The
/// guarantees are order-free; outputs may differ numerically across orders.
enum class PushOrder { fifo, lifo, max_residue };

/// State returned by one backward-push run: the reserve vector p (running
/// underestimates of the contributions to the target) and the residue
/// vector r (un-pushed mass), both sparse with implicit zero default, plus
/// per-node push accounting.
///
///   sp[v]  - pushbacks performed on v
///   rp[v]  - times v received mass from a child's pushback
///
/// rp_over_dout_sum and sp_g_sum accumulate the stopping quantities used by
/// the adaptive contributing-set detector; they are maintained during the
/// send loop at no extra query cost.
struct PushResult {
  node_t target = 0;
  double alpha = 0.0;
  double epsilon = 0.0;
  std::unordered_map<node_t, double> reserves;
  std::unordered_map<node_t, double> residues;
  std::unordered_map<node_t, std::uint64_t> sp;
  std::unordered_map<node_t, std::uint64_t> rp;
  std::uint64_t pushbacks = 0;
  QueryStats stats;

  double rp_over_dout_sum = 0.0;  // sum over receives of 1/d_out(receiver)
  double sp_g_sum = 0.0;          // sum over pushbacks on v of g(v)

  double reserve(node_t v) const {
    auto it = reserves.find(v);
    return it == reserves.end() ? 0.0 : it->second;
  }
  double residue(node_t v) const {
    auto it = residues.find(v);
    return it == residues.end() ? 0.0 : it->second;
  }

  double t_eps_indeg() const { return static_cast<double>(pushbacks); }
  double t_eps_outdeg() const { return rp_over_dout_sum; }
  double t_eps_sqrtm() const { return std::sqrt(static_cast<double>(pushbacks) * sp_g_sum); }
};

/// Total un-pushed mass.
inline double residual_mass(const PushResult& pr) {
  double s = 0.0;
  for (const auto& [v, r] : pr.residues) s += r;
  return s;
}

enum class PushStep { proceed, abort };

namespace detail {

/// Worklist of nodes with residue > eps under the three selection orders.
/// For max_residue a lazy max-heap is used: an entry is pushed whenever a
/// residue changes to a value above eps, and entries whose key no longer
/// matches the current residue are skipped on pop.
class PushWorklist {
 public:
  PushWorklist(PushOrder order, double eps) : order_(order), eps_(eps) {}

  void on_residue_update(node_t v, double r) {
    if (!(r > eps_)) return;
    if (order_ == PushOrder::max_residue) {
      heap_.push({r, v});
    } else if (queued_.insert(v).second) {
      seq_.push_back(v);
    }
  }

  /// Next node to push, given the current residues. Returns nullopt when
  /// no residue exceeds eps.
  std::optional<node_t> pop(const std::unordered_map<node_t, double>& residues) {
    if (order_ == PushOrder::max_residue) {
      while (!heap_.empty()) {
        auto [key, v] = heap_.top();
        heap_.pop();
        auto it = residues.find(v);
        if (it != residues.end() && it->second == key) return v;
      }
      return std::nullopt;
    }
    while (!seq_.empty()) {
      node_t v;
      if (order_ == PushOrder::fifo) {
        v = seq_.front();
        seq_.pop_front();
      } else {
        v = seq_.back();
        seq_.pop_back();
      }
      queued_.erase(v);
      auto it = residues.find(v);
      if (it != residues.end() && it->second > eps_) return v;
    }
    return std::nullopt;
  }

 private:
  PushOrder order_;
  double eps_;
  std::deque<node_t> seq_;
  std::unordered_set<node_t> queued_;
  std::priority_queue<std::pair<double, node_t>> heap_;
};

}  // namespace detail

/// Backward push with an abort hook: after every pushback the callback
/// sees the partial result (including the running stopping quantities and
/// this run's query count) and may abort, in which case nullopt is
/// returned and the oracle retains the queries already spent.
template <GraphOracle Oracle, class OnStep>
std::optional<PushResult> approx_contributions_guarded(Oracle& oracle, node_t t, double alpha,
                                                       double eps, PushOrder order,
                                                       OnStep&& on_step) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParamError("alpha must lie in (0,1)");
  if (!(eps > 0.0)) throw ParamError("epsilon must be positive");
  if (t >= oracle.num_nodes()) throw ParamError("target node out of range");

  const QueryStats start = oracle.snapshot_stats();
  PushResult out;
  out.target = t;
  out.alpha = alpha;
  out.epsilon = eps;
  out.residues[t] = 1.0;

  detail::PushWorklist worklist(order, eps);
  worklist.on_residue_update(t, 1.0);

  while (auto picked = worklist.pop(out.residues)) {
    const node_t v = *picked;
    const double r = out.residues[v];
    out.reserves[v] += alpha * r;
    out.residues.erase(v);
    out.sp[v] += 1;
    out.pushbacks += 1;
    double g_v = 0.0;
    const std::uint32_t din = oracle.indeg(v);
    for (std::uint32_t i = 1; i <= din; ++i) {
      const node_t u = oracle.parent(v, i);
      const double dout_u = static_cast<double>(oracle.outdeg(u));
      double& ru = out.residues[u];
      ru += (1.0 - alpha) * r / dout_u;
      out.rp[u] += 1;
      out.rp_over_dout_sum += 1.0 / dout_u;
      g_v += 1.0 / dout_u;
      worklist.on_residue_update(u, ru);
    }
    out.sp_g_sum += g_v;
    out.stats = oracle.snapshot_stats() - start;
    if (on_step(static_cast<const PushResult&>(out)) == PushStep::abort) return std::nullopt;
  }
  out.stats = oracle.snapshot_stats() - start;
  return out;
}

/// ApproxContributions: repeatedly pick a node v with residue above eps and
/// push it back, moving alpha*r(v) into the reserve and (1-alpha)*r(v)/d_out(u)
/// to each parent u. Terminates when every residue is at most eps (strict
/// comparison: equality terminates); eps >= 1 returns the initial state
/// untouched. On return, pi(v,t) - eps <= p(v) <= pi(v,t) for every v.
template <GraphOracle Oracle>
PushResult approx_contributions(Oracle& oracle, node_t t, double alpha, double eps,
                                PushOrder order = PushOrder::fifo) {
  auto result = approx_contributions_guarded(oracle, t, alpha, eps, order,
                                             [](const PushResult&) { return PushStep::proceed; });
  return std::move(*result);
}

inline const char* to_string(PushOrder order) {
  switch (order) {
    case PushOrder::fifo: return "fifo";
    case PushOrder::lifo: return "lifo";
    case PushOrder::max_residue: return "max_residue";
  }
  return "?";
}

}  // namespace locpr
