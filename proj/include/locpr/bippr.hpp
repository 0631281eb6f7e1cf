#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "locpr/backward_push.hpp"
#include "locpr/errors.hpp"
#include "locpr/estimate.hpp"
#include "locpr/graph.hpp"
#include "locpr/ground_truth.hpp"
#include "locpr/monte_carlo.hpp"
#include "locpr/oracle.hpp"
#include "locpr/rng.hpp"

namespace locpr {

namespace detail {

inline double walk_part(const PushResult& pr, node_t terminal) {
  auto it = pr.residues.find(terminal);
  return it == pr.residues.end() ? 0.0 : it->second;
}

inline double reserve_sum(const PushResult& pr) {
  double s = 0.0;
  for (const auto& [v, p] : pr.reserves) s += p;
  return s;
}

}  // namespace detail

/// Fixed-parameter bidirectional estimator: one backward-push run at eps,
/// then n_r discounted walks. Returns
///   (1/n) * sum_v p(v) + (1/n_r) * sum_walks r(terminal),
/// which is unbiased for pi(t) with variance at most eps*pi(t)/n_r.
template <GraphOracle Oracle, class Rng>
Estimate bippr_fixed(Oracle& oracle, node_t t, double alpha, double eps, std::uint64_t n_r,
                     Rng& rng, PushOrder order = PushOrder::fifo) {
  if (n_r < 1) throw ParamError("n_r must be at least 1");
  const QueryStats start = oracle.snapshot_stats();
  PushResult pr = approx_contributions(oracle, t, alpha, eps, order);
  const double base = detail::reserve_sum(pr) / static_cast<double>(oracle.num_nodes());
  const WalkConfig cfg = WalkConfig::make(alpha);
  double walk_sum = 0.0;
  for (std::uint64_t k = 0; k < n_r; ++k)
    walk_sum += detail::walk_part(pr, sample_node(oracle, cfg, rng));
  Estimate est;
  est.value = base + walk_sum / static_cast<double>(n_r);
  est.eps = eps;
  est.n_r = n_r;
  est.trials = 1;
  est.queries = oracle.snapshot_stats() - start;
  est.converged_by = ConvergedBy::fixed;
  est.reserve_floor = base;
  return est;
}

/// Draw `samples` single-walk bidirectional estimators q(t) and report
/// their sample variance next to the bound eps * pi(t), with pi(t) solved
/// exactly on the reference graph. Diagnostic for the variance lemma; the
/// contract is var_hat <= bound * (1 + slack).
template <GraphOracle Oracle, class Rng>
std::pair<double, double> empirical_variance_check(Oracle& oracle, const Graph& reference, node_t t,
                                                   double alpha, double eps, std::uint64_t samples,
                                                   Rng& rng) {
  if (samples < 2) throw ParamError("need at least 2 samples");
  PushResult pr = approx_contributions(oracle, t, alpha, eps);
  const double base = detail::reserve_sum(pr) / static_cast<double>(oracle.num_nodes());
  const WalkConfig cfg = WalkConfig::make(alpha);
  double sum = 0.0, sumsq = 0.0;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const double q = base + detail::walk_part(pr, sample_node(oracle, cfg, rng));
    sum += q;
    sumsq += q * q;
  }
  const double ns = static_cast<double>(samples);
  const double mean = sum / ns;
  const double var_hat = std::max(0.0, (sumsq - ns * mean * mean) / (ns - 1.0));
  const double bound = eps * exact_pagerank(reference, alpha)[t];
  return {var_hat, bound};
}

struct AdaptiveOptions {
  /// Certification constant K: terminate once n_r * median estimate
  /// reaches K * eps / c^2.
  double cert_k = 48.0;
  /// First budget in oracle queries; doubles each round.
  std::uint64_t initial_budget = 64;
  /// Query cap before the whole-graph fallback; callers that know the
  /// graph pass ~2(n+m). The default never triggers.
  std::uint64_t work_cap = std::numeric_limits<std::uint64_t>::max();
  PushOrder order = PushOrder::fifo;
};

/// Adaptive bidirectional estimation of pi(t) to a multiplicative (1 +/- c)
/// factor with failure probability at most p_f.
///
/// For each budget B = B0, 2*B0, ...: spend up to B/2 on backward push,
/// halving eps from 1 and keeping the last run that completed within the
/// half-budget; spend the other half on discounted walks, split across
/// ceil(8*ln(1/p_f)) median-trick repetitions when p_f < 1/3 (only the
/// Monte Carlo phase repeats). Certify and return once
/// n_r * pi_hat >= K * eps / c^2. If the budget would exceed the work cap
/// without certification, the whole graph is read through the oracle and
/// the exact score of the explored graph is returned, flagged.
///
/// Walk randomness is drawn from streams of the master seed indexed by
/// (round, trial), so results are bit-identical for a fixed seed.
template <GraphOracle Oracle>
Estimate bippr_adaptive(Oracle& oracle, node_t t, double alpha, double c, double p_f,
                        std::uint64_t master_seed, AdaptiveOptions opt = {}) {
  if (!(c > 0.0 && c < 1.0)) throw ParamError("c must lie in (0,1)");
  if (!(p_f > 0.0 && p_f < 1.0)) throw ParamError("p_f must lie in (0,1)");
  if (t >= oracle.num_nodes()) throw ParamError("target node out of range");

  const QueryStats start = oracle.snapshot_stats();
  const std::uint32_t trials =
      p_f < 1.0 / 3.0 ? static_cast<std::uint32_t>(std::ceil(8.0 * std::log(1.0 / p_f))) : 1u;
  const WalkConfig cfg = WalkConfig::make(alpha, master_seed);
  const double walk_cost = 1.0 + 2.0 * (1.0 - alpha) / alpha;  // expected queries per walk

  std::uint64_t round = 0;
  for (std::uint64_t budget = opt.initial_budget;; budget *= 2, ++round) {
    if (budget > opt.work_cap) break;

    // Push phase: halve eps while the cumulative push cost fits in B/2.
    // The eps = 1 run never pushes, so a completed run always exists.
    const std::uint64_t push_budget = budget / 2;
    PushResult best;
    best.target = t;
    best.alpha = alpha;
    best.epsilon = 1.0;
    best.residues[t] = 1.0;
    std::uint64_t push_spent = 0;
    for (double eps = 0.5;; eps /= 2.0) {
      auto guard = [&](const PushResult& partial) {
        return push_spent + partial.stats.local_total() > push_budget ? PushStep::abort
                                                                      : PushStep::proceed;
      };
      auto run = approx_contributions_guarded(oracle, t, alpha, eps, opt.order, guard);
      if (!run) break;
      push_spent += run->stats.local_total();
      const bool exact = run->residues.empty();
      best = std::move(*run);
      if (exact) break;
    }
    const double base = detail::reserve_sum(best) / static_cast<double>(oracle.num_nodes());

    // Residues fully drained: the estimator is deterministic and exact.
    if (best.residues.empty()) {
      Estimate est;
      est.value = base;
      est.eps = best.epsilon;
      est.n_r = 0;
      est.trials = trials;
      est.queries = oracle.snapshot_stats() - start;
      est.converged_by = ConvergedBy::adaptive_certified;
      est.reserve_floor = base;
      return est;
    }

    // Walk phase: the other half of the budget, split across the trials.
    const std::uint64_t n_r = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(static_cast<double>(budget - push_budget) /
                                      (static_cast<double>(trials) * walk_cost)));
    std::vector<double> trial_estimates(trials);
    for (std::uint32_t j = 0; j < trials; ++j) {
      auto rng = make_stream(master_seed, 1 + round * trials + j);
      double walk_sum = 0.0;
      for (std::uint64_t k = 0; k < n_r; ++k)
        walk_sum += detail::walk_part(best, sample_node(oracle, cfg, rng));
      trial_estimates[j] = base + walk_sum / static_cast<double>(n_r);
    }
    std::sort(trial_estimates.begin(), trial_estimates.end());
    const double pi_hat = trial_estimates[trials / 2];

    if (static_cast<double>(n_r) * pi_hat >= opt.cert_k * best.epsilon / (c * c)) {
      Estimate est;
      est.value = pi_hat;
      est.eps = best.epsilon;
      est.n_r = n_r;
      est.trials = trials;
      est.queries = oracle.snapshot_stats() - start;
      est.converged_by = ConvergedBy::adaptive_certified;
      est.reserve_floor = base;
      return est;
    }
  }

  // Work cap reached without certification: read the whole graph through
  // the oracle and solve it exactly.
  const node_t n = oracle.num_nodes();
  std::vector<Edge> edges;
  for (node_t v = 0; v < n; ++v) {
    const std::uint32_t dout = oracle.outdeg(v);
    for (std::uint32_t i = 1; i <= dout; ++i) edges.push_back({v, oracle.child(v, i)});
  }
  Graph explored(n, edges);
  Estimate est;
  est.value = exact_pagerank(explored, alpha)[t];
  est.eps = 0.0;
  est.n_r = 0;
  est.trials = trials;
  est.queries = oracle.snapshot_stats() - start;
  est.converged_by = ConvergedBy::full_exploration;
  est.reserve_floor = 0.0;
  return est;
}

}  // namespace locpr
