#pragma once

#include <cmath>
#include <cstdint>

#include "locpr/errors.hpp"
#include "locpr/estimate.hpp"
#include "locpr/oracle.hpp"
#include "locpr/rng.hpp"

namespace locpr {

/// Random-walk configuration. max_steps is a safety valve against a
/// mis-set cap; the default keeps the truncation probability per walk
/// below 1e-15.
struct WalkConfig {
  double alpha = 0.2;
  std::uint64_t seed = 0;
  std::uint32_t max_steps = 0;

  static WalkConfig make(double alpha, std::uint64_t seed = 0) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParamError("alpha must lie in (0,1)");
    WalkConfig cfg;
    cfg.alpha = alpha;
    cfg.seed = seed;
    cfg.max_steps = min_max_steps(alpha);
    return cfg;
  }
  /// Smallest cap with truncation probability below 1e-15.
  static std::uint32_t min_max_steps(double alpha) {
    return static_cast<std::uint32_t>(std::ceil(std::log(1e-15) / std::log(1.0 - alpha)));
  }
};

/// Per-walk bookkeeping, including truncation restarts.
struct WalkTally {
  std::uint64_t walks = 0;
  std::uint64_t steps = 0;
  std::uint64_t truncations = 0;
};

/// Simulate one discounted random walk from a uniformly random start and
/// return its terminal node; the marginal law of the result is the
/// PageRank distribution. Termination is sampled per step with probability
/// alpha, and the uniform child pick uses an unbiased bounded draw. A walk
/// exceeding max_steps is recorded as a truncation and restarted.
template <GraphOracle Oracle, class Rng>
node_t sample_node(Oracle& oracle, const WalkConfig& cfg, Rng& rng, WalkTally* tally = nullptr) {
  for (;;) {
    node_t v = oracle.jump(rng);
    std::uint32_t steps = 0;
    bool truncated = false;
    for (;;) {
      if (uniform_unit(rng) < cfg.alpha) break;
      if (steps >= cfg.max_steps) {
        truncated = true;
        break;
      }
      const std::uint32_t dout = oracle.outdeg(v);
      v = oracle.child(v, 1 + static_cast<std::uint32_t>(uniform_index(rng, dout)));
      ++steps;
    }
    if (tally) {
      tally->steps += steps;
      if (truncated) ++tally->truncations;
    }
    if (!truncated) {
      if (tally) ++tally->walks;
      return v;
    }
  }
}

/// Plain Monte Carlo estimate of pi(t): the fraction of n_samples
/// discounted walks terminating at t. Unbiased.
template <GraphOracle Oracle, class Rng>
Estimate mc_pagerank(Oracle& oracle, node_t t, const WalkConfig& cfg, std::uint64_t n_samples,
                     Rng& rng, WalkTally* tally = nullptr) {
  if (n_samples < 1) throw ParamError("n_samples must be at least 1");
  if (t >= oracle.num_nodes()) throw ParamError("target node out of range");
  const QueryStats start = oracle.snapshot_stats();
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < n_samples; ++k)
    if (sample_node(oracle, cfg, rng, tally) == t) ++hits;
  Estimate est;
  est.value = static_cast<double>(hits) / static_cast<double>(n_samples);
  est.eps = 0.0;
  est.n_r = n_samples;
  est.trials = 1;
  est.queries = oracle.snapshot_stats() - start;
  est.converged_by = ConvergedBy::fixed;
  est.reserve_floor = 0.0;
  return est;
}

}  // namespace locpr
