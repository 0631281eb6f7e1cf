#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <vector>

#include "locpr/ground_truth.hpp"
#include "locpr/monte_carlo.hpp"
#include "support.hpp"

using namespace locpr;

TEST_CASE("walk config cap keeps truncation probability tiny") {
  WalkConfig cfg = WalkConfig::make(0.2);
  CHECK(cfg.max_steps >= static_cast<std::uint32_t>(std::ceil(std::log(1e-15) / std::log(0.8))));
  CHECK_THROWS_AS(WalkConfig::make(0.0), ParamError);
  CHECK_THROWS_AS(WalkConfig::make(1.0), ParamError);
}

TEST_CASE("sample_node on the self-loop always lands on node 0") {
  Graph g = test_support::self_loop();
  AccessOracle oracle(g);
  WalkConfig cfg = WalkConfig::make(0.2);
  auto rng = make_stream(1, 1);
  for (int k = 0; k < 100; ++k) REQUIRE(sample_node(oracle, cfg, rng) == 0);
  CHECK(oracle.snapshot_stats().n_jump == 100);
}

TEST_CASE("sample_node marginals match PageRank") {
  SECTION("two-cycle symmetry") {
    Graph g = test_support::two_cycle();
    AccessOracle oracle(g);
    WalkConfig cfg = WalkConfig::make(0.2);
    auto rng = make_stream(2, 1);
    int zero = 0;
    const int draws = 10000;
    for (int k = 0; k < draws; ++k)
      if (sample_node(oracle, cfg, rng) == 0) ++zero;
    const double freq = static_cast<double>(zero) / draws;
    CHECK(freq > 0.45);
    CHECK(freq < 0.55);
  }
  SECTION("chain to sink: pi(1) = 0.9") {
    Graph g = test_support::chain_to_sink();
    AccessOracle oracle(g);
    WalkConfig cfg = WalkConfig::make(0.2);
    auto rng = make_stream(3, 1);
    int ones = 0;
    const int draws = 100000;
    for (int k = 0; k < draws; ++k)
      if (sample_node(oracle, cfg, rng) == 1) ++ones;
    const double freq = static_cast<double>(ones) / draws;
    CHECK(freq > 0.89);
    CHECK(freq < 0.91);
  }
}

TEST_CASE("walk lengths follow the geometric law") {
  // chi-square against Geometric(alpha) on 1e5 walks, significance 0.001
  Graph g = test_support::two_cycle();
  AccessOracle oracle(g);
  const double alpha = 0.2;
  WalkConfig cfg = WalkConfig::make(alpha);
  auto rng = make_stream(4, 1);
  const int walks = 100000;
  const int bins = 20;  // lengths 0..19 plus a tail bin
  std::vector<double> observed(bins + 1, 0.0);
  for (int k = 0; k < walks; ++k) {
    WalkTally tally;
    sample_node(oracle, cfg, rng, &tally);
    observed[std::min<std::uint64_t>(tally.steps, bins)] += 1.0;
  }
  double stat = 0.0;
  double tail = 1.0;
  for (int len = 0; len < bins; ++len) {
    const double prob = alpha * std::pow(1.0 - alpha, len);
    tail -= prob;
    const double expected = prob * walks;
    stat += (observed[len] - expected) * (observed[len] - expected) / expected;
  }
  stat += (observed[bins] - tail * walks) * (observed[bins] - tail * walks) / (tail * walks);
  // chi-square critical value, df = 20, upper tail 0.001
  CHECK(stat < 45.3147);
}

TEST_CASE("a mis-set cap is recorded as truncations and the walk restarts") {
  Graph g = test_support::two_cycle();
  AccessOracle oracle(g);
  WalkConfig cfg = WalkConfig::make(0.2);
  cfg.max_steps = 0;  // forces a restart whenever the first coin keeps walking
  auto rng = make_stream(5, 1);
  WalkTally tally;
  for (int k = 0; k < 200; ++k) sample_node(oracle, cfg, rng, &tally);
  CHECK(tally.walks == 200);
  CHECK(tally.truncations > 0);
  CHECK(tally.steps == 0);
}

TEST_CASE("mc_pagerank examples") {
  SECTION("self-loop returns exactly 1") {
    Graph g = test_support::self_loop();
    AccessOracle oracle(g);
    WalkConfig cfg = WalkConfig::make(0.2);
    auto rng = make_stream(6, 1);
    Estimate est = mc_pagerank(oracle, 0, cfg, 1, rng);
    CHECK(est.value == 1.0);
    CHECK(est.n_r == 1);
    CHECK(est.converged_by == ConvergedBy::fixed);
  }
  SECTION("two-cycle lands near one half") {
    Graph g = test_support::two_cycle();
    AccessOracle oracle(g);
    WalkConfig cfg = WalkConfig::make(0.2);
    auto rng = make_stream(7, 1);
    Estimate est = mc_pagerank(oracle, 0, cfg, 10000, rng);
    CHECK(est.value > 0.45);
    CHECK(est.value < 0.55);
    CHECK(est.queries.n_jump == 10000);
  }
  SECTION("chain to sink lands near 0.9") {
    Graph g = test_support::chain_to_sink();
    AccessOracle oracle(g);
    WalkConfig cfg = WalkConfig::make(0.2);
    auto rng = make_stream(8, 1);
    Estimate est = mc_pagerank(oracle, 1, cfg, 100000, rng);
    CHECK(est.value > 0.89);
    CHECK(est.value < 0.91);
  }
}

TEST_CASE("mc_pagerank is unbiased within three standard errors") {
  Graph g = test_support::random_digraph(30, 0.12, 31);
  auto pi = exact_pagerank(g, 0.2);
  const node_t t = 2;
  WalkConfig cfg = WalkConfig::make(0.2);
  const std::uint64_t samples = 20000;
  AccessOracle oracle(g);
  auto rng = make_stream(9, 1);
  Estimate est = mc_pagerank(oracle, t, cfg, samples, rng);
  const double se = std::sqrt(pi[t] / static_cast<double>(samples));
  CHECK(std::abs(est.value - pi[t]) <= 3.0 * se);
}

TEST_CASE("a fixed seed reproduces the estimate bit for bit") {
  Graph g = test_support::random_digraph(20, 0.15, 77);
  WalkConfig cfg = WalkConfig::make(0.2);
  auto run = [&] {
    AccessOracle oracle(g);
    auto rng = make_stream(42, 3);
    return mc_pagerank(oracle, 0, cfg, 5000, rng);
  };
  Estimate a = run();
  Estimate b = run();
  CHECK(a.value == b.value);
  CHECK(a.queries == b.queries);
}

TEST_CASE("each sample returns exactly one node") {
  // the indicator variables over v sum to one per call; this is the
  // structural fact behind their negative correlation
  Graph g = test_support::random_digraph(15, 0.2, 99);
  AccessOracle oracle(g);
  WalkConfig cfg = WalkConfig::make(0.2);
  auto rng = make_stream(10, 1);
  for (int k = 0; k < 100; ++k) {
    node_t v = sample_node(oracle, cfg, rng);
    REQUIRE(v < g.num_nodes());
  }
}
