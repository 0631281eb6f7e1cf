#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "locpr/contrib_detect.hpp"
#include "locpr/ground_truth.hpp"
#include "locpr/hard_instances.hpp"
#include "support.hpp"

using namespace locpr;

namespace {

constexpr std::array<DetectVariant, 4> kVariants{DetectVariant::indeg, DetectVariant::outdeg,
                                                 DetectVariant::sqrt_m, DetectVariant::combined};

std::set<node_t> true_delta_set(const Graph& g, node_t t, double alpha, double delta) {
  auto pi = exact_pagerank(g, alpha);
  auto ct = exact_contributions(g, t, alpha);
  const double threshold = delta * g.num_nodes() * pi[t];
  std::set<node_t> nodes;
  for (node_t v = 0; v < g.num_nodes(); ++v)
    if (ct[v] >= threshold) nodes.insert(v);
  return nodes;
}

bool is_superset(const std::vector<node_t>& result, const std::set<node_t>& truth) {
  std::set<node_t> got(result.begin(), result.end());
  return std::includes(got.begin(), got.end(), truth.begin(), truth.end());
}

}  // namespace

TEST_CASE("known-npi detection on the two-cycle") {
  Graph g = test_support::two_cycle();
  AccessOracle oracle(g);
  // npi = 2 * 0.5 = 1, so eps = 0.4 * 1 / 2 = 0.2; both nodes contribute
  // at least 0.4 to target 0
  DetectionResult res = detect_known_npi(oracle, 0, 0.2, 0.4, 1.0);
  CHECK(res.nodes == std::vector<node_t>{0, 1});
  CHECK(res.final_eps == 0.2);
  CHECK(res.variant == DetectVariant::known_npi);
  REQUIRE(res.t_eps_history.size() == 1);
  CHECK(res.t_eps_history[0].eps == 0.2);
}

TEST_CASE("known-npi detection on the self-loop") {
  Graph g = test_support::self_loop();
  AccessOracle oracle(g);
  DetectionResult res = detect_known_npi(oracle, 0, 0.2, 0.5, 1.0);
  CHECK(res.nodes == std::vector<node_t>{0});
}

TEST_CASE("known-npi with an empty true set stays within the half-threshold set") {
  // chain 0 -> 1, 1 -> 1 with t = 1: delta * npi = 0.99 * 1.8 = 1.782
  // exceeds every contribution, so the true set is empty; the result must
  // still be a subset of the (delta/2)-contributing set {1}.
  Graph g = test_support::chain_to_sink();
  AccessOracle oracle(g);
  DetectionResult res = detect_known_npi(oracle, 1, 0.2, 0.99, 1.8);
  auto half_set = true_delta_set(g, 1, 0.2, 0.99 / 2.0);
  CHECK(half_set == std::set<node_t>{1});
  CHECK(is_superset(res.nodes, {}));
  for (node_t v : res.nodes) CHECK(half_set.count(v) == 1);
}

TEST_CASE("known-npi result is sandwiched between the two sets on random graphs") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = test_support::random_digraph(40, 0.1, 6000 + seed);
    const node_t t = 7;
    const double alpha = 0.2;
    auto pi = exact_pagerank(g, alpha);
    const double npi = g.num_nodes() * pi[t];
    for (double delta : {0.3, 0.05}) {
      AccessOracle oracle(g);
      DetectionResult res = detect_known_npi(oracle, t, alpha, delta, npi);
      REQUIRE(is_superset(res.nodes, true_delta_set(g, t, alpha, delta)));
      auto half = true_delta_set(g, t, alpha, delta / 2.0);
      for (node_t v : res.nodes) REQUIRE(half.count(v) == 1);
    }
  }
}

TEST_CASE("parameter validation") {
  Graph g = test_support::two_cycle();
  AccessOracle oracle(g);
  CHECK_THROWS_AS(detect_known_npi(oracle, 0, 0.2, 0.0, 1.0), ParamError);
  CHECK_THROWS_AS(detect_known_npi(oracle, 0, 0.2, 1.0, 1.0), ParamError);
  CHECK_THROWS_AS(detect_adaptive(oracle, 0, 0.2, 1.5, DetectVariant::indeg), ParamError);
  CHECK_THROWS_AS(detect_adaptive(oracle, 0, 0.2, 0.5, DetectVariant::known_npi), ParamError);
}

TEST_CASE("adaptive detection on the tiny fixtures") {
  SECTION("self-loop") {
    Graph g = test_support::self_loop();
    for (DetectVariant variant : kVariants) {
      AccessOracle oracle(g);
      DetectionResult res = detect_adaptive(oracle, 0, 0.2, 0.5, variant);
      CHECK(res.nodes == std::vector<node_t>{0});
      CHECK(!res.whole_graph_fallback);
    }
  }
  SECTION("two-cycle with explicit budget constant") {
    Graph g = test_support::two_cycle();
    DetectOptions opt;
    opt.budget_constant = 16.0;
    AccessOracle oracle(g);
    DetectionResult res = detect_adaptive(oracle, 0, 0.2, 0.4, DetectVariant::indeg, opt);
    REQUIRE(is_superset(res.nodes, true_delta_set(g, 0, 0.2, 0.4)));
  }
}

TEST_CASE("final eps is a power of one half") {
  Graph g = test_support::random_digraph(30, 0.12, 61);
  AccessOracle oracle(g);
  DetectionResult res = detect_adaptive(oracle, 2, 0.2, 0.1, DetectVariant::indeg);
  const double k = std::log2(1.0 / res.final_eps);
  CHECK(k == std::floor(k));
  REQUIRE(!res.t_eps_history.empty());
  CHECK(res.t_eps_history.front().eps == 1.0);
  CHECK(res.t_eps_history.back().eps == res.final_eps);
}

TEST_CASE("adaptive detection is a superset of ground truth on random graphs") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Graph g = test_support::random_digraph(35, 0.12, 7000 + seed);
    const node_t t = 3;
    for (double delta : {0.3, 0.08}) {
      auto truth = true_delta_set(g, t, 0.2, delta);
      for (DetectVariant variant : kVariants) {
        AccessOracle oracle(g);
        DetectionResult res = detect_adaptive(oracle, t, 0.2, delta, variant);
        REQUIRE(is_superset(res.nodes, truth));
      }
    }
  }
}

TEST_CASE("adaptive detection on a generated hard instance") {
  ContributionParams prm;
  prm.n_budget = 120;
  prm.m_budget = 400;
  prm.d = 4;
  prm.v_size = 8;
  auto [g, meta] = gen_contribution_hard(prm);
  auto truth = true_delta_set(g, meta.t, meta.alpha, meta.delta);
  // metadata guarantee: all of U is delta-contributing
  for (node_t u = meta.u.begin; u < meta.u.end; ++u) REQUIRE(truth.count(u) == 1);
  for (DetectVariant variant : kVariants) {
    AccessOracle oracle(g);
    DetectionResult res = detect_adaptive(oracle, meta.t, meta.alpha, meta.delta, variant);
    REQUIRE(is_superset(res.nodes, truth));
  }
}

TEST_CASE("per-run stopping quantities are bounded by n pi(t) / eps") {
  Graph g = test_support::random_digraph(40, 0.1, 88);
  const node_t t = 9;
  const double alpha = 0.2;
  auto pi = exact_pagerank(g, alpha);
  const double npi = g.num_nodes() * pi[t];
  AccessOracle oracle(g);
  DetectionResult res = detect_adaptive(oracle, t, alpha, 0.05, DetectVariant::combined);
  for (const TEpsEntry& e : res.t_eps_history) {
    REQUIRE(e.t_indeg <= npi / (alpha * e.eps) + 1.0);
    REQUIRE(e.t_outdeg <= npi / (alpha * e.eps) + 1.0);
    // Cauchy-Schwarz form: geometric mean of two quantities within the bound
    REQUIRE(e.t_sqrtm <= 1.3 * npi / (alpha * e.eps) + 1.0);
  }
}

TEST_CASE("budget accounting: local queries against Delta times the T sums") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Graph g = test_support::random_digraph(40, 0.12, 9000 + seed);
    const auto [din, dout] = max_degrees(g);
    const node_t t = 1;
    const double delta = 0.05;

    auto run = [&](DetectVariant variant) {
      AccessOracle oracle(g);
      return detect_adaptive(oracle, t, 0.2, delta, variant);
    };

    DetectionResult by_in = run(DetectVariant::indeg);
    double sum_in = 0.0;
    for (const auto& e : by_in.t_eps_history) sum_in += e.t_indeg;
    REQUIRE(static_cast<double>(by_in.stats.local_total()) <= 3.0 * din * sum_in + 3.0);

    DetectionResult by_out = run(DetectVariant::outdeg);
    double sum_out = 0.0;
    for (const auto& e : by_out.t_eps_history) sum_out += e.t_outdeg;
    REQUIRE(static_cast<double>(by_out.stats.local_total()) <= 4.0 * dout * sum_out + 4.0);

    DetectionResult by_sqrt = run(DetectVariant::sqrt_m);
    double sum_sqrt = 0.0;
    for (const auto& e : by_sqrt.t_eps_history) sum_sqrt += e.t_sqrtm;
    REQUIRE(static_cast<double>(by_sqrt.stats.local_total()) <=
            4.0 * std::sqrt(static_cast<double>(g.num_edges())) * sum_sqrt + 4.0);
  }
}

TEST_CASE("tracking the stopping quantities costs no extra queries") {
  Graph g = test_support::random_digraph(30, 0.12, 123);
  const node_t t = 4;
  AccessOracle adaptive_oracle(g);
  DetectionResult res =
      detect_adaptive(adaptive_oracle, t, 0.2, 0.1, DetectVariant::combined);
  // replay the completed schedule with plain runs
  QueryStats replay;
  for (const TEpsEntry& e : res.t_eps_history) {
    AccessOracle oracle(g);
    PushResult pr = approx_contributions(oracle, t, 0.2, e.eps);
    replay += pr.stats;
  }
  // the detection additionally spent queries on the aborted final run
  CHECK(res.stats.local_total() >= replay.local_total());
  CHECK(res.stats.n_jump == 0);
}

TEST_CASE("work cap falls back to whole-graph exploration") {
  Graph g = test_support::random_digraph(30, 0.15, 321);
  DetectOptions opt;
  opt.work_cap = 10;  // far below any useful budget
  AccessOracle oracle(g);
  DetectionResult res = detect_adaptive(oracle, 0, 0.2, 1e-4, DetectVariant::indeg, opt);
  CHECK(res.whole_graph_fallback);
  REQUIRE(res.nodes.size() == g.num_nodes());
  // trivially a superset of any contributing set
  REQUIRE(is_superset(res.nodes, true_delta_set(g, 0, 0.2, 1e-4)));
}
