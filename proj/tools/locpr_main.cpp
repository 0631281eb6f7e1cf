// Command-line frontend and benchmark harness for the local PageRank
// library: runs the estimators, validates them against ground truth, sweeps
// parameters on generated hard instances, and emits machine-readable data.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "locpr/locpr.hpp"

using nlohmann::json;

namespace {

constexpr const char* kCsvSchema = "locpr-bench-1";
constexpr const char* kCsvHeader =
    "schema,command,graph,algo,sweep,x,n,m,t,alpha,eps,delta,c,pf,nr,samples,seed,variant,order,"
    "value,pushbacks,q_indeg,q_outdeg,q_parent,q_child,q_jump,q_local,wall_ms,gt_value,max_err,"
    "superset,bound_ok";

struct GraphSpec {
  std::string path;
  std::string gen;  // "", "contrib", "pr-family"
  std::uint64_t n = 1000;
  std::uint64_t m = 4000;
  std::uint32_t d = 4;
  std::uint64_t vsize = 8;
  std::uint64_t ysize = 0;
  std::uint32_t p = 1;
  std::uint32_t i = 0;
  std::uint32_t arity = 0;
  bool multilevel = false;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--graph", path, "edge-list file to load");
    cmd->add_option("--gen", gen, "generate a hard instance instead of loading")
        ->check(CLI::IsMember({"contrib", "pr-family"}));
    cmd->add_option("--n", n, "generator node budget");
    cmd->add_option("--m", m, "generator edge budget");
    cmd->add_option("--d", d, "generator degree parameter");
    cmd->add_option("--vsize", vsize, "generator |V| (0 = balanced sqrt(n/d))");
    cmd->add_option("--ysize", ysize, "generator |Y| (0 = default)");
    cmd->add_option("--p", p, "family size");
    cmd->add_option("--i", i, "family index");
    cmd->add_option("--arity", arity, "multi-level tree arity");
    cmd->add_flag("--multilevel", multilevel, "use the multi-level structure");
  }

  locpr::node_t effective_vsize() const {
    if (vsize > 0) return static_cast<locpr::node_t>(vsize);
    const double balanced = std::sqrt(static_cast<double>(n) / std::max(1u, d));
    return static_cast<locpr::node_t>(std::max(1.0, std::round(balanced)));
  }

  struct Loaded {
    locpr::Graph graph;
    std::optional<locpr::HardInstanceMeta> meta;
    std::string descriptor;
  };

  Loaded load(double alpha) const {
    if (!path.empty() && !gen.empty())
      throw CLI::ValidationError("graph source", "--graph and --gen are mutually exclusive");
    if (!path.empty()) {
      std::ifstream in(path);
      if (!in) throw locpr::Error("cannot open graph file: " + path);
      return {locpr::load_edge_list(in), std::nullopt, path};
    }
    if (gen == "contrib") {
      locpr::ContributionParams prm;
      prm.n_budget = static_cast<locpr::node_t>(n);
      prm.m_budget = m;
      prm.d = d;
      prm.v_size = effective_vsize();
      prm.multi_level = multilevel;
      prm.arity = arity;
      prm.alpha = alpha;
      auto [g, meta] = locpr::gen_contribution_hard(prm);
      std::string desc = "gen:contrib(n=" + std::to_string(n) + ";m=" + std::to_string(m) +
                         ";d=" + std::to_string(d) + ";vsize=" + std::to_string(prm.v_size) + ")";
      return {std::move(g), std::move(meta), std::move(desc)};
    }
    if (gen == "pr-family") {
      locpr::PageRankFamilyParams prm;
      prm.n_budget = static_cast<locpr::node_t>(n);
      prm.m_budget = m;
      prm.d = d;
      prm.v_size = effective_vsize();
      prm.y_size = static_cast<locpr::node_t>(ysize);
      prm.p = p;
      prm.i = i;
      prm.multi_level = multilevel;
      prm.arity = arity;
      prm.alpha = alpha;
      auto [g, meta] = locpr::gen_pagerank_hard(prm);
      std::string desc = "gen:pr-family(n=" + std::to_string(n) + ";m=" + std::to_string(m) +
                         ";d=" + std::to_string(d) + ";vsize=" + std::to_string(prm.v_size) +
                         ";p=" + std::to_string(p) + ";i=" + std::to_string(i) + ")";
      return {std::move(g), std::move(meta), std::move(desc)};
    }
    throw CLI::ValidationError("graph source", "one of --graph or --gen is required");
  }
};

locpr::PushOrder parse_order(const std::string& name) {
  if (name == "fifo") return locpr::PushOrder::fifo;
  if (name == "lifo") return locpr::PushOrder::lifo;
  return locpr::PushOrder::max_residue;
}

locpr::DetectVariant parse_variant(const std::string& name) {
  if (name == "indeg") return locpr::DetectVariant::indeg;
  if (name == "outdeg") return locpr::DetectVariant::outdeg;
  if (name == "sqrtm") return locpr::DetectVariant::sqrt_m;
  return locpr::DetectVariant::combined;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

/// One benchmark/report row; carries every field needed to reproduce the
/// run bit-exactly (up to wall time).
struct Record {
  std::string command, graph, algo, sweep;
  double x = 0.0;
  std::uint64_t n = 0, m = 0;
  locpr::node_t t = 0;
  double alpha = 0.2, eps = 0.0, delta = 0.0, c = 0.0, pf = 0.0;
  std::uint64_t nr = 0, samples = 0, seed = 0;
  std::string variant, order;
  double value = 0.0;
  std::uint64_t pushbacks = 0;
  locpr::QueryStats queries;
  double wall_ms = 0.0;
  std::optional<double> gt_value, max_err;
  std::optional<bool> superset, bound_ok;

  json to_json_obj() const {
    json j{{"schema", kCsvSchema}, {"command", command}, {"graph", graph},
           {"algo", algo},         {"sweep", sweep},     {"x", x},
           {"n", n},               {"m", m},             {"t", t},
           {"alpha", alpha},       {"eps", eps},         {"delta", delta},
           {"c", c},               {"pf", pf},           {"nr", nr},
           {"samples", samples},   {"seed", seed},       {"variant", variant},
           {"order", order},       {"value", value},     {"pushbacks", pushbacks},
           {"queries", locpr::to_json(queries)},         {"wall_ms", wall_ms}};
    if (gt_value) j["gt_value"] = *gt_value;
    if (max_err) j["max_err"] = *max_err;
    if (superset) j["superset"] = *superset;
    if (bound_ok) j["bound_ok"] = *bound_ok;
    return j;
  }

  std::string to_csv_row() const {
    std::ostringstream out;
    out.precision(17);
    out << kCsvSchema << ',' << command << ',' << '"' << graph << '"' << ',' << algo << ','
        << sweep << ',' << x << ',' << n << ',' << m << ',' << t << ',' << alpha << ',' << eps
        << ',' << delta << ',' << c << ',' << pf << ',' << nr << ',' << samples << ',' << seed
        << ',' << variant << ',' << order << ',' << value << ',' << pushbacks << ','
        << queries.n_indeg << ',' << queries.n_outdeg << ',' << queries.n_parent << ','
        << queries.n_child << ',' << queries.n_jump << ',' << queries.local_total() << ','
        << wall_ms;
    auto opt_num = [&](const std::optional<double>& v) {
      out << ',';
      if (v) out << *v;
    };
    opt_num(gt_value);
    opt_num(max_err);
    out << ',';
    if (superset) out << (*superset ? "true" : "false");
    out << ',';
    if (bound_ok) out << (*bound_ok ? "true" : "false");
    return out.str();
  }
};

/// Least-squares slope of ln(y) against ln(x).
double loglog_slope(const std::vector<std::pair<double, double>>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(points.size());
  for (const auto& [x, y] : points) {
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

struct Output {
  std::string format = "json";

  void emit_records(const std::vector<Record>& records, const json& summary) const {
    if (format == "csv") {
      std::cout << kCsvHeader << '\n';
      for (const Record& r : records) std::cout << r.to_csv_row() << '\n';
      if (!summary.empty()) std::cerr << summary.dump() << '\n';
    } else {
      json j;
      j["records"] = json::array();
      for (const Record& r : records) j["records"].push_back(r.to_json_obj());
      for (auto& [key, val] : summary.items()) j[key] = val;
      std::cout << j.dump(2) << '\n';
    }
  }

  void emit_single(const Record& record, const json& extra) const {
    if (format == "csv") {
      std::cout << kCsvHeader << '\n' << record.to_csv_row() << '\n';
    } else {
      json j = record.to_json_obj();
      for (auto& [key, val] : extra.items()) j[key] = val;
      std::cout << j.dump(2) << '\n';
    }
  }
};

/// Max over s of |pi(s,t) - p(s) - sum_v pi(s,v) r(v)| against the exact
/// solvers; desk-scale only.
double invariant_residual(const locpr::Graph& g, locpr::node_t t, double alpha,
                          const locpr::PushResult& pr) {
  std::vector<double> expected = locpr::exact_contributions(g, t, alpha).values;
  for (const auto& [v, r] : pr.residues) {
    auto col = locpr::exact_contributions(g, v, alpha);
    for (locpr::node_t s = 0; s < g.num_nodes(); ++s) expected[s] -= r * col[s];
  }
  for (const auto& [s, p] : pr.reserves) expected[s] -= p;
  double worst = 0.0;
  for (double e : expected) worst = std::max(worst, std::abs(e));
  return worst;
}

int run_app(int argc, char** argv) {
  CLI::App app{"local PageRank contributions and single-node estimation toolkit"};
  app.require_subcommand(1);

  // ---------------- contributions ----------------
  auto* contributions = app.add_subcommand(
      "contributions", "backward push and delta-contributing-set detection");
  GraphSpec contrib_graph;
  contrib_graph.add_options(contributions);
  locpr::node_t c_t = 0;
  double c_alpha = 0.2, c_eps = 0.5, c_delta = 0.1, c_npi = 0.0, c_budget = 0.0;
  std::uint64_t c_seed = 0;
  std::string c_variant = "combined", c_order = "fifo";
  bool c_detect = false, c_verify = false;
  Output c_out;
  contributions->add_option("--t", c_t, "target node")->required();
  contributions->add_option("--alpha", c_alpha, "decay factor")->capture_default_str();
  contributions->add_option("--eps", c_eps, "push threshold")->capture_default_str();
  contributions->add_flag("--detect", c_detect, "detect the delta-contributing set");
  contributions->add_option("--delta", c_delta, "contributing-set threshold")
      ->capture_default_str();
  contributions->add_option("--npi", c_npi, "known n*pi(t) (enables the known-npi detector)");
  contributions->add_option("--variant", c_variant, "adaptive stopping variant")
      ->check(CLI::IsMember({"indeg", "outdeg", "sqrtm", "combined"}))
      ->capture_default_str();
  contributions->add_option("--order", c_order, "push order")
      ->check(CLI::IsMember({"fifo", "lifo", "max-residue"}))
      ->capture_default_str();
  contributions->add_option("--budget-const", c_budget,
                            "adaptive budget constant (0 = 4/alpha)");
  contributions->add_option("--seed", c_seed, "master seed")->capture_default_str();
  contributions->add_flag("--verify", c_verify, "compare against ground truth");
  contributions->add_option("--format", c_out.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  contributions->callback([&] {
    auto loaded = contrib_graph.load(c_alpha);
    const locpr::Graph& g = loaded.graph;
    if (c_t >= g.num_nodes()) throw locpr::ParamError("--t out of range");
    locpr::AccessOracle oracle(g);
    Record rec;
    rec.command = "contributions";
    rec.graph = loaded.descriptor;
    rec.n = g.num_nodes();
    rec.m = g.num_edges();
    rec.t = c_t;
    rec.alpha = c_alpha;
    rec.seed = c_seed;
    rec.order = c_order;
    json extra;
    const auto t0 = std::chrono::steady_clock::now();

    if (c_detect) {
      locpr::DetectionResult res;
      if (c_npi > 0.0) {
        res = locpr::detect_known_npi(oracle, c_t, c_alpha, c_delta, c_npi, parse_order(c_order));
      } else {
        locpr::DetectOptions opt;
        opt.order = parse_order(c_order);
        opt.budget_constant = c_budget;
        opt.work_cap = 2 * (g.num_nodes() + g.num_edges());
        res = locpr::detect_adaptive(oracle, c_t, c_alpha, c_delta, parse_variant(c_variant), opt);
      }
      rec.algo = c_npi > 0.0 ? "detect-known-npi" : "detect-adaptive";
      rec.delta = c_delta;
      rec.eps = res.final_eps;
      rec.variant = locpr::to_string(res.variant);
      rec.value = static_cast<double>(res.nodes.size());
      rec.queries = res.stats;
      rec.wall_ms = elapsed_ms(t0);
      extra["detection"] = locpr::to_json(res);
      if (c_verify) {
        auto pi = locpr::exact_pagerank(g, c_alpha);
        auto ct = locpr::exact_contributions(g, c_t, c_alpha);
        const double threshold = c_delta * g.num_nodes() * pi[c_t];
        bool superset = true;
        std::uint64_t truth_size = 0;
        std::set<locpr::node_t> got(res.nodes.begin(), res.nodes.end());
        for (locpr::node_t v = 0; v < g.num_nodes(); ++v)
          if (ct[v] >= threshold) {
            ++truth_size;
            if (!got.count(v)) superset = false;
          }
        rec.superset = superset;
        rec.gt_value = static_cast<double>(truth_size);
      }
    } else {
      locpr::PushResult pr =
          locpr::approx_contributions(oracle, c_t, c_alpha, c_eps, parse_order(c_order));
      rec.algo = "push";
      rec.eps = c_eps;
      rec.value = locpr::residual_mass(pr);
      rec.pushbacks = pr.pushbacks;
      rec.queries = pr.stats;
      rec.wall_ms = elapsed_ms(t0);
      extra["push"] = locpr::to_json(pr);
      if (c_verify) {
        auto pi = locpr::exact_pagerank(g, c_alpha);
        auto ct = locpr::exact_contributions(g, c_t, c_alpha);
        double max_err = 0.0;
        for (locpr::node_t v = 0; v < g.num_nodes(); ++v)
          max_err = std::max(max_err, ct[v] - pr.reserve(v));
        rec.max_err = max_err;
        const double npi = g.num_nodes() * pi[c_t];
        rec.bound_ok =
            static_cast<double>(pr.pushbacks) <= npi / (c_alpha * c_eps) + 1.0 && max_err <= c_eps;
        extra["invariant_residual"] = invariant_residual(g, c_t, c_alpha, pr);
        rec.gt_value = ct[c_t];
      }
    }
    c_out.emit_single(rec, extra);
  });

  // ---------------- pagerank ----------------
  auto* pagerank = app.add_subcommand("pagerank", "single-node PageRank estimation");
  GraphSpec pr_graph;
  pr_graph.add_options(pagerank);
  locpr::node_t p_t = 0;
  double p_alpha = 0.2, p_eps = 0.5, p_c = 0.1, p_pf = 1.0 / 3.0, p_cert_k = 48.0;
  std::uint64_t p_nr = 1000, p_samples = 10000, p_seed = 0, p_b0 = 64;
  std::string p_method = "bippr-adaptive", p_order = "fifo";
  bool p_verify = false;
  Output p_out;
  pagerank->add_option("--t", p_t, "target node")->required();
  pagerank->add_option("--method", p_method, "estimator")
      ->check(CLI::IsMember({"mc", "bippr", "bippr-adaptive"}))
      ->capture_default_str();
  pagerank->add_option("--alpha", p_alpha, "decay factor")->capture_default_str();
  pagerank->add_option("--eps", p_eps, "push threshold (bippr)")->capture_default_str();
  pagerank->add_option("--nr", p_nr, "walk count (bippr)")->capture_default_str();
  pagerank->add_option("--samples", p_samples, "walk count (mc)")->capture_default_str();
  pagerank->add_option("--c", p_c, "relative error target (bippr-adaptive)")
      ->capture_default_str();
  pagerank->add_option("--pf", p_pf, "failure probability (bippr-adaptive)")
      ->capture_default_str();
  pagerank->add_option("--cert-k", p_cert_k, "certification constant K")->capture_default_str();
  pagerank->add_option("--b0", p_b0, "initial budget")->capture_default_str();
  pagerank->add_option("--order", p_order, "push order")
      ->check(CLI::IsMember({"fifo", "lifo", "max-residue"}))
      ->capture_default_str();
  pagerank->add_option("--seed", p_seed, "master seed")->capture_default_str();
  pagerank->add_flag("--verify", p_verify, "compare against ground truth");
  pagerank->add_option("--format", p_out.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  pagerank->callback([&] {
    auto loaded = pr_graph.load(p_alpha);
    const locpr::Graph& g = loaded.graph;
    if (p_t >= g.num_nodes()) throw locpr::ParamError("--t out of range");
    locpr::AccessOracle oracle(g);
    Record rec;
    rec.command = "pagerank";
    rec.graph = loaded.descriptor;
    rec.algo = p_method;
    rec.n = g.num_nodes();
    rec.m = g.num_edges();
    rec.t = p_t;
    rec.alpha = p_alpha;
    rec.seed = p_seed;
    rec.order = p_order;
    const auto t0 = std::chrono::steady_clock::now();

    locpr::Estimate est;
    if (p_method == "mc") {
      auto rng = locpr::make_stream(p_seed, 1);
      est = locpr::mc_pagerank(oracle, p_t, locpr::WalkConfig::make(p_alpha, p_seed), p_samples,
                               rng);
      rec.samples = p_samples;
    } else if (p_method == "bippr") {
      auto rng = locpr::make_stream(p_seed, 1);
      est = locpr::bippr_fixed(oracle, p_t, p_alpha, p_eps, p_nr, rng, parse_order(p_order));
      rec.eps = p_eps;
      rec.nr = p_nr;
    } else {
      locpr::AdaptiveOptions opt;
      opt.cert_k = p_cert_k;
      opt.initial_budget = p_b0;
      opt.order = parse_order(p_order);
      opt.work_cap = 2 * (g.num_nodes() + g.num_edges());
      est = locpr::bippr_adaptive(oracle, p_t, p_alpha, p_c, p_pf, p_seed, opt);
      rec.c = p_c;
      rec.pf = p_pf;
      rec.eps = est.eps;
      rec.nr = est.n_r;
    }
    rec.value = est.value;
    rec.queries = est.queries;
    rec.wall_ms = elapsed_ms(t0);
    json extra{{"estimate", locpr::to_json(est)}};
    if (p_verify) {
      auto pi = locpr::exact_pagerank(g, p_alpha);
      rec.gt_value = pi[p_t];
      rec.max_err = std::abs(est.value - pi[p_t]);
      extra["relative_error"] = pi[p_t] > 0 ? std::abs(est.value - pi[p_t]) / pi[p_t] : 0.0;
    }
    p_out.emit_single(rec, extra);
  });

  // ---------------- bench-scaling ----------------
  auto* bench = app.add_subcommand("bench-scaling", "query-count scaling sweeps with slope fit");
  GraphSpec b_graph;
  b_graph.add_options(bench);
  locpr::node_t b_t = 0;
  double b_alpha = 0.2, b_eps = 0.5, b_delta = 0.1, b_c = 0.25, b_pf = 1.0 / 3.0;
  std::uint64_t b_seeds = 1, b_seed0 = 0;
  std::string b_algo = "push", b_sweep = "eps", b_values, b_variant = "indeg", b_order = "fifo";
  bool b_verify = false;
  Output b_out;
  bench->add_option("--algo", b_algo, "algorithm under test")
      ->check(CLI::IsMember({"push", "detect", "bippr-adaptive"}))
      ->capture_default_str();
  bench->add_option("--sweep", b_sweep, "driven parameter")
      ->check(CLI::IsMember({"eps", "d", "n"}))
      ->capture_default_str();
  bench->add_option("--values", b_values, "comma-separated sweep values")->required();
  auto* bt_opt = bench->add_option("--t", b_t, "target node (default: instance target)");
  bench->add_option("--alpha", b_alpha, "decay factor")->capture_default_str();
  bench->add_option("--eps", b_eps, "push threshold when not swept")->capture_default_str();
  bench->add_option("--delta", b_delta, "detection threshold")->capture_default_str();
  bench->add_option("--c", b_c, "relative error target")->capture_default_str();
  bench->add_option("--pf", b_pf, "failure probability")->capture_default_str();
  bench->add_option("--variant", b_variant, "detection variant")
      ->check(CLI::IsMember({"indeg", "outdeg", "sqrtm", "combined"}))
      ->capture_default_str();
  bench->add_option("--order", b_order, "push order")
      ->check(CLI::IsMember({"fifo", "lifo", "max-residue"}))
      ->capture_default_str();
  bench->add_option("--seeds", b_seeds, "runs per sweep point")->capture_default_str();
  bench->add_option("--seed", b_seed0, "first master seed")->capture_default_str();
  bench->add_flag("--verify", b_verify, "check per-row bounds against ground truth");
  bench->add_option("--format", b_out.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  bench->callback([&] {
    std::vector<double> values;
    {
      std::istringstream in(b_values);
      std::string item;
      while (std::getline(in, item, ',')) values.push_back(std::stod(item));
      if (values.empty())
        throw CLI::ValidationError("--values", "must be a nonempty comma-separated list");
    }
    const bool b_t_set = bt_opt->count() > 0;

    std::vector<Record> records;
    std::vector<std::pair<double, double>> fit_points;
    bool all_bounds_ok = true;

    for (double value : values) {
      GraphSpec spec = b_graph;
      double eps = b_eps;
      if (b_sweep == "eps") {
        eps = value;
      } else if (b_sweep == "d") {
        spec.d = static_cast<std::uint32_t>(value);
      } else {
        spec.n = static_cast<std::uint64_t>(value);
        spec.m = 4 * spec.n;
      }
      if (spec.gen.empty() && spec.path.empty())
        spec.gen = b_algo == "bippr-adaptive" ? "pr-family" : "contrib";

      auto loaded = spec.load(b_alpha);
      const locpr::Graph& g = loaded.graph;
      const locpr::node_t t = b_t_set ? b_t : (loaded.meta ? loaded.meta->t : locpr::node_t(0));
      std::optional<locpr::DenseScoreVector> pi;
      if (b_verify) pi = locpr::exact_pagerank(g, b_alpha);

      double metric_sum = 0.0;
      for (std::uint64_t s = 0; s < b_seeds; ++s) {
        const std::uint64_t seed = b_seed0 + s;
        Record rec;
        rec.command = "bench-scaling";
        rec.graph = loaded.descriptor;
        rec.algo = b_algo;
        rec.sweep = b_sweep;
        rec.x = value;
        rec.n = g.num_nodes();
        rec.m = g.num_edges();
        rec.t = t;
        rec.alpha = b_alpha;
        rec.seed = seed;
        rec.order = b_order;
        const auto t0 = std::chrono::steady_clock::now();

        double metric = 0.0;
        if (b_algo == "push") {
          locpr::AccessOracle oracle(g);
          auto pr = locpr::approx_contributions(oracle, t, b_alpha, eps, parse_order(b_order));
          rec.eps = eps;
          rec.pushbacks = pr.pushbacks;
          rec.queries = pr.stats;
          rec.value = locpr::residual_mass(pr);
          metric =
              static_cast<double>(b_sweep == "eps" ? pr.pushbacks : pr.stats.local_total());
          if (b_verify && pi) {
            const double npi = g.num_nodes() * (*pi)[t];
            rec.bound_ok = static_cast<double>(pr.pushbacks) <= npi / (b_alpha * eps) + 1.0;
            all_bounds_ok = all_bounds_ok && *rec.bound_ok;
          }
        } else if (b_algo == "detect") {
          locpr::AccessOracle oracle(g);
          locpr::DetectOptions opt;
          opt.order = parse_order(b_order);
          opt.work_cap = 2 * (g.num_nodes() + g.num_edges());
          auto res =
              locpr::detect_adaptive(oracle, t, b_alpha, b_delta, parse_variant(b_variant), opt);
          rec.delta = b_delta;
          rec.eps = res.final_eps;
          rec.variant = locpr::to_string(res.variant);
          rec.queries = res.stats;
          rec.value = static_cast<double>(res.nodes.size());
          metric = static_cast<double>(res.stats.local_total());
        } else {
          locpr::AccessOracle oracle(g);
          locpr::AdaptiveOptions opt;
          opt.order = parse_order(b_order);
          opt.work_cap = 2 * (g.num_nodes() + g.num_edges());
          auto est = locpr::bippr_adaptive(oracle, t, b_alpha, b_c, b_pf, seed, opt);
          rec.c = b_c;
          rec.pf = b_pf;
          rec.eps = est.eps;
          rec.nr = est.n_r;
          rec.queries = est.queries;
          rec.value = est.value;
          metric = static_cast<double>(est.queries.total());
          if (b_verify && pi) {
            rec.gt_value = (*pi)[t];
            rec.max_err = std::abs(est.value - (*pi)[t]);
            rec.bound_ok = *rec.max_err <= b_c * (*pi)[t];
          }
        }
        rec.wall_ms = elapsed_ms(t0);
        metric_sum += metric;
        records.push_back(std::move(rec));
      }
      const double x = b_sweep == "eps" ? 1.0 / value
                       : b_sweep == "d" ? value
                                        : static_cast<double>(g.num_nodes());
      fit_points.push_back({x, metric_sum / static_cast<double>(b_seeds)});
    }

    json summary{{"slope", loglog_slope(fit_points)}};
    if (b_verify) summary["all_bounds_ok"] = all_bounds_ok;
    b_out.emit_records(records, summary);
  });

  // ---------------- gen ----------------
  auto* gen = app.add_subcommand("gen", "export a hard instance with its metadata sidecar");
  GraphSpec g_graph;
  g_graph.add_options(gen);
  double g_alpha = 0.2;
  std::string g_out_stem;
  gen->add_option("--alpha", g_alpha, "decay factor")->capture_default_str();
  gen->add_option("--out", g_out_stem, "output stem (writes <stem>.el and <stem>.meta.json)")
      ->required();
  gen->callback([&] {
    if (g_graph.gen.empty())
      throw CLI::ValidationError("--gen", "gen requires --gen contrib|pr-family");
    auto loaded = g_graph.load(g_alpha);
    locpr::export_instance(g_out_stem, loaded.graph, *loaded.meta);
    std::cout << locpr::to_json(*loaded.meta).dump(2) << '\n';
  });

  // ---------------- exact ----------------
  auto* exact = app.add_subcommand("exact", "ground-truth scores as CSV");
  GraphSpec e_graph;
  e_graph.add_options(exact);
  double e_alpha = 0.2, e_tol = 1e-12;
  locpr::node_t e_t = 0;
  std::string e_out_path;
  exact->add_option("--alpha", e_alpha, "decay factor")->capture_default_str();
  exact->add_option("--tol", e_tol, "convergence tolerance")->capture_default_str();
  auto* et_opt = exact->add_option("--t", e_t, "contribution target (omit for PageRank)");
  exact->add_option("--out", e_out_path, "output file (default stdout)");
  exact->callback([&] {
    auto loaded = e_graph.load(e_alpha);
    locpr::DenseScoreVector scores =
        et_opt->count() > 0 ? locpr::exact_contributions(loaded.graph, e_t, e_alpha, e_tol)
                            : locpr::exact_pagerank(loaded.graph, e_alpha, e_tol);
    if (e_out_path.empty()) {
      locpr::write_scores_csv(std::cout, scores);
    } else {
      std::ofstream out(e_out_path);
      if (!out) throw locpr::Error("cannot open " + e_out_path);
      locpr::write_scores_csv(out, scores);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
