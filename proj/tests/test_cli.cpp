#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(LOCPR_CLI_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

fs::path write_two_cycle() {
  fs::path path = fs::temp_directory_path() / "locpr_cli_two_cycle.el";
  std::ofstream out(path);
  out << "0 1\n1 0\n";
  return path;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("contributions").exit_code == 2);  // missing --t
  CHECK(run_cli("definitely-not-a-command").exit_code == 2);
  CHECK(run_cli("pagerank --t 0 --method nonsense --graph x.el").exit_code == 2);
}

TEST_CASE("runtime failures exit with code 1") {
  CHECK(run_cli("contributions --graph /nonexistent.el --t 0").exit_code == 1);
  // infeasible generator parameters
  CHECK(run_cli("contributions --gen contrib --n 4 --m 10 --d 2 --vsize 50 --t 0").exit_code == 1);
}

TEST_CASE("contributions with verification on the two-cycle") {
  auto path = write_two_cycle();
  auto res = run_cli("contributions --graph " + path.string() +
                     " --t 0 --alpha 0.2 --eps 0.5 --verify");
  REQUIRE(res.exit_code == 0);
  json j = json::parse(res.output);
  CHECK(j["pushbacks"] == 4);
  CHECK(j["max_err"].get<double>() <= 0.5);
  CHECK(j["max_err"].get<double>() == Catch::Approx(0.2276).margin(1e-3));
  CHECK(j["invariant_residual"].get<double>() < 1e-9);
  CHECK(j["bound_ok"] == true);
  CHECK(j["push"]["reserves"][0][1].get<double>() == Catch::Approx(0.328).margin(1e-12));
}

TEST_CASE("detection subcommand reports the superset flag") {
  auto path = write_two_cycle();
  auto res =
      run_cli("contributions --graph " + path.string() + " --t 0 --detect --delta 0.4 --verify");
  REQUIRE(res.exit_code == 0);
  json j = json::parse(res.output);
  CHECK(j["superset"] == true);
  CHECK(j["detection"]["nodes"] == json::array({0, 1}));
}

TEST_CASE("pagerank subcommand examples") {
  SECTION("mc with one sample on a self-loop") {
    fs::path path = fs::temp_directory_path() / "locpr_cli_loop.el";
    std::ofstream(path) << "0 0\n";
    auto res = run_cli("pagerank --graph " + path.string() + " --method mc --samples 1 --t 0");
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.output);
    CHECK(j["value"] == 1.0);
  }
  SECTION("bippr degenerates to Monte Carlo on a self-loop") {
    fs::path path = fs::temp_directory_path() / "locpr_cli_loop.el";
    std::ofstream(path) << "0 0\n";
    auto res = run_cli("pagerank --graph " + path.string() +
                       " --method bippr --eps 1 --nr 100 --t 0");
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.output);
    CHECK(j["value"] == 1.0);
  }
  SECTION("adaptive estimate on the two-cycle verifies") {
    auto path = write_two_cycle();
    auto res = run_cli("pagerank --graph " + path.string() +
                       " --method bippr-adaptive --t 0 --c 0.1 --pf 0.33 --seed 3 --verify");
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.output);
    CHECK(j["gt_value"].get<double>() == Catch::Approx(0.5).margin(1e-12));
    CHECK(j["value"].get<double>() > 0.45);
    CHECK(j["value"].get<double>() < 0.55);
  }
}

TEST_CASE("identical command and seed reproduce identical result fields") {
  const std::string cmd =
      "pagerank --gen pr-family --n 300 --m 1200 --d 4 --vsize 8 --p 2 --i 1 --t 0 "
      "--method bippr-adaptive --c 0.2 --pf 0.33 --seed 9";
  auto a = run_cli(cmd);
  auto b = run_cli(cmd);
  REQUIRE(a.exit_code == 0);
  json ja = json::parse(a.output), jb = json::parse(b.output);
  ja.erase("wall_ms");
  jb.erase("wall_ms");
  CHECK(ja == jb);
}

TEST_CASE("bench-scaling emits stable CSV") {
  auto res = run_cli(
      "bench-scaling --algo push --sweep eps --values 1,0.5,0.25 --gen contrib --n 60 --m 200 "
      "--d 3 --vsize 4 --verify --format csv");
  REQUIRE(res.exit_code == 0);
  std::istringstream lines(res.output);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "schema,command,graph,algo,sweep,x,n,m,t,alpha,eps,delta,c,pf,nr,samples,seed,variant,"
        "order,value,pushbacks,q_indeg,q_outdeg,q_parent,q_child,q_jump,q_local,wall_ms,gt_value,"
        "max_err,superset,bound_ok");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty()) {
      CHECK(line.substr(0, 13) == "locpr-bench-1");
      ++rows;
    }
  CHECK(rows == 3);
}

TEST_CASE("bench-scaling JSON includes the fitted slope") {
  auto res = run_cli(
      "bench-scaling --algo push --sweep eps --values 1,0.5,0.25,0.125 --gen contrib --n 60 "
      "--m 200 --d 3 --vsize 4");
  REQUIRE(res.exit_code == 0);
  json j = json::parse(res.output);
  CHECK(j.contains("slope"));
  CHECK(j["records"].size() == 4);
}

TEST_CASE("gen exports an edge list with a metadata sidecar") {
  fs::path stem = fs::temp_directory_path() / "locpr_cli_instance";
  auto res = run_cli("gen --gen contrib --n 20 --m 60 --d 2 --vsize 2 --out " + stem.string());
  REQUIRE(res.exit_code == 0);
  REQUIRE(fs::exists(stem.string() + ".el"));
  REQUIRE(fs::exists(stem.string() + ".meta.json"));
  std::ifstream meta_in(stem.string() + ".meta.json");
  json meta = json::parse(meta_in);
  CHECK(meta["kind"] == "contribution");
  CHECK(meta["d"] == 2);
  CHECK(meta["m"] == 60);
  // the exported edge list loads back to the same size
  auto reload = run_cli("exact --graph " + stem.string() + ".el --t 0");
  REQUIRE(reload.exit_code == 0);
  fs::remove(stem.string() + ".el");
  fs::remove(stem.string() + ".meta.json");
}

TEST_CASE("exact subcommand writes node,score CSV") {
  auto path = write_two_cycle();
  auto res = run_cli("exact --graph " + path.string());
  REQUIRE(res.exit_code == 0);
  std::istringstream lines(res.output);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "node,score");
  std::getline(lines, line);
  REQUIRE(line.substr(0, 2) == "0,");
  CHECK(std::stod(line.substr(2)) == Catch::Approx(0.5).margin(1e-10));
}
