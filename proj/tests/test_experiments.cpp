#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lppshock/experiments.hpp"

using namespace lppshock;

namespace {

ExperimentConfig small(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  c.t = 60;
  c.t_compare = 50;
  c.N = 40;
  c.bootstrap = 10;
  c.doubling_replicas = 3;
  c.window = 12;
  c.probes = 20;
  c.seed = 11;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("key-value and JSON configs agree") {
  const auto a = parse_config(
      "# comment\nexperiment = multipoint\nbeta = 2   # trailing\nu = -1, 1\ns = [-3, 0, 3]\nN = 20\nseed = 9\n");
  const auto b = parse_config(R"({"experiment": "multipoint", "beta": 2, "u": [-1, 1], "s": [-3, 0, 3], "N": 20, "seed": 9})");
  CHECK(a.experiment == "multipoint");
  CHECK(a.beta == 2.0);
  CHECK(a.u == std::vector<double>{-1.0, 1.0});
  CHECK(a.s == std::vector<double>{-3.0, 0.0, 3.0});
  CHECK(a.N == 20);
  CHECK(a.seed == 9);
  CHECK(config_json(a) == config_json(b));
  CHECK_FALSE(config_json(a).contains("threads"));
  const auto one = parse_config("experiment = tails\nu = 0.5\n");
  CHECK(one.u == std::vector<double>{0.5});
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("experiment = tails\nbogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("t = 100\nt = 200\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("no equals sign\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("N = -3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("{\"t\": {\"nested\": 1}}"), ConfigError);
  auto c = small("two_speed");
  CHECK_NOTHROW(validate(c));
  c.t = 49;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small("two_speed");
  c.alpha = 1.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small("no_crossing");
  c.nu = 1.0 / 3.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small("multipoint");
  c.u = {1.0, -1.0};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.u = {-2, -1, 0, 1, 2};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small("bernoulli");
  c.rho_minus = 0.8;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = small("nonsense");
  CHECK_THROWS_AS(validate(c), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/path.conf"), ConfigError);
}

TEST_CASE("numbers carry 17 significant digits") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-2.5e-20) == "-2.4999999999999999e-20");
  CHECK(format_number(std::nan("")) == "null");
  nlohmann::ordered_json j;
  j["x"] = 0.1;
  j["v"] = {1.0 / 3.0, 2};
  j["n"] = std::numeric_limits<double>::infinity();
  const std::string s = dump_json(j);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("0.33333333333333331") != std::string::npos);
  CHECK(s.find("\"n\": null") != std::string::npos);
  CHECK(nlohmann::json::parse(s)["x"].get<double>() == 0.1);
}

TEST_CASE("reports are reproducible and thread-count invariant") {
  for (const char* e : {"two_speed", "bernoulli", "multipoint", "no_crossing", "slow_decorrelation", "tails",
                        "correspondence"}) {
    CAPTURE(e);
    auto c = small(e);
    c.threads = 1;
    const auto a = run_experiment(c);
    c.threads = 3;
    const auto b = run_experiment(c);
    CHECK(dump_json(a.report) == dump_json(b.report));
    CHECK(a.samples.size() == c.N);
    c.seed = 12;
    CHECK(dump_json(run_experiment(c).report) != dump_json(a.report));
  }
}

TEST_CASE("outputs on disk") {
  auto c = small("two_speed");
  const auto r = run_experiment(c);
  const auto dir = std::filesystem::temp_directory_path() / "lppshock_test_outputs";
  std::filesystem::remove_all(dir);
  write_outputs(r, dir);
  const std::string ecdf = slurp(dir / "ecdf.csv");
  CHECK(ecdf.rfind("s,empirical,predicted\n", 0) == 0);
  const std::string samples = slurp(dir / "samples.csv");
  CHECK(samples.rfind("replica,statistic\n0,", 0) == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report["experiment"] == "two_speed");
  CHECK(report["config"]["N"] == 40);
  CHECK(report["statistics"].size() == 40);
  CHECK(report["ecdf"].size() == r.ecdf.size());
  CHECK(slurp(dir / "report.json") == dump_json(r.report));
  CHECK(std::filesystem::exists(dir / "timings.json"));
  const auto& ends = report["prediction_grid_ends"];
  CHECK(ends[0].get<double>() < 0.05);
  CHECK(ends[1].get<double>() > 0.95);
  std::filesystem::remove_all(dir);
}

TEST_CASE("pathwise checks hold on small runs") {
  auto c = small("slow_decorrelation");
  c.N = 100;
  auto r = run_experiment(c).report;
  CHECK(r["main"]["violations"] == 0);
  CHECK(r["compare"]["violations"] == 0);

  c = small("no_crossing");
  c.N = 60;
  r = run_experiment(c).report;
  CHECK(r["main"]["d_set_in_gamma_range"] == true);
  CHECK(r["main"]["origin_in_d_set"] == true);
  CHECK(r["main"]["restricted_checked"].get<int>() > 0);
  CHECK(r["main"]["restricted_mismatches"] == 0);
  CHECK(r["compare"]["restricted_mismatches"] == 0);

  c = small("correspondence");
  r = run_experiment(c).report;
  CHECK(r["violations"] == 0);
  CHECK(r["probes"] == c.N * c.probes);

  c = small("two_speed");
  r = run_experiment(c).report;
  CHECK(r["doubling_k"]["mismatches"] == 0);
  CHECK(r["doubling_k"]["replicas"] == 3);
}

TEST_CASE("oracle suites report zero violations") {
  const auto dp = verify_dp_brute_force(5, 40);
  CHECK(dp.instances == 40);
  CHECK(dp.violations == 0);
  const auto cr = verify_correspondence(5, 10, 30, 20);
  CHECK(cr.instances == 300);
  CHECK(cr.violations == 0);
  const auto in = verify_interface(5, 200, 20);
  CHECK(in.instances == 200);
  CHECK(in.violations == 0);
}
