#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace lppshock {

/// Flat key-value experiment configuration; see README for the schema.
struct ExperimentConfig {
  std::string experiment;  // two_speed | bernoulli | multipoint | no_crossing | slow_decorrelation | tails | correspondence
  double alpha = 0.5;
  double rho_minus = 0.25;
  double rho_plus = 0.75;
  double beta = 1.0;
  double t = 2000.0;
  double t_compare = 0.0;  // second scale for shrink-with-t checks; 0 disables
  std::size_t N = 1000;
  std::vector<double> u;
  std::vector<double> s;
  double nu = 0.6;
  std::uint64_t seed = 1;
  std::size_t bootstrap = 200;
  double grid_lo = -4.0;
  double grid_hi = 4.0;
  double grid_step = 0.1;
  double recenter_exponent = 0.25;  // a_t = t^exponent; 0 disables
  std::size_t doubling_replicas = 10;
  std::int64_t window = 30;
  std::size_t probes = 50;
  double local_slope = 2.0;
  std::size_t threads = 1;  // execution only; never part of the report
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses `key = value` lines (# comments; lists as `-1, 1` or `[-1, 1]`) or a flat JSON object.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
void validate(const ExperimentConfig& cfg);
/// Config echo for reports (all fields except threads).
nlohmann::ordered_json config_json(const ExperimentConfig& cfg);

struct EcdfRow {
  double s, empirical, predicted;
};

struct ExperimentResult {
  nlohmann::ordered_json report;  // pure function of the config
  std::vector<EcdfRow> ecdf;
  std::vector<double> samples;  // primary statistic per replica
  nlohmann::ordered_json timings;
  bool passed = false;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);
ExperimentResult run_two_speed(const ExperimentConfig& cfg);
ExperimentResult run_bernoulli(const ExperimentConfig& cfg);
ExperimentResult run_multipoint(const ExperimentConfig& cfg);
ExperimentResult check_no_crossing(const ExperimentConfig& cfg);
ExperimentResult check_slow_decorrelation(const ExperimentConfig& cfg);
ExperimentResult check_tails(const ExperimentConfig& cfg);
ExperimentResult run_correspondence(const ExperimentConfig& cfg);

/// Oracle suites shared by `verify` and the acceptance run.
struct OracleReport {
  std::size_t instances = 0;
  std::size_t violations = 0;
  double seconds = 0.0;
};
/// DP vs exhaustive enumeration on random instances up to 6x6, both start conventions.
OracleReport verify_dp_brute_force(std::uint64_t seed, std::size_t instances);
/// Tandem recursion vs event-driven TASEP on two-speed windows of the given side.
OracleReport verify_correspondence(std::uint64_t seed, std::size_t replicas, std::size_t probes, std::int64_t side);
/// I_n + J_n = n, phi_1 = (1,0), anti-diagonal color cut and the translation sandwich, n <= n_max.
OracleReport verify_interface(std::uint64_t seed, std::size_t instances, std::int64_t n_max);

/// Decimal with 17 significant digits; non-finite values become null in JSON.
std::string format_number(double x);
/// Two-space indented JSON with every floating-point number in 17-digit form.
std::string dump_json(const nlohmann::ordered_json& j);
/// report.json, ecdf.csv, samples.csv and timings.json.
void write_outputs(const ExperimentResult& r, const std::filesystem::path& dir);

}  // namespace lppshock
