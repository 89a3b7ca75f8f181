#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "lppshock/experiments.hpp"
#include "lppshock/twdist.hpp"

using namespace lppshock;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::string out;
};

void add_common(CLI::App* app, Common& c, bool needs_config) {
  auto* opt = app->add_option("--config", c.config, "Experiment config file");
  if (needs_config) opt->required()->check(CLI::ExistingFile);
  else opt->check(CLI::ExistingFile);
  app->add_option("--seed", c.seed, "Master seed (overrides the config)");
  app->add_option("--threads", c.threads, "Worker threads (overrides the config)")->check(CLI::PositiveNumber);
  app->add_option("--out", c.out, "Output directory");
}

ExperimentConfig resolve(const Common& c, const std::string& fallback_experiment) {
  ExperimentConfig cfg;
  if (!c.config.empty()) {
    cfg = load_config(c.config);
  } else {
    cfg.experiment = fallback_experiment;
  }
  if (c.seed) cfg.seed = *c.seed;
  if (c.threads) cfg.threads = *c.threads;
  validate(cfg);
  return cfg;
}

/// Writes CSV text to DIR/name when --out is set, else to stdout.
void emit(const Common& c, const std::string& name, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::create_directories(c.out);
  std::ofstream f(std::filesystem::path(c.out) / name, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + (std::filesystem::path(c.out) / name).string());
}

std::vector<double> grid(double lo, double hi, double h) {
  std::vector<double> g;
  const auto n = static_cast<std::size_t>(std::llround((hi - lo) / h)) + 1;
  for (std::size_t k = 0; k < n; ++k) g.push_back(lo + h * static_cast<double>(k));
  return g;
}

int run(const Common& c) {
  const auto cfg = resolve(c, "");
  const auto r = run_experiment(cfg);
  const std::filesystem::path dir = c.out.empty() ? std::filesystem::path("out") / cfg.experiment : std::filesystem::path(c.out);
  write_outputs(r, dir);
  std::cout << cfg.experiment << ": " << (r.passed ? "pass" : "fail") << " (" << dir.string() << ")\n";
  return 0;
}

int predict(const Common& c) {
  const auto cfg = resolve(c, "two_speed");
  std::ostringstream os;
  os << "s,predicted\n";
  std::function<double(double)> F;
  if (cfg.experiment == "two_speed") {
    const auto p = ShockLawParams::from_alpha(cfg.alpha);
    F = [p](double s) { return two_speed_prediction(p, s); };
  } else if (cfg.experiment == "bernoulli") {
    const auto p = BernoulliLawParams::from_densities(cfg.rho_minus, cfg.rho_plus);
    F = [p](double s) { return bernoulli_prediction(p, s); };
  } else if (cfg.experiment == "multipoint") {
    const auto p = MultipointLawParams::from_beta(cfg.beta);
    const auto u = cfg.u.empty() ? std::vector<double>{-1.0, 1.0} : cfg.u;
    F = [p, u](double s) { return multipoint_prediction(p, u, std::vector<double>(u.size(), s)); };
  } else {
    throw ConfigError("predict needs experiment two_speed, bernoulli or multipoint");
  }
  for (const double s : grid(cfg.grid_lo, cfg.grid_hi, cfg.grid_step))
    os << format_number(s) << ',' << format_number(F(s)) << '\n';
  emit(c, "prediction.csv", os.str());
  return 0;
}

int tw_table(const Common& c, double lo, double hi, double h, bool fredholm) {
  std::ostringstream os;
  os << "s,F_GUE,F_GOE\n";
  for (const double s : grid(lo, hi, h)) {
    const double g2 = fredholm ? f_gue(s) : gue_cdf()(s);
    const double g1 = fredholm ? f_goe(s) : goe_cdf()(s);
    os << format_number(s) << ',' << format_number(g2) << ',' << format_number(g1) << '\n';
  }
  emit(c, "tw_table.csv", os.str());
  return 0;
}

int verify(const Common& c) {
  const std::uint64_t seed = c.seed.value_or(1);
  bool ok = true;
  auto line = [&](const char* name, const OracleReport& r) {
    std::printf("%-16s instances=%zu violations=%zu seconds=%.3f\n", name, r.instances, r.violations, r.seconds);
    ok = ok && r.violations == 0;
  };
  line("dp_brute_force", verify_dp_brute_force(seed, 100));
  line("correspondence", verify_correspondence(seed, 100, 50, 30));
  line("interface", verify_interface(seed, 10000, 50));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Competition interface and shock fluctuation experiments"};
  app.require_subcommand(1);
  Common c;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment from a config file");
  add_common(run_cmd, c, true);
  auto* predict_cmd = app.add_subcommand("predict", "Evaluate a limit law on the config grid");
  add_common(predict_cmd, c, false);
  auto* tw_cmd = app.add_subcommand("tw-table", "Tabulate F_GUE and F_GOE");
  add_common(tw_cmd, c, false);
  double lo = -8.0, hi = 6.0, h = 0.1;
  bool fredholm = false;
  tw_cmd->add_option("--lo", lo, "First abscissa");
  tw_cmd->add_option("--hi", hi, "Last abscissa");
  tw_cmd->add_option("--step", h, "Grid step")->check(CLI::PositiveNumber);
  tw_cmd->add_flag("--fredholm", fredholm, "Use the Fredholm determinant route instead of the Painleve tables");
  auto* verify_cmd = app.add_subcommand("verify", "Run the exact oracle suites");
  add_common(verify_cmd, c, false);
  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return run(c);
    if (*predict_cmd) return predict(c);
    if (*tw_cmd) return tw_table(c, lo, hi, h, fredholm);
    return verify(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
