// Full-scale acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <thread>

#include "lppshock/experiments.hpp"
#include "lppshock/twdist.hpp"

using namespace lppshock;

namespace {

const std::filesystem::path kConfigs = LPPSHOCK_CONFIG_DIR;
const std::filesystem::path kOut = "acceptance";
std::size_t g_threads = 1;
int g_failed = 0;

struct Verdict {
  bool pass;
  std::string detail;
};

void criterion(int id, const char* name, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v{false, ""};
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s %d %s: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), sec);
  std::fflush(stdout);
  g_failed += !v.pass;
}

ExperimentResult run_config(const std::string& name) {
  auto c = load_config(kConfigs / (name + ".conf"));
  c.threads = g_threads;
  auto r = run_experiment(c);
  write_outputs(r, kOut / name);
  return r;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double num(const nlohmann::ordered_json& j) { return j.is_number() ? j.get<double>() : std::nan(""); }

}  // namespace

int main() {
  g_threads = std::max(1u, std::thread::hardware_concurrency());
  std::filesystem::create_directories(kOut);

  criterion(1, "dp equals brute force", [] {
    const auto r = verify_dp_brute_force(1, 100);
    return Verdict{r.instances == 100 && r.violations == 0,
                   fmt("%.0f instances, %.0f violations", double(r.instances), double(r.violations))};
  });

  criterion(2, "tasep-lpp correspondence", [] {
    const auto r = run_config("correspondence").report;
    return Verdict{r["violations"] == 0 && r["probes"] == 5000,
                   fmt("%.0f probes, %.0f violations", num(r["probes"]), num(r["violations"]))};
  });

  criterion(3, "interface invariants", [] {
    const auto r = verify_interface(1, 10000, 50);
    return Verdict{r.instances == 10000 && r.violations == 0,
                   fmt("%.0f instances, %.0f violations", double(r.instances), double(r.violations))};
  });

  criterion(4, "tracy-widom routes", [] {
    double gap2 = 0.0, gap1 = 0.0;
    for (int k = 0; k <= 140; ++k) {
      const double s = -8.0 + 0.1 * k;
      gap2 = std::max(gap2, std::abs(f_gue(s) - gue_cdf()(s)));
      gap1 = std::max(gap1, std::abs(f_goe(s) - goe_cdf()(s)));
    }
    bool ok = gap2 <= 1e-6 && gap1 <= 1e-6;
    for (const NumericCDF* F : {&gue_cdf(), &goe_cdf()})
      ok = ok && F->monotone() && F->values().front() <= 1e-6 && 1.0 - F->values().back() <= 1e-6;
    return Verdict{ok, fmt("max |fredholm - painleve| GUE %.2e, GOE %.2e", gap2, gap1)};
  });

  criterion(5, "two-speed interface law", [] {
    const auto r = run_config("two_speed").report;
    return Verdict{r["pass"].get<bool>(), fmt("KS %.4f (tol 0.10), KS at t=500 %.4f, shrink tolerance %.4f, ties %.0f",
                                              num(r["ks"]), num(r["compare"]["ks"]),
                                              2.0 * std::hypot(num(r["ks_bootstrap_se"]), num(r["compare"]["ks_bootstrap_se"])),
                                              num(r["ties"]))};
  });

  criterion(6, "bernoulli interface law", [] {
    const auto r = run_config("bernoulli").report;
    return Verdict{r["pass"].get<bool>(),
                   fmt("KS %.4f (tol 0.05), ecdf(0) %.4f, marginal KS %.4f / %.4f", num(r["ks"]), num(r["ecdf_at_0"]),
                       num(r["marginals"]["ks_plus"]), num(r["marginals"]["ks_minus"]))};
  });

  criterion(7, "multipoint product law", [] {
    const auto r = run_config("multipoint").report;
    return Verdict{r["pass"].get<bool>(), fmt("joint gap %.4f (tol 0.10), max |r| %.4f (tol 0.05), marginal KS %.4f (tol 0.10)",
                                              num(r["joint_max_gap"]), num(r["correlation_max_abs"]), num(r["marginal_ks"]))};
  });

  criterion(8, "assumption checks", [] {
    const auto nc = run_config("no_crossing").report;
    const auto sd = run_config("slow_decorrelation").report;
    const auto tl = run_config("tails").report;
    const bool ok = nc["pass"].get<bool>() && sd["pass"].get<bool>() && tl["pass"].get<bool>();
    std::string d = fmt("crossing freq %.4f -> %.4f; ", num(nc["compare"]["frequency"]), num(nc["main"]["frequency"]));
    d += fmt("gap mean %.4f -> %.4f, violations %.0f; ", num(sd["compare"]["mean"]), num(sd["main"]["mean"]),
             num(sd["main"]["violations"]) + num(sd["compare"]["violations"]));
    d += fmt("tail exponents upper %.3f lower %.3f", num(tl["upper"]["exponent"]), num(tl["lower"]["exponent"]));
    return Verdict{ok, d};
  });

  criterion(9, "byte reproducibility", [] {
    bool ok = true;
    std::string differing;
    for (const char* e : {"two_speed", "bernoulli", "multipoint", "no_crossing", "slow_decorrelation", "tails",
                          "correspondence"}) {
      auto c = load_config(kConfigs / (std::string(e) + ".conf"));
      c.N = std::min<std::size_t>(c.N, 200);
      c.t = std::min(c.t, 500.0);
      c.t_compare = c.t_compare > 0.0 ? 100.0 : 0.0;
      c.bootstrap = 20;
      c.threads = 1;
      const std::string a = dump_json(run_experiment(c).report);
      c.threads = g_threads > 1 ? g_threads : 2;
      const std::string b = dump_json(run_experiment(c).report);
      if (a != b) {
        ok = false;
        differing += std::string(" ") + e;
      }
    }
    return Verdict{ok, ok ? "identical report bytes across reruns and thread counts" : "differs:" + differing};
  });

  std::printf("%d criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
