#pragma once

#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "lppshock/experiments.hpp"
#include "lppshock/lpp.hpp"
#include "lppshock/stats.hpp"
#include "lppshock/twdist.hpp"

namespace lppshock::detail {

using Json = nlohmann::ordered_json;

/// Runs body(r) for r in [0, n) on `threads` workers; each r writes only its own slot.
/// Rethrows the exception of the lowest failing index.
template <class Body>
void parallel_for(std::size_t n, std::size_t threads, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < n; r = next++) {
      try {
        body(r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  const std::size_t k = std::max<std::size_t>(1, std::min(threads, n));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < k; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Per-replica timing summary for timings.json.
Json timing_summary(const std::vector<double>& replica_seconds, double wall, std::size_t threads);

/// Replica plan: ensemble e (0 main, 1 comparison) uses replica indices e*N + r.
inline SeedPlan replica_plan(const ExperimentConfig& c, std::size_t ensemble, std::size_t r) {
  return SeedPlan{c.seed, static_cast<std::uint32_t>(ensemble * c.N + r)};
}

/// Sample excluding non-finite values (ties), with replica provenance.
EmpiricalSample finite_sample(const ExperimentConfig& c, std::size_t ensemble, const std::vector<double>& v);

/// Tabulates a distribution function on [lo, hi] with step h.
NumericCDF tabulate(const std::function<double(double)>& F, double lo, double hi, double h);

/// ECDF rows over the config grid.
std::vector<EcdfRow> ecdf_table(const ExperimentConfig& c, const EmpiricalSample& sample,
                                const std::function<double(double)>& predicted);
Json ecdf_json(const std::vector<EcdfRow>& rows);

/// Base report: experiment name and config echo.
Json report_head(const ExperimentConfig& c);

struct MultipointGeometry {
  std::int64_t T = 0, B = 0;  // row of the endpoints; sources at (-B, 0) and (0, -B)
  std::vector<Site> P, E;     // endpoints P_k and the plus-side points E_k
  Rect plus_rect, minus_rect;
};
MultipointGeometry multipoint_geometry(const ExperimentConfig& c, double t);

struct MultipointSample {
  std::vector<double> plus, minus, plus_e;  // L from each source at P_k; plus-source L at E_k
  std::vector<LatticePath> paths_plus;      // plus source to E_k
  std::vector<LatticePath> paths_minus;     // minus source to P_k
};
MultipointSample multipoint_replica(const MultipointGeometry& g, const SeedPlan& plan, bool record_argmax);

inline double two_se(double se_a, double se_b) { return 2.0 * std::sqrt(se_a * se_a + se_b * se_b); }

}  // namespace lppshock::detail
