#include "common.hpp"

#include <cmath>

namespace lppshock::detail {

Json timing_summary(const std::vector<double>& replica_seconds, double wall, std::size_t threads) {
  Json j;
  j["wall_seconds"] = wall;
  j["threads"] = threads;
  j["replicas"] = replica_seconds.size();
  if (!replica_seconds.empty()) {
    j["replica_seconds_mean"] = mean(replica_seconds);
    j["replica_seconds_max"] = *std::max_element(replica_seconds.begin(), replica_seconds.end());
  }
  return j;
}

EmpiricalSample finite_sample(const ExperimentConfig& c, std::size_t ensemble, const std::vector<double>& v) {
  EmpiricalSample s;
  for (std::size_t r = 0; r < v.size(); ++r)
    if (std::isfinite(v[r])) s.add(replica_plan(c, ensemble, r), v[r]);
  return s;
}

NumericCDF tabulate(const std::function<double(double)>& F, double lo, double hi, double h) {
  const auto n = static_cast<std::size_t>(std::llround((hi - lo) / h)) + 1;
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = F(lo + h * static_cast<double>(k));
  for (std::size_t k = 1; k < n; ++k) v[k] = std::max(v[k], v[k - 1]);
  return NumericCDF(lo, h, std::move(v), {});
}

std::vector<EcdfRow> ecdf_table(const ExperimentConfig& c, const EmpiricalSample& sample,
                                const std::function<double(double)>& predicted) {
  std::vector<EcdfRow> rows;
  const auto n = static_cast<std::size_t>(std::llround((c.grid_hi - c.grid_lo) / c.grid_step)) + 1;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = c.grid_lo + c.grid_step * static_cast<double>(k);
    rows.push_back({s, sample.empty() ? std::nan("") : ecdf(sample, s), predicted(s)});
  }
  return rows;
}

Json ecdf_json(const std::vector<EcdfRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(Json::array({r.s, r.empirical, r.predicted}));
  return a;
}

Json report_head(const ExperimentConfig& c) {
  Json j;
  j["experiment"] = c.experiment;
  j["config"] = config_json(c);
  return j;
}

}  // namespace lppshock::detail
