#include "lppshock/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace lppshock {

namespace {

bool entry_less(const EmpiricalSample::Entry& a, const EmpiricalSample::Entry& b) {
  return std::tuple(a.plan.master_seed, a.plan.replica_index, a.value) <
         std::tuple(b.plan.master_seed, b.plan.replica_index, b.value);
}

void require_nonempty(std::size_t n) {
  if (n == 0) throw std::invalid_argument("statistic of an empty sample");
}

}  // namespace

EmpiricalSample EmpiricalSample::from_values(const std::vector<double>& values) {
  EmpiricalSample s;
  for (std::size_t k = 0; k < values.size(); ++k) s.add(SeedPlan{0, static_cast<std::uint32_t>(k)}, values[k]);
  return s;
}

void EmpiricalSample::add(const SeedPlan& plan, double value) {
  entries_.push_back({plan, value});
  clean_ = false;
}

void EmpiricalSample::merge(const EmpiricalSample& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  clean_ = false;
}

void EmpiricalSample::canonicalize() const {
  if (clean_) return;
  std::sort(entries_.begin(), entries_.end(), entry_less);
  sorted_.clear();
  for (const Entry& e : entries_) sorted_.push_back(e.value);
  std::sort(sorted_.begin(), sorted_.end());
  clean_ = true;
}

const std::vector<EmpiricalSample::Entry>& EmpiricalSample::entries() const {
  canonicalize();
  return entries_;
}

std::vector<double> EmpiricalSample::values() const {
  canonicalize();
  std::vector<double> v;
  v.reserve(entries_.size());
  for (const Entry& e : entries_) v.push_back(e.value);
  return v;
}

const std::vector<double>& EmpiricalSample::sorted() const {
  canonicalize();
  return sorted_;
}

bool operator==(const EmpiricalSample& a, const EmpiricalSample& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  if (x.size() != y.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (!(x[k].plan == y[k].plan) || std::bit_cast<std::uint64_t>(x[k].value) != std::bit_cast<std::uint64_t>(y[k].value))
      return false;
  return true;
}

double ecdf(const std::vector<double>& sorted_values, double s) {
  require_nonempty(sorted_values.size());
  const auto it = std::upper_bound(sorted_values.begin(), sorted_values.end(), s);
  return static_cast<double>(it - sorted_values.begin()) / static_cast<double>(sorted_values.size());
}

double ecdf(const EmpiricalSample& sample, double s) { return ecdf(sample.sorted(), s); }

double ks_distance(const EmpiricalSample& sample, const std::function<double(double)>& cdf,
                   const std::function<double(double)>& left_limit) {
  const auto& v = sample.sorted();
  require_nonempty(v.size());
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  std::size_t k = 0;
  while (k < v.size()) {
    std::size_t e = k;
    while (e < v.size() && v[e] == v[k]) ++e;
    // ecdf is k/n just left of v[k] and e/n at v[k]
    d = std::max(d, std::abs(static_cast<double>(e) / n - cdf(v[k])));
    d = std::max(d, std::abs(left_limit(v[k]) - static_cast<double>(k) / n));
    k = e;
  }
  return std::min(d, 1.0);
}

double ks_distance(const EmpiricalSample& sample, const NumericCDF& model) {
  const auto F = [&model](double x) { return model.cdf(x); };
  return ks_distance(sample, F, F);
}

double ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b) {
  const auto& x = a.sorted();
  const auto& y = b.sorted();
  require_nonempty(x.size());
  require_nonempty(y.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    const double t = j == y.size() || (i < x.size() && x[i] <= y[j]) ? x[i] : y[j];
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / static_cast<double>(x.size()) -
                             static_cast<double>(j) / static_cast<double>(y.size())));
  }
  return d;
}

double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("correlation needs paired samples of size >= 2");
  const double mx = mean(x), my = mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double a = x[k] - mx, b = y[k] - my;
    sxx += a * a;
    syy += b * b;
    sxy += a * b;
  }
  if (!(sxx > 0.0 && syy > 0.0)) throw std::domain_error("correlation of a sample with zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double dkw_epsilon(std::size_t n, double confidence) {
  require_nonempty(n);
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::domain_error("confidence must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(n)));
}

double mean(const std::vector<double>& v) {
  require_nonempty(v.size());
  double acc = 0.0;
  for (const double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double standard_deviation(const std::vector<double>& v) {
  if (v.size() < 2) throw std::invalid_argument("standard deviation needs at least two values");
  const double m = mean(v);
  double ss = 0.0;
  for (const double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double mean_standard_error(const std::vector<double>& v) {
  return standard_deviation(v) / std::sqrt(static_cast<double>(v.size()));
}

double proportion_standard_error(double p, std::size_t n) {
  require_nonempty(n);
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

double sample_quantile(const EmpiricalSample& sample, double p) {
  const auto& v = sample.sorted();
  require_nonempty(v.size());
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("quantile level must lie in [0, 1]");
  const double h = p * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double ks_bootstrap_se(const EmpiricalSample& sample, const NumericCDF& model, std::size_t resamples,
                       const SeedPlan& plan) {
  const auto& v = sample.sorted();
  require_nonempty(v.size());
  if (resamples < 2) throw std::invalid_argument("bootstrap needs at least two resamples");
  PhiloxStream rng(plan, StreamTag::bootstrap);
  std::vector<double> ks;
  for (std::size_t b = 0; b < resamples; ++b) {
    EmpiricalSample r;
    for (std::size_t k = 0; k < v.size(); ++k) r.add(SeedPlan{0, static_cast<std::uint32_t>(k)}, v[rng.below(v.size())]);
    ks.push_back(ks_distance(r, model));
  }
  return standard_deviation(ks);
}

}  // namespace lppshock
