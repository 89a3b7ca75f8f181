#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "lppshock/rng.hpp"
#include "lppshock/twdist.hpp"

namespace lppshock {

/// Multiset of per-replica values with their provenance; canonical order is by (seed, replica, value).
class EmpiricalSample {
 public:
  struct Entry {
    SeedPlan plan;
    double value;
  };

  EmpiricalSample() = default;
  /// Values with replica indices 0..n-1 under master seed 0.
  static EmpiricalSample from_values(const std::vector<double>& values);

  void add(const SeedPlan& plan, double value);
  /// Multiset union; the result does not depend on merge order.
  void merge(const EmpiricalSample& other);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  /// Entries in canonical order.
  const std::vector<Entry>& entries() const;
  /// Values in canonical entry order.
  std::vector<double> values() const;
  /// Values in increasing order.
  const std::vector<double>& sorted() const;

  friend bool operator==(const EmpiricalSample& a, const EmpiricalSample& b);

 private:
  void canonicalize() const;

  mutable std::vector<Entry> entries_;
  mutable std::vector<double> sorted_;
  mutable bool clean_ = true;
};

/// Fraction of values <= s; std::invalid_argument on an empty sample.
double ecdf(const EmpiricalSample& sample, double s);
double ecdf(const std::vector<double>& sorted_values, double s);

/// sup |ecdf - F| over the sample jump points, both one-sided gaps, for a continuous model.
double ks_distance(const EmpiricalSample& sample, const NumericCDF& model);
/// Same for a right-continuous model F with left limits F(x-).
double ks_distance(const EmpiricalSample& sample, const std::function<double(double)>& cdf,
                   const std::function<double(double)>& left_limit);
/// Two-sample distance sup |F_a - F_b|.
double ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b);

/// Paired Pearson correlation; std::invalid_argument on length mismatch or n < 2,
/// std::domain_error on zero variance.
double pearson_correlation(const std::vector<double>& x, const std::vector<double>& y);

/// Half-width eps with P(sup |ecdf - F| > eps) <= 1 - confidence (Dvoretzky-Kiefer-Wolfowitz-Massart).
double dkw_epsilon(std::size_t n, double confidence);

double mean(const std::vector<double>& v);
/// Sample standard deviation (n - 1 denominator).
double standard_deviation(const std::vector<double>& v);
/// Standard error of the mean (sample standard deviation / sqrt(n)).
double mean_standard_error(const std::vector<double>& v);
/// sqrt(p(1-p)/n).
double proportion_standard_error(double p, std::size_t n);
/// Linear-interpolation quantile of the sorted sample (type 7).
double sample_quantile(const EmpiricalSample& sample, double p);

/// Bootstrap standard error of ks_distance(sample, model); resampling stream keyed by plan.
double ks_bootstrap_se(const EmpiricalSample& sample, const NumericCDF& model, std::size_t resamples,
                       const SeedPlan& plan);

}  // namespace lppshock
