#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lppshock/stats.hpp"

using namespace lppshock;

namespace {

std::vector<double> uniforms(std::uint64_t seed, std::size_t n) {
  PhiloxStream rng(SeedPlan{seed, 0}, StreamTag::instance);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform();
  return v;
}

std::vector<double> normals(std::uint64_t seed, std::size_t n) {
  const auto N = NumericCDF::standard_normal();
  auto u = uniforms(seed, n);
  for (auto& x : u) x = N.quantile(x);
  return u;
}

}  // namespace

TEST_CASE("ecdf examples") {
  const auto s = EmpiricalSample::from_values({3.0, 1.0, 2.0});
  CHECK(ecdf(s, 2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(ecdf(s, 0.5) == 0.0);
  CHECK(ecdf(s, 3.5) == 1.0);
  CHECK(ecdf(s, 3.0) == 1.0);
  CHECK_THROWS_AS(ecdf(EmpiricalSample{}, 0.0), std::invalid_argument);
}

TEST_CASE("ecdf of uniforms within the DKW band") {
  const auto s = EmpiricalSample::from_values(uniforms(11, 100000));
  double sup = 0.0;
  for (const double x : s.sorted()) sup = std::max({sup, std::abs(ecdf(s, x) - x)});
  CHECK(sup <= 0.01);
  CHECK(dkw_epsilon(100000, 0.99) < 0.01);
}

TEST_CASE("ks distance of a sample from its own model") {
  const auto N = NumericCDF::standard_normal();
  const auto s = EmpiricalSample::from_values(normals(5, 10000));
  const double d = ks_distance(s, N);
  CHECK(d <= 0.025);
  CHECK(d >= 0.0);
  CHECK(dkw_epsilon(10000, 0.99) == doctest::Approx(0.016276).epsilon(1e-4));
}

TEST_CASE("ks distance with a step model and a constant sample") {
  const auto s = EmpiricalSample::from_values(std::vector<double>(50, 0.0));
  const auto step = [](double x) { return x >= 0.0 ? 1.0 : 0.0; };
  const auto left = [](double x) { return x > 0.0 ? 1.0 : 0.0; };
  CHECK(ks_distance(s, step, left) == 0.0);
}

TEST_CASE("ks distance under a large shift") {
  const auto N = NumericCDF::standard_normal();
  auto v = normals(6, 2000);
  for (auto& x : v) x += 10.0;
  const double d = ks_distance(EmpiricalSample::from_values(v), N);
  CHECK(d > 0.999);
  CHECK(d <= 1.0);
}

TEST_CASE("ks distance checks both one-sided gaps") {
  // a single point at the model median: ecdf jumps from 0 to 1 there
  const auto N = NumericCDF::standard_normal();
  CHECK(ks_distance(EmpiricalSample::from_values({0.0}), N) == doctest::Approx(0.5));
  CHECK(ks_distance(EmpiricalSample::from_values({-1.0, 1.0}), N) ==
        doctest::Approx(0.5 - N(-1.0)).epsilon(1e-12));
}

TEST_CASE("two-sample ks") {
  const auto a = EmpiricalSample::from_values({1.0, 2.0, 3.0});
  CHECK(ks_two_sample(a, a) == 0.0);
  CHECK(ks_two_sample(a, EmpiricalSample::from_values({10.0})) == 1.0);
  CHECK(ks_two_sample(a, EmpiricalSample::from_values({1.5, 2.5, 3.5})) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("pearson correlation") {
  const auto x = uniforms(1, 10000), y = uniforms(2, 10000);
  std::vector<double> neg(x.size());
  std::transform(x.begin(), x.end(), neg.begin(), [](double v) { return -v; });
  CHECK(pearson_correlation(x, x) == doctest::Approx(1.0));
  CHECK(pearson_correlation(x, neg) == doctest::Approx(-1.0));
  CHECK(std::abs(pearson_correlation(x, y)) <= 0.03);
  CHECK_THROWS_AS(pearson_correlation({1.0, 1.0}, {1.0, 2.0}), std::domain_error);
  CHECK_THROWS_AS(pearson_correlation({1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(pearson_correlation({1.0, 2.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("aggregation is order independent") {
  const auto v = uniforms(3, 300);
  std::vector<EmpiricalSample> batches(3);
  for (std::size_t k = 0; k < v.size(); ++k) batches[k % 3].add(SeedPlan{7, static_cast<std::uint32_t>(k)}, v[k]);
  std::vector<int> order{0, 1, 2};
  const auto N = NumericCDF::standard_normal().affine(0.5, 0.3);
  EmpiricalSample ref;
  for (const int b : order) ref.merge(batches[static_cast<std::size_t>(b)]);
  while (std::next_permutation(order.begin(), order.end())) {
    EmpiricalSample m;
    for (const int b : order) m.merge(batches[static_cast<std::size_t>(b)]);
    CHECK(m == ref);
    CHECK(ks_distance(m, N) == ks_distance(ref, N));
    CHECK(m.values() == ref.values());
  }
  // nested merges: (a + b) + c == a + (b + c)
  EmpiricalSample ab = batches[0], bc = batches[1];
  ab.merge(batches[1]);
  ab.merge(batches[2]);
  bc.merge(batches[2]);
  EmpiricalSample a = batches[0];
  a.merge(bc);
  CHECK(ab == a);
}

TEST_CASE("summary statistics") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(mean(v) == 2.5);
  CHECK(standard_deviation(v) == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(mean_standard_error(v) == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(proportion_standard_error(0.5, 100) == doctest::Approx(0.05));
  const auto s = EmpiricalSample::from_values(v);
  CHECK(sample_quantile(s, 0.0) == 1.0);
  CHECK(sample_quantile(s, 1.0) == 4.0);
  CHECK(sample_quantile(s, 0.5) == 2.5);
}

TEST_CASE("bootstrap standard error of ks is deterministic and of DKW order") {
  const auto N = NumericCDF::standard_normal();
  const auto s = EmpiricalSample::from_values(normals(9, 2000));
  const double se = ks_bootstrap_se(s, N, 200, SeedPlan{1, 0});
  CHECK(se == ks_bootstrap_se(s, N, 200, SeedPlan{1, 0}));
  CHECK(se > 0.002);
  CHECK(se < 0.02);
}
