#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "lppshock/weights.hpp"

using namespace lppshock;

TEST_CASE("rate_at examples") {
  const auto ts = RateField::two_speed(0.5);
  CHECK(ts.rate_at({3, 2}).rate == 1.0);
  CHECK(ts.rate_at({3, -1}).rate == 0.5);
  CHECK(ts.rate_at({-4, 0}).rate == 0.5);
  const auto b = RateField::bernoulli_boundary(0.25, 0.75);
  CHECK(b.rate_at({0, 5}).rate == 0.25);
  CHECK(b.rate_at({5, 0}).rate == 0.25);
  CHECK(b.rate_at({0, 0}).zero_weight);
  CHECK(b.rate_at({3, 3}).rate == 1.0);
  CHECK_THROWS_AS(b.rate_at({-1, 2}), DomainError);
}

TEST_CASE("field validation") {
  CHECK_THROWS(RateField::two_speed(1.0));
  CHECK_THROWS(RateField::two_speed(0.0));
  CHECK_THROWS(RateField::bernoulli_boundary(0.5, 0.5));
  CHECK_THROWS(RateField::bernoulli_boundary(0.6, 0.4));
  CHECK_THROWS(RateField::homogeneous(-1.0));
  CHECK_THROWS(RateField::point_to_point_beta(0.0));
}

TEST_CASE("sampling is deterministic and replica-dependent") {
  const auto f = RateField::homogeneous(1.0);
  const Rect win{-3, 10, -2, 7};
  const auto a = sample_weights(f, win, {17, 3});
  const auto b = sample_weights(f, win, {17, 3});
  const auto c = sample_weights(f, win, {17, 4});
  const auto d = sample_weights(f, win, {18, 3});
  int same_c = 0, same_d = 0;
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    CHECK(std::bit_cast<std::uint64_t>(a.values()[k]) == std::bit_cast<std::uint64_t>(b.values()[k]));
    same_c += a.values()[k] == c.values()[k];
    same_d += a.values()[k] == d.values()[k];
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
}

TEST_CASE("window sample equals per-site weight_at") {
  for (const auto& f : {RateField::two_speed(0.3), RateField::bernoulli_boundary(0.2, 0.9), RateField::homogeneous(2.5)}) {
    const Rect win = std::holds_alternative<BernoulliBoundary>(f.kind()) ? Rect{0, 13, 0, 9} : Rect{-7, 6, -5, 8};
    const auto s = sample_weights(f, win, {99, 12});
    for (std::int64_t j = win.j0; j <= win.j1; ++j)
      for (std::int64_t i = win.i0; i <= win.i1; ++i) {
        const double w = weight_at(f, {99, 12}, {i, j});
        REQUIRE(std::bit_cast<std::uint64_t>(s.at({i, j})) == std::bit_cast<std::uint64_t>(w));
        REQUIRE(w >= 0.0);
      }
  }
}

TEST_CASE("bernoulli origin weight is exactly zero") {
  const auto f = RateField::bernoulli_boundary(0.25, 0.75);
  for (std::uint32_t r = 0; r < 50; ++r) {
    CHECK(weight_at(f, {5, r}, {0, 0}) == 0.0);
    CHECK(sample_weights(f, {0, 4, 0, 4}, {5, r}).at({0, 0}) == 0.0);
  }
}

TEST_CASE("homogeneous(2) mean over 10^6 draws") {
  const auto s = sample_weights(RateField::homogeneous(2.0), {0, 999, 0, 999}, {2024, 0});
  double sum = 0;
  for (double v : s.values()) sum += v;
  CHECK(std::abs(sum / 1e6 - 0.5) < 5e-3);
}

TEST_CASE("per-site means converge to 1/rate") {
  const std::uint32_t n = 100000;
  const auto f = RateField::two_speed(0.4);
  const auto b = RateField::bernoulli_boundary(0.3, 0.6);
  struct Probe {
    const RateField* field;
    Site site;
  };
  for (const Probe& p : {Probe{&f, {2, 3}}, Probe{&f, {-2, -1}}, Probe{&b, {0, 4}}, Probe{&b, {4, 0}}, Probe{&b, {2, 2}}}) {
    const double rate = p.field->rate_at(p.site).rate;
    double sum = 0;
    for (std::uint32_t r = 0; r < n; ++r) sum += weight_at(*p.field, {77, r}, p.site);
    const double se = 1.0 / rate / std::sqrt(double(n));
    CHECK(std::abs(sum / n - 1.0 / rate) < 4 * se);
  }
}

TEST_CASE("memorylessness spot check") {
  const auto s = sample_weights(RateField::homogeneous(1.0), {0, 999, 0, 499}, {31, 1});
  const double a = 0.7, b = 1.1;
  double na = 0, nab = 0, nb = 0;
  for (double v : s.values()) {
    na += v > a;
    nab += v > a + b;
    nb += v > b;
  }
  const double n = double(s.values().size());
  const double lhs = nab / na, rhs = nb / n;
  const double se = std::sqrt(rhs * (1 - rhs) / na) + std::sqrt(rhs * (1 - rhs) / n);
  CHECK(std::abs(lhs - rhs) < 4 * se);
}
