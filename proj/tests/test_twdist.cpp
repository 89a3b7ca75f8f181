#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/distributions/normal.hpp>
#include <cmath>

#include "lppshock/twdist.hpp"

using namespace lppshock;

namespace {

int sign_changes(const std::vector<double>& d, double eps) {
  int changes = 0, last = 0;
  for (const double v : d) {
    const int sg = v > eps ? 1 : (v < -eps ? -1 : 0);
    if (sg != 0 && last != 0 && sg != last) ++changes;
    if (sg != 0) last = sg;
  }
  return changes;
}

}  // namespace

TEST_CASE("airy value at zero") {
  CHECK(airy(0.0) == doctest::Approx(std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0)).epsilon(1e-14));
  CHECK(airy_prime(0.0) == doctest::Approx(-std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("airy positive and decreasing on the right half line") {
  double prev = airy(0.0);
  CHECK(prev > 0.0);
  for (double x = 0.05; x <= 50.0; x += 0.05) {
    const double a = airy(x);
    CHECK(a > 0.0);
    if (x >= 1.0) CHECK(a < prev);
    prev = a;
  }
}

TEST_CASE("airy satisfies its differential equation") {
  const double h = 2e-3;
  auto d2 = [](double x, double step) { return (airy(x + step) - 2.0 * airy(x) + airy(x - step)) / (step * step); };
  for (int k = 0; k < 100; ++k) {
    const double x = -10.0 + 0.2 * k;
    // Richardson-extrapolated second difference
    const double second = (4.0 * d2(x, 0.5 * h) - d2(x, h)) / 3.0;
    CHECK(std::abs(second - x * airy(x)) < 1e-8);
    const double dprime = (airy_prime(x + 1e-4) - airy_prime(x - 1e-4)) / 2e-4;
    CHECK(std::abs(dprime - x * airy(x)) < 1e-7);
  }
}

TEST_CASE("airy range check") {
  CHECK_THROWS_AS(airy(50.5), std::range_error);
  CHECK_THROWS_AS(airy_prime(-51.0), std::range_error);
}

TEST_CASE("gauss legendre integrates polynomials exactly") {
  const auto q = gauss_legendre(10, -1.0, 3.0);
  for (int p = 0; p < 20; ++p) {
    double acc = 0.0;
    for (std::size_t k = 0; k < q.x.size(); ++k) acc += q.w[k] * std::pow(q.x[k], p);
    const double exact = (std::pow(3.0, p + 1) - std::pow(-1.0, p + 1)) / (p + 1);
    CHECK(acc == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("fredholm quadrature orders agree") {
  for (double s = -10.0; s <= 10.0; s += 0.25) {
    CHECK(std::abs(fredholm_gue(s, 80) - fredholm_gue(s, 160)) < 1e-8);
    CHECK(std::abs(fredholm_goe(s, 80) - fredholm_goe(s, 160)) < 1e-8);
  }
  CHECK_THROWS_AS(f_gue(10.5), std::domain_error);
  CHECK_THROWS_AS(f_goe(-11.0), std::domain_error);
}

TEST_CASE("fredholm and painleve routes agree") {
  for (double s = -8.0; s <= 6.0; s += 0.1) {
    CHECK(std::abs(f_gue(s) - gue_cdf()(s)) < 1e-6);
    CHECK(std::abs(f_goe(s) - goe_cdf()(s)) < 1e-6);
  }
}

TEST_CASE("tracy widom limits and monotonicity") {
  CHECK(f_gue(-10.0) < 1e-6);
  CHECK(f_goe(-10.0) < 1e-6);
  CHECK(f_gue(10.0) > 1.0 - 1e-6);
  CHECK(f_goe(10.0) > 1.0 - 1e-6);
  CHECK(gue_cdf().monotone());
  CHECK(goe_cdf().monotone());
  CHECK(gue_cdf().values().front() < 1e-6);
  CHECK(goe_cdf().values().back() > 1.0 - 1e-6);
  for (const double d : gue_cdf().densities()) CHECK(d >= 0.0);
  for (const double d : goe_cdf().densities()) CHECK(d >= 0.0);
  double prev = 0.0;
  for (double s = -12.0; s <= 12.0; s += 0.0137) {
    const double v = goe_cdf()(s);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("tracy widom moments match reference values") {
  for (const auto& [F, mean, var] : {std::tuple{&gue_cdf(), -1.7710868074, 0.8131947928},
                                     std::tuple{&goe_cdf(), -1.2065335745, 1.6077810345}}) {
    double m = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k + 1 < F->size(); ++k) {
      const double mass = F->values()[k + 1] - F->values()[k];
      const double x = 0.5 * (F->grid(k) + F->grid(k + 1));
      m += mass * x;
      m2 += mass * x * x;
    }
    CHECK(m == doctest::Approx(mean).epsilon(1e-8));
    CHECK(m2 - m * m == doctest::Approx(var).epsilon(1e-6));
  }
}

TEST_CASE("goe law is wider: distribution functions cross once, densities twice") {
  std::vector<double> dcdf, dpdf;
  for (double s = -8.0; s <= 6.0; s += 0.01) {
    dcdf.push_back(goe_cdf()(s) - gue_cdf()(s));
    dpdf.push_back(goe_cdf().pdf(s) - gue_cdf().pdf(s));
  }
  CHECK(sign_changes(dcdf, 1e-9) == 1);
  CHECK(sign_changes(dpdf, 1e-9) == 2);
}

TEST_CASE("painleve solution shape") {
  const auto& P = painleve();
  for (std::size_t k = 0; k < P.x.size(); k += 500)
    if (P.x[k] >= 4.0) CHECK(std::abs(P.q[k] - airy(P.x[k])) < 1e-12 + 1e-3 * airy(P.x[k]));
  const double q_lo = P.q.front(), x_lo = P.x.front();
  CHECK(std::abs(q_lo / std::sqrt(-x_lo / 2.0) - 1.0) < 0.01);
  for (const double v : P.q) CHECK(v > 0.0);
  // q'' = x q + 2 q^3 on the tabulated grid
  const double h = P.x[1] - P.x[0];
  for (std::size_t k = 1; k + 1 < P.x.size(); k += 37) {
    const double second = (P.q[k + 1] - 2.0 * P.q[k] + P.q[k - 1]) / (h * h);
    const double rhs = P.x[k] * P.q[k] + 2.0 * P.q[k] * P.q[k] * P.q[k];
    CHECK(std::abs(second - rhs) < 1e-5 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("numeric cdf transforms") {
  const auto N = NumericCDF::standard_normal();
  CHECK(N.monotone());
  for (double x = -5.0; x <= 5.0; x += 0.0371) {
    CHECK(std::abs(N(x) - 0.5 * std::erfc(-x / std::sqrt(2.0))) < 1e-12);
    const auto A = N.affine(1.5, 2.0);
    CHECK(std::abs(A(x) - 0.5 * std::erfc(-(x - 1.5) / (2.0 * std::sqrt(2.0)))) < 1e-12);
    const auto B = A.negated();
    CHECK(std::abs(B(x) - (1.0 - A(-x))) < 1e-15);
    CHECK(std::abs(B.pdf(x) - A.pdf(-x)) < 1e-15);
  }
  CHECK(N.quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-9));
  CHECK(N.affine(3.0, 2.0).lower() == doctest::Approx(-21.0));
  CHECK(N.affine(3.0, 2.0).negated().upper() == doctest::Approx(21.0));
  CHECK_THROWS(NumericCDF(0.0, 1.0, {0.0}, {}));
}

TEST_CASE("convolution with a point mass is the identity on the grid") {
  const auto& G = goe_cdf();
  const auto delta = NumericCDF::point_mass(G.grid_step());
  for (std::size_t k = 0; k < G.size(); k += 97) {
    const double x = G.grid(k);
    CHECK(std::abs(convolution_cdf_at(G, delta, x) - G(x)) < 1e-8);
    CHECK(std::abs(convolution_cdf_at(delta, G, x) - G(x)) < 1e-8);
  }
}

TEST_CASE("convolution of normals") {
  const auto N = NumericCDF::standard_normal();
  const auto C = convolve(N, N.affine(1.0, 1.0), -8.0, 0.05, 361);
  for (double x = -7.0; x <= 9.0; x += 0.13) CHECK(std::abs(C(x) - 0.5 * std::erfc(-(x - 1.0) / 2.0)) < 1e-6);
}

TEST_CASE("two speed constants") {
  const auto p = ShockLawParams::from_alpha(0.5);
  CHECK(p.eta0 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p.mu == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK(p.sigma1 == doctest::Approx(std::pow(2.0, 2.0 / 3.0) / std::pow(1.5, 1.0 / 3.0)).epsilon(1e-14));
  CHECK(p.sigma2 ==
        doctest::Approx(std::pow(2.0, 2.0 / 3.0) * std::pow(1.25, 1.0 / 3.0) / (std::pow(0.5, 2.0 / 3.0) * 1.5))
            .epsilon(1e-14));
  CHECK(p.gamma == doctest::Approx(std::pow(2.0, 4.0 / 3.0) / std::pow(1.5, 4.0 / 3.0)).epsilon(1e-14));
  CHECK_THROWS_AS(ShockLawParams::from_alpha(1.0), std::domain_error);
}

TEST_CASE("two speed prediction: two quadratures agree") {
  const auto p = ShockLawParams::from_alpha(0.5);
  for (double s = -3.0; s <= 3.0; s += 0.5)
    CHECK(std::abs(two_speed_prediction(p, s) - two_speed_prediction_quadrature(p, s)) < 1e-6);
}

TEST_CASE("two speed prediction is an increasing distribution function in s") {
  const auto p = ShockLawParams::from_alpha(0.5);
  double prev = -1.0;
  for (double s = -6.0; s <= 6.0; s += 0.25) {
    const double v = two_speed_prediction(p, s);
    CHECK(v > prev);
    CHECK(two_speed_literal_reading(p, s) == doctest::Approx(1.0 - v).epsilon(1e-15));
    prev = v;
  }
  CHECK(two_speed_prediction(p, -10.0) < 1e-4);
  CHECK(two_speed_prediction(p, 10.0) > 1.0 - 1e-4);
}

TEST_CASE("two speed prediction symmetric case") {
  auto p = ShockLawParams::from_alpha(0.5);
  p.sigma2 = p.sigma1;
  CHECK(std::abs(two_speed_prediction(p, 0.0) - 0.5) < 1e-6);
  CHECK(std::abs(two_speed_prediction_quadrature(p, 0.0) - 0.5) < 1e-6);
}

TEST_CASE("bernoulli constants and gaussian identity") {
  const auto p = BernoulliLawParams::from_densities(0.25, 0.75);
  CHECK(p.eta == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.m_plus == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(p.m_minus == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(p.v_plus == doctest::Approx(128.0 / 9.0).epsilon(1e-14));
  CHECK(p.v_minus == doctest::Approx(128.0 / 9.0).epsilon(1e-14));
  CHECK(bernoulli_prediction(p, 0.0) == 0.5);
  const boost::math::normal nd(0.0, std::sqrt(p.v_plus + p.v_minus));
  double prev = 0.0;
  for (double u = -5.0; u <= 5.0; u += 0.1) {
    const double v = bernoulli_prediction(p, u);
    CHECK(std::abs(v - boost::math::cdf(boost::math::complement(nd, u * (p.m_plus - p.m_minus)))) < 1e-12);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(BernoulliLawParams::from_densities(0.75, 0.25), std::domain_error);
}

TEST_CASE("multipoint constants") {
  const auto p = MultipointLawParams::from_beta(3.0);
  CHECK(p.mu == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(p.mu_plus == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(p.mu_minus == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(p.sigma_as_stated == doctest::Approx(std::pow(6.0, 4.0 / 3.0) / std::pow(4.0, 1.0 / 6.0)).epsilon(1e-14));
  CHECK(p.sigma == doctest::Approx(std::pow(3.0, 4.0 / 3.0) / std::pow(4.0, 1.0 / 6.0)).epsilon(1e-14));
  CHECK(p.sigma_as_stated / p.sigma == doctest::Approx(std::pow(4.0, 2.0 / 3.0)).epsilon(1e-14));
  CHECK(point_to_point_mu(1.0) == 4.0);
  CHECK(point_to_point_sigma(1.0) == doctest::Approx(std::pow(2.0, 4.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("multipoint prediction structure") {
  const auto p = MultipointLawParams::from_beta(1.0);
  const double one = multipoint_prediction(p, {0.5}, {1.0});
  CHECK(one == doctest::Approx(gue_cdf()((1.0 - p.mu_plus * 0.5) / p.sigma) *
                               gue_cdf()((1.0 - p.mu_minus * 0.5) / p.sigma))
                   .epsilon(1e-15));
  const double two = multipoint_prediction(p, {-1.0, 1.0}, {0.5, 2.0});
  CHECK(multipoint_prediction(p, {-1.0, 0.0, 1.0}, {0.5, 1e6, 2.0}) == two);
  CHECK_THROWS_AS(multipoint_prediction(p, {1.0, 0.0}, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(multipoint_prediction(p, {0.0, 1.0}, {0.0}), std::invalid_argument);
}
