#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "lppshock/twdist.hpp"

namespace lppshock {

ShockLawParams ShockLawParams::from_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("two-speed law needs 0 < alpha < 1");
  const double c = 2.0 - alpha;
  return ShockLawParams{alpha,
                        alpha / c,
                        4.0 / c,
                        std::cbrt(4.0) / std::cbrt(c),
                        std::cbrt(4.0) * std::cbrt(2.0 - 2.0 * alpha + alpha * alpha) / (std::cbrt(alpha * alpha) * c),
                        std::cbrt(16.0) / std::cbrt(c * c * c * c)};
}

BernoulliLawParams BernoulliLawParams::from_densities(double rho_minus, double rho_plus) {
  if (!(rho_minus > 0.0 && rho_minus < rho_plus && rho_plus < 1.0))
    throw std::domain_error("Bernoulli law needs 0 < rho_minus < rho_plus < 1");
  const double eta = (1.0 - rho_plus) * (1.0 - rho_minus) / (rho_minus * rho_plus);
  BernoulliLawParams p{};
  p.rho_minus = rho_minus;
  p.rho_plus = rho_plus;
  p.eta = eta;
  p.v_plus = 1.0 / (rho_minus * rho_minus) - eta / ((1.0 - rho_minus) * (1.0 - rho_minus));
  p.v_minus = eta / ((1.0 - rho_plus) * (1.0 - rho_plus)) - 1.0 / (rho_plus * rho_plus);
  p.m_plus = 1.0 / (1.0 - rho_minus);
  p.m_minus = 1.0 / (1.0 - rho_plus);
  return p;
}

double point_to_point_mu(double eta) {
  const double r = 1.0 + std::sqrt(eta);
  return r * r;
}

double point_to_point_sigma(double eta) { return std::pow(eta, -1.0 / 6.0) * std::pow(1.0 + std::sqrt(eta), 4.0 / 3.0); }

MultipointLawParams MultipointLawParams::from_beta(double beta) {
  if (!(beta > 0.0)) throw std::domain_error("multipoint law needs beta > 0");
  const double r = std::sqrt(1.0 + beta);
  MultipointLawParams p{};
  p.beta = beta;
  p.mu = (1.0 + r) * (1.0 + r);
  p.mu_plus = 1.0 + 1.0 / r;
  p.mu_minus = 1.0 + r;
  p.sigma = point_to_point_sigma(1.0 + beta);
  p.sigma_as_stated = std::pow(1.0 + beta + r, 4.0 / 3.0) / std::pow(1.0 + beta, 1.0 / 6.0);
  return p;
}

NumericCDF two_speed_chi1(const ShockLawParams& p, double s) { return goe_cdf().affine(p.gamma * s, p.sigma1); }

NumericCDF two_speed_chi2(const ShockLawParams& p, double s) {
  return goe_cdf().affine(p.gamma * s / p.alpha, p.sigma2);
}

double two_speed_prediction(const ShockLawParams& p, double s) {
  const NumericCDF g2 = two_speed_chi2(p, s);
  const NumericCDF g1m = two_speed_chi1(p, s).negated();
  return 1.0 - convolution_cdf_at(g2, g1m, 0.0);
}

double two_speed_prediction_quadrature(const ShockLawParams& p, double s) {
  const NumericCDF g1 = two_speed_chi1(p, s), g2 = two_speed_chi2(p, s);
  // P(chi1 < chi2) = integral of f2(y) G1(y) dy by fixed composite Gauss-Kronrod
  const double a = g2.lower(), b = g2.upper();
  const int blocks = 1200;
  double acc = 0.0;
  for (int k = 0; k < blocks; ++k) {
    const double l = a + (b - a) * k / blocks, r = a + (b - a) * (k + 1) / blocks;
    acc += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double y) { return g2.pdf(y) * g1.cdf(y); }, l, r, 0, 0.0);
  }
  return acc + (1.0 - g2.values().back());
}

double two_speed_literal_reading(const ShockLawParams& p, double s) { return 1.0 - two_speed_prediction(p, s); }

double bernoulli_prediction(const BernoulliLawParams& p, double u) {
  return 0.5 * std::erfc(u * (p.m_plus - p.m_minus) / std::sqrt(2.0 * (p.v_plus + p.v_minus)));
}

double multipoint_prediction(const MultipointLawParams& p, const std::vector<double>& u, const std::vector<double>& s) {
  if (u.empty() || u.size() != s.size()) throw std::invalid_argument("multipoint prediction needs matching nonempty u and s");
  for (std::size_t k = 1; k < u.size(); ++k)
    if (!(u[k] > u[k - 1])) throw std::invalid_argument("multipoint prediction needs strictly increasing u");
  double a = s[0] - p.mu_plus * u[0], b = s[0] - p.mu_minus * u[0];
  for (std::size_t k = 1; k < u.size(); ++k) {
    a = std::min(a, s[k] - p.mu_plus * u[k]);
    b = std::min(b, s[k] - p.mu_minus * u[k]);
  }
  return gue_cdf().cdf(a / p.sigma) * gue_cdf().cdf(b / p.sigma);
}

}  // namespace lppshock
