#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lppshock {

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ai(x) and Ai'(x) for |x| <= 50; std::range_error outside.
double airy(double x);
double airy_prime(double x);

struct QuadratureRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// n-point Gauss-Legendre rule on [a, b] (Golub-Welsch).
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

/// det(I - K_Airy) on L2(s, inf) by Nystrom quadrature with the given node count.
double fredholm_gue(double s, std::size_t nodes);
/// det(I - B_s) on L2(0, inf), B_s(x, y) = Ai(x + y + s).
double fredholm_goe(double s, std::size_t nodes);

/// Fredholm routes with n and 2n nodes; NumericError when they differ by more than 1e-10. s in [-10, 10].
double f_gue(double s);
double f_goe(double s);

/// Distribution function on a uniform grid with monotone cubic Hermite interpolation.
/// Evaluation maps x through an affine (and optionally reflecting) transform, so location/scale
/// families and reflections share the underlying table.
class NumericCDF {
 public:
  NumericCDF(double lo, double h, std::vector<double> values, std::vector<double> densities);

  /// Standard normal tabulated on [-12, 12] with step 1e-3.
  static NumericCDF standard_normal();
  /// Point mass at 0 as a single jump cell [-h/2, h/2].
  static NumericCDF point_mass(double h = 1e-3);

  double operator()(double x) const { return cdf(x); }
  double cdf(double x) const;
  double pdf(double x) const;
  /// Law of loc + scale * X.
  NumericCDF affine(double loc, double scale) const;
  /// Law of -X.
  NumericCDF negated() const;
  double quantile(double p) const;

  /// Support of the tabulated law after the transform.
  double lower() const;
  double upper() const;

  const std::vector<double>& values() const { return v_; }
  const std::vector<double>& densities() const { return d_; }
  double grid_lo() const { return lo_; }
  double grid_step() const { return h_; }
  std::size_t size() const { return v_.size(); }
  double grid(std::size_t k) const { return lo_ + h_ * static_cast<double>(k); }

  /// Image of a base-grid abscissa under the transform.
  double image(double z) const { return loc_ + scale_ * (neg_ ? -z : z); }

  /// Values nondecreasing and within [0, 1].
  bool monotone() const;

 private:
  double base_cdf(double z) const;
  double base_pdf(double z) const;

  double lo_, h_;
  std::vector<double> v_, d_;  // values and densities on the grid
  std::vector<double> m_;      // Fritsch-Carlson limited slopes
  double loc_ = 0.0, scale_ = 1.0;
  bool neg_ = false;
};

struct PainleveOptions {
  double x0 = 8.0;              // q(x0) = Ai(x0)
  double series_below = -6.5;   // left of this, q from its asymptotic series
  double lo = -12.0;
  double hi = 12.0;
  double h = 1e-3;
  double abs_tol = 1e-15;
  double rel_tol = 1e-13;
};

/// Hastings-McLeod solution and the derived distribution functions on a grid.
struct PainleveTables {
  std::vector<double> x, q, i0, i1, j;
  NumericCDF gue;
  NumericCDF goe;
};

PainleveTables painleve_tables(const PainleveOptions& opt);
/// Default tables, built once.
const PainleveTables& painleve();

/// F_GUE and F_GOE from the default Painleve tables.
const NumericCDF& gue_cdf();
const NumericCDF& goe_cdf();

/// Law of X + Y for independent X ~ F, Y ~ G, at one point: midpoint Stieltjes sum over G's cells.
double convolution_cdf_at(const NumericCDF& F, const NumericCDF& G, double x);
/// Same on the grid lo + k h, k = 0..n-1, with spline-derivative densities.
NumericCDF convolve(const NumericCDF& F, const NumericCDF& G, double lo, double h, std::size_t n);

struct ShockLawParams {
  double alpha, eta0, mu, sigma1, sigma2, gamma;
  static ShockLawParams from_alpha(double alpha);
};

struct BernoulliLawParams {
  double rho_minus, rho_plus, eta, v_plus, v_minus, m_plus, m_minus;
  static BernoulliLawParams from_densities(double rho_minus, double rho_plus);
};

struct MultipointLawParams {
  double beta, mu, mu_plus, mu_minus;
  /// Fluctuation scale used in predictions: (1+beta)^{-1/6} (1 + sqrt(1+beta))^{4/3}, the point-to-point
  /// scale for slope 1+beta at unit height.
  double sigma;
  /// (1+beta+sqrt(1+beta))^{4/3} / (1+beta)^{1/6}; larger than sigma by (1+beta)^{2/3}.
  double sigma_as_stated;
  static MultipointLawParams from_beta(double beta);
};

/// Point-to-point scale: mean (1 + sqrt(eta))^2, fluctuation eta^{-1/6} (1 + sqrt(eta))^{4/3}.
double point_to_point_mu(double eta);
double point_to_point_sigma(double eta);

/// Laws of the rescaled half passage times at shift s: chi1 ~ F_GOE((x - gamma s)/sigma1),
/// chi2 ~ F_GOE((x - gamma s/alpha)/sigma2).
NumericCDF two_speed_chi1(const ShockLawParams& p, double s);
NumericCDF two_speed_chi2(const ShockLawParams& p, double s);

/// Limit of P(statistic <= s): P(chi2 - chi1 > 0), i.e. (M, t-M) blue. Increasing in s.
/// Generic form: mass of (0, inf) under G2 * G1,- with G1,-(x) = 1 - G1(-x).
double two_speed_prediction(const ShockLawParams& p, double s);
/// Same value by adaptive Gauss-Kronrod on the integral of f2(y) G1(y) dy.
double two_speed_prediction_quadrature(const ShockLawParams& p, double s);
/// P(chi1 - chi2 >= 0) taken literally: one minus the prediction, nonincreasing in s.
double two_speed_literal_reading(const ShockLawParams& p, double s);

/// Gaussian tail from u (m+ - m-) with variance v+ + v-.
double bernoulli_prediction(const BernoulliLawParams& p, double u);

/// F_GUE(min_k(s_k - mu+ u_k)/sigma) F_GUE(min_k(s_k - mu- u_k)/sigma); u strictly increasing.
double multipoint_prediction(const MultipointLawParams& p, const std::vector<double>& u, const std::vector<double>& s);

}  // namespace lppshock
