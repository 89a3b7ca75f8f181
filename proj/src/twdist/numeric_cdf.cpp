#include <algorithm>
#include <cmath>

#include "lppshock/twdist.hpp"

namespace lppshock {

NumericCDF::NumericCDF(double lo, double h, std::vector<double> values, std::vector<double> densities)
    : lo_(lo), h_(h), v_(std::move(values)), d_(std::move(densities)) {
  const std::size_t n = v_.size();
  if (n < 2) throw std::invalid_argument("NumericCDF needs at least two grid points");
  if (!(h_ > 0.0)) throw std::invalid_argument("NumericCDF needs a positive step");
  if (d_.empty()) {
    // monotone-spline differentiation: centered differences, one-sided at the ends
    d_.resize(n);
    d_[0] = (v_[1] - v_[0]) / h_;
    d_[n - 1] = (v_[n - 1] - v_[n - 2]) / h_;
    for (std::size_t k = 1; k + 1 < n; ++k) d_[k] = (v_[k + 1] - v_[k - 1]) / (2.0 * h_);
  }
  if (d_.size() != n) throw std::invalid_argument("NumericCDF densities must match values");
  m_.resize(n);
  for (std::size_t k = 0; k < n; ++k) m_[k] = std::max(0.0, d_[k]);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double delta = (v_[k + 1] - v_[k]) / h_;
    if (!(delta > 0.0)) {
      m_[k] = 0.0;
      m_[k + 1] = 0.0;
      continue;
    }
    const double a = m_[k] / delta, b = m_[k + 1] / delta;
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      m_[k] = tau * a * delta;
      m_[k + 1] = tau * b * delta;
    }
  }
}

NumericCDF NumericCDF::standard_normal() {
  const double lo = -12.0, h = 1e-3;
  const std::size_t n = 24001;
  std::vector<double> v(n), d(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = lo + h * static_cast<double>(k);
    v[k] = 0.5 * std::erfc(-x / std::sqrt(2.0));
    d[k] = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  }
  return NumericCDF(lo, h, std::move(v), std::move(d));
}

NumericCDF NumericCDF::point_mass(double h) { return NumericCDF(-0.5 * h, h, {0.0, 1.0}, {0.0, 0.0}); }

double NumericCDF::base_cdf(double z) const {
  const double u = (z - lo_) / h_;
  if (!(u > 0.0)) return v_.front();
  if (u >= static_cast<double>(v_.size() - 1)) return v_.back();
  const auto k = static_cast<std::size_t>(u);
  const double t = u - static_cast<double>(k);
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0, h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2, h11 = t3 - t2;
  const double y = h00 * v_[k] + h10 * h_ * m_[k] + h01 * v_[k + 1] + h11 * h_ * m_[k + 1];
  return std::clamp(y, 0.0, 1.0);
}

double NumericCDF::base_pdf(double z) const {
  const double u = (z - lo_) / h_;
  if (!(u >= 0.0) || u > static_cast<double>(v_.size() - 1)) return 0.0;
  auto k = static_cast<std::size_t>(u);
  if (k == v_.size() - 1) k -= 1;
  const double t = u - static_cast<double>(k);
  const double t2 = t * t;
  const double d00 = 6.0 * t2 - 6.0 * t, d10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double d01 = -6.0 * t2 + 6.0 * t, d11 = 3.0 * t2 - 2.0 * t;
  return std::max(0.0, (d00 * v_[k] + d01 * v_[k + 1]) / h_ + d10 * m_[k] + d11 * m_[k + 1]);
}

double NumericCDF::cdf(double x) const {
  const double z = (x - loc_) / scale_;
  return neg_ ? 1.0 - base_cdf(-z) : base_cdf(z);
}

double NumericCDF::pdf(double x) const {
  const double z = (x - loc_) / scale_;
  return (neg_ ? base_pdf(-z) : base_pdf(z)) / scale_;
}

NumericCDF NumericCDF::affine(double loc, double scale) const {
  if (!(scale > 0.0)) throw std::invalid_argument("affine transform needs a positive scale");
  NumericCDF r = *this;
  r.loc_ = loc + scale * loc_;
  r.scale_ = scale * scale_;
  return r;
}

NumericCDF NumericCDF::negated() const {
  NumericCDF r = *this;
  r.loc_ = -loc_;
  r.neg_ = !neg_;
  return r;
}

double NumericCDF::lower() const {
  const double hi = lo_ + h_ * static_cast<double>(v_.size() - 1);
  return loc_ + scale_ * (neg_ ? -hi : lo_);
}

double NumericCDF::upper() const {
  const double hi = lo_ + h_ * static_cast<double>(v_.size() - 1);
  return loc_ + scale_ * (neg_ ? -lo_ : hi);
}

double NumericCDF::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("quantile needs p in [0, 1]");
  double a = lower(), b = upper();
  for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
    const double c = 0.5 * (a + b);
    if (cdf(c) < p)
      a = c;
    else
      b = c;
  }
  return 0.5 * (a + b);
}

bool NumericCDF::monotone() const {
  for (std::size_t k = 0; k < v_.size(); ++k) {
    if (!(v_[k] >= 0.0 && v_[k] <= 1.0)) return false;
    if (k > 0 && v_[k] < v_[k - 1]) return false;
  }
  return true;
}

double convolution_cdf_at(const NumericCDF& F, const NumericCDF& G, double x) {
  const std::size_t n = G.size();
  const auto& v = G.values();
  double acc = v.front() * F.cdf(x - G.image(G.grid(0)));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double mass = v[k + 1] - v[k];
    if (mass != 0.0) acc += mass * F.cdf(x - G.image(0.5 * (G.grid(k) + G.grid(k + 1))));
  }
  return acc + (1.0 - v.back()) * F.cdf(x - G.image(G.grid(n - 1)));
}

NumericCDF convolve(const NumericCDF& F, const NumericCDF& G, double lo, double h, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = convolution_cdf_at(F, G, lo + h * static_cast<double>(k));
  for (std::size_t k = 1; k < n; ++k)
    if (v[k] < v[k - 1]) {
      if (v[k - 1] - v[k] > 1e-12) throw NumericError("convolution lost monotonicity");
      v[k] = v[k - 1];
    }
  if (!(v.front() <= 1e-6 && v.back() >= 1.0 - 1e-6)) throw NumericError("convolution grid does not hold the mass");
  return NumericCDF(lo, h, std::move(v), {});
}

}  // namespace lppshock
