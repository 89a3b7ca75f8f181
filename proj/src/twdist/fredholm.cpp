#include <Eigen/Dense>
#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <map>
#include <mutex>

#include "lppshock/twdist.hpp"

namespace lppshock {

namespace {

void check_airy_range(double x) {
  if (!(std::abs(x) <= 50.0)) throw std::range_error("airy argument outside [-50, 50]");
}

const QuadratureRule& standard_rule(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 1; k < n; ++k) {
    const double b = static_cast<double>(k) / std::sqrt(4.0 * static_cast<double>(k * k) - 1.0);
    J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = b;
    J(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadratureRule r;
  for (std::size_t k = 0; k < n; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    r.x.push_back(es.eigenvalues()(kk));
    const double v = es.eigenvectors()(0, kk);
    r.w.push_back(2.0 * v * v);
  }
  return cache.emplace(n, std::move(r)).first->second;
}

}  // namespace

double airy(double x) {
  check_airy_range(x);
  return boost::math::airy_ai(x);
}

double airy_prime(double x) {
  check_airy_range(x);
  return boost::math::airy_ai_prime(x);
}

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0) throw std::invalid_argument("gauss_legendre needs n >= 1");
  const QuadratureRule& s = standard_rule(n);
  QuadratureRule r;
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  for (std::size_t k = 0; k < n; ++k) {
    r.x.push_back(c + hw * s.x[k]);
    r.w.push_back(hw * s.w[k]);
  }
  return r;
}

double fredholm_gue(double s, std::size_t nodes) {
  const double b = std::max(s + 8.0, 16.0);
  const auto q = gauss_legendre(nodes, s, b);
  const auto n = static_cast<Eigen::Index>(nodes);
  std::vector<double> ai(nodes), aip(nodes), sw(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    ai[k] = airy(q.x[k]);
    aip[k] = airy_prime(q.x[k]);
    sw[k] = std::sqrt(q.w[k]);
  }
  Eigen::MatrixXd A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto a = static_cast<std::size_t>(i), c = static_cast<std::size_t>(j);
      const double K = i == j ? aip[a] * aip[a] - q.x[a] * ai[a] * ai[a]
                              : (ai[a] * aip[c] - aip[a] * ai[c]) / (q.x[a] - q.x[c]);
      A(i, j) = (i == j ? 1.0 : 0.0) - sw[a] * K * sw[c];
    }
  return A.partialPivLu().determinant();
}

double fredholm_goe(double s, std::size_t nodes) {
  const double L = std::max(16.0 - s, 4.0);
  const auto q = gauss_legendre(nodes, 0.0, L);
  const auto n = static_cast<Eigen::Index>(nodes);
  Eigen::MatrixXd A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto a = static_cast<std::size_t>(i), c = static_cast<std::size_t>(j);
      const double arg = q.x[a] + q.x[c] + s;
      const double B = arg > 50.0 ? 0.0 : airy(arg);
      const double v = -std::sqrt(q.w[a] * q.w[c]) * B;
      A(i, j) = v + (i == j ? 1.0 : 0.0);
      A(j, i) = A(i, j);
    }
  return A.partialPivLu().determinant();
}

namespace {

constexpr std::size_t kFredholmNodes = 80;

double checked(double a, double b, double s) {
  if (!(std::abs(a - b) <= 1e-10)) throw NumericError("Fredholm quadrature not converged at s = " + std::to_string(s));
  return b;
}

void check_tw_range(double s) {
  if (!(s >= -10.0 && s <= 10.0)) throw std::domain_error("Tracy-Widom evaluation needs s in [-10, 10]");
}

}  // namespace

double f_gue(double s) {
  check_tw_range(s);
  return checked(fredholm_gue(s, kFredholmNodes), fredholm_gue(s, 2 * kFredholmNodes), s);
}

double f_goe(double s) {
  check_tw_range(s);
  return checked(fredholm_goe(s, kFredholmNodes), fredholm_goe(s, 2 * kFredholmNodes), s);
}

}  // namespace lppshock
