#include <algorithm>
#include <array>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>

#include "lppshock/twdist.hpp"

namespace lppshock {

namespace {

using State = std::array<double, 5>;  // q, q', I0, I1, J

double airy_integral_tail(double x) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate([x](double t) { return x + t > 100.0 ? 0.0 : boost::math::airy_ai(x + t); });
}

State airy_state(double x) {
  const double a = boost::math::airy_ai(x), ap = boost::math::airy_ai_prime(x);
  return {a, ap, ap * ap - x * a * a, (2.0 * x * x * a * a - 2.0 * x * ap * ap - a * ap) / 3.0, airy_integral_tail(x)};
}

// q(x) = sqrt(-x/2) sum_n c_n (-x)^{-3n} as x -> -inf, summed to the smallest term
constexpr double kSeries[] = {1.0,
                              -1.0 / 8.0,
                              -73.0 / 128.0,
                              -10657.0 / 1024.0,
                              -13912277.0 / 32768.0,
                              -8045883943.0 / 262144.0,
                              -14518451390349.0 / 4194304.0,
                              -18847128706420641.0 / 33554432.0,
                              -266287398541797779277.0 / 2147483648.0,
                              -614077537500104697967243.0 / 17179869184.0,
                              -3583820408994355704357070999.0 / 274877906944.0,
                              -12909064475999593160583566233991.0 / 2199023255552.0};

std::array<double, 2> series_q(double x) {
  const double y = -x, r = std::sqrt(0.5 * y), z = 1.0 / (y * y * y);
  double f = 0.0, df = 0.0, zn = 1.0, last = 0.0;
  for (std::size_t n = 0; n < std::size(kSeries); ++n) {
    const double term = kSeries[n] * zn;
    if (n > 1 && std::abs(term) >= std::abs(last)) break;
    f += term;
    df += -3.0 * static_cast<double>(n) * term / y;
    last = term;
    zn *= z;
  }
  // d/dx = -d/dy
  return {r * f, -(0.5 / y * r * f + r * df)};
}

}  // namespace

PainleveTables painleve_tables(const PainleveOptions& opt) {
  if (!(opt.h > 0.0 && opt.lo <= opt.series_below && opt.series_below < opt.x0 && opt.x0 <= opt.hi)) throw std::invalid_argument("invalid Painleve options");
  const auto n = static_cast<std::size_t>(std::llround((opt.hi - opt.lo) / opt.h)) + 1;
  const auto k0 = static_cast<std::size_t>(std::llround((opt.x0 - opt.lo) / opt.h));
  const auto ks = static_cast<std::size_t>(std::llround((opt.series_below - opt.lo) / opt.h));
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = opt.lo + opt.h * static_cast<double>(k);
  x[k0] = opt.x0;
  std::vector<State> st(n);
  for (std::size_t k = k0; k < n; ++k) st[k] = airy_state(x[k]);

  auto rhs = [](const State& y, State& dy, double t) {
    dy[0] = y[1];
    dy[1] = t * y[0] + 2.0 * y[0] * y[0] * y[0];
    dy[2] = -y[0] * y[0];
    dy[3] = -y[2];
    dy[4] = -y[0];
  };
  namespace ode = boost::numeric::odeint;
  auto stepper = ode::make_controlled(opt.abs_tol, opt.rel_tol, ode::runge_kutta_dopri5<State>());
  // shooting from the Airy side down to series_below
  std::vector<double> times(x.begin() + static_cast<std::ptrdiff_t>(ks), x.begin() + static_cast<std::ptrdiff_t>(k0) + 1);
  std::reverse(times.begin(), times.end());
  State y = st[k0];
  std::size_t idx = 0;
  ode::integrate_times(stepper, rhs, y, times.begin(), times.end(), -opt.h, [&](const State& s, double) {
    st[k0 - idx] = s;
    ++idx;
  });
  if (idx != k0 - ks + 1) throw NumericError("Painleve integration stopped early");

  // the shooting solution leaves Hastings-McLeod further left; continue the integrals along the series
  if (ks > 0) {
    auto rhs_series = [](const State& y, State& dy, double t) {
      const auto q = series_q(t);
      dy[0] = dy[1] = 0.0;
      dy[2] = -q[0] * q[0];
      dy[3] = -y[2];
      dy[4] = -q[0];
    };
    const auto qs = series_q(x[ks]);
    State z = st[ks];
    z[0] = qs[0];
    z[1] = qs[1];
    st[ks] = z;
    std::vector<double> left(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(ks) + 1);
    std::reverse(left.begin(), left.end());
    std::size_t li = 0;
    auto stepper2 = ode::make_controlled(opt.abs_tol, opt.rel_tol, ode::runge_kutta_dopri5<State>());
    ode::integrate_times(stepper2, rhs_series, z, left.begin(), left.end(), -opt.h, [&](const State& s, double) {
      State v = s;
      const auto q = series_q(x[ks - li]);
      v[0] = q[0];
      v[1] = q[1];
      st[ks - li] = v;
      ++li;
    });
    if (li != ks + 1) throw NumericError("Painleve series continuation stopped early");
  }

  std::vector<double> q, i0, i1, j;
  std::vector<double> gue(n), goe(n), dgue(n), dgoe(n);
  for (std::size_t k = 0; k < n; ++k) {
    const State& s = st[k];
    if (!std::isfinite(s[0]) || !std::isfinite(s[3])) throw NumericError("Painleve solution diverged");
    q.push_back(s[0]);
    i0.push_back(s[2]);
    i1.push_back(s[3]);
    j.push_back(s[4]);
    gue[k] = std::exp(-s[3]);
    goe[k] = std::exp(-0.5 * s[4]) * std::sqrt(gue[k]);
    dgue[k] = gue[k] * s[2];
    dgoe[k] = 0.5 * goe[k] * (s[0] + s[2]);
  }
  return PainleveTables{std::move(x),
                        std::move(q),
                        std::move(i0),
                        std::move(i1),
                        std::move(j),
                        NumericCDF(opt.lo, opt.h, std::move(gue), std::move(dgue)),
                        NumericCDF(opt.lo, opt.h, std::move(goe), std::move(dgoe))};
}

const PainleveTables& painleve() {
  static const PainleveTables tables = painleve_tables(PainleveOptions{});
  return tables;
}

const NumericCDF& gue_cdf() { return painleve().gue; }
const NumericCDF& goe_cdf() { return painleve().goe; }

}  // namespace lppshock
