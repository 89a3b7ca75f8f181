#include "lppshock/interface.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lppshock {

Color color_of(double l_plus, double l_minus) {
  if (l_plus == l_minus) throw TieError("equal passage times from both halves");
  return l_plus > l_minus ? Color::red : Color::blue;
}

Color color(Site s, const PassageGrid& plus, const PassageGrid& minus) {
  return color_of(plus.raw(s), minus.raw(s));
}

InterfaceTrace trace_interface(const PassageGrid& plus, const PassageGrid& minus, const PassageGrid& full,
                               std::int64_t n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
  InterfaceTrace tr;
  tr.phi.reserve(static_cast<std::size_t>(n_max + 1));
  Site p{0, 0};
  tr.phi.push_back(p);
  tr.tau.push_back(full.raw(p));
  for (std::int64_t n = 0; n < n_max; ++n) {
    const Color c = color({p.i + 1, p.j + 1}, plus, minus);
    p = c == Color::red ? Site{p.i + 1, p.j} : Site{p.i, p.j + 1};
    tr.phi.push_back(p);
    tr.tau.push_back(full.raw(p));
  }
  return tr;
}

InterfaceTrace trace_interface(const WeightSample& weights, const StartSet& plus, const StartSet& minus,
                               const StartSet& full, std::int64_t n_max, StartWeight halves) {
  const Rect& w = weights.window();
  return trace_interface(passage_times(weights, plus, w, halves), passage_times(weights, minus, w, halves),
                         passage_times(weights, full, w), n_max);
}

InterfaceTrace trace_interface(const WeightSample& weights, const StartSet& plus, const StartSet& minus,
                               std::int64_t n_max) {
  return trace_interface(weights, plus, minus, set_union(plus, minus), n_max);
}

InterfaceFollower::InterfaceFollower(std::size_t plus_field, std::size_t minus_field, std::int64_t n_max,
                                     bool record_tau)
    : plus_(plus_field), minus_(minus_field), n_max_(n_max), record_tau_(record_tau) {
  if (n_max < 0) throw std::invalid_argument("n_max must be nonnegative");
  trace_.phi.reserve(static_cast<std::size_t>(n_max + 1));
  trace_.phi.push_back({0, 0});
  if (record_tau_) trace_.tau.reserve(static_cast<std::size_t>(n_max + 1));
}

void InterfaceFollower::advance(const DiagonalSweep& sw) {
  const std::int64_t d = sw.current();
  if (record_tau_ && trace_.tau.empty() && d >= 0)
    trace_.tau.push_back(d <= 1 ? std::max(sw.value(plus_, {0, 0}), sw.value(minus_, {0, 0})) : kUnreachable);
  const std::int64_t n = trace_.steps();
  if (n >= n_max_ || d < n + 2) return;
  if (d > n + 2) throw std::logic_error("interface follower skipped a diagonal");
  const Site p = trace_.phi.back();
  const Site q{p.i + 1, p.j + 1};
  const Color c = color_of(sw.value(plus_, q), sw.value(minus_, q));
  const Site next = c == Color::red ? Site{p.i + 1, p.j} : Site{p.i, p.j + 1};
  trace_.phi.push_back(next);
  if (record_tau_) trace_.tau.push_back(std::max(sw.value(plus_, next), sw.value(minus_, next)));
}

std::vector<SweepField> two_speed_fields(std::int64_t n_max, bool record_argmax, std::int64_t K) {
  const std::int64_t D = n_max + 2;
  if (K == 0) K = D;
  if (K < D) throw std::invalid_argument("start-set truncation below n_max + 2 changes colors");
  const auto pos = two_speed_positions(K);
  return {SweepField{{-K, D - 1, 1, K}, staircase_from_config(pos, Half::plus, K), record_argmax},
          SweepField{{1, K, -K, D}, staircase_from_config(pos, Half::minus, K), record_argmax}};
}

std::vector<SweepField> bernoulli_fields(std::int64_t n_max, bool record_argmax) {
  const std::int64_t D = n_max + 2;
  return {SweepField{{0, D, 1, D}, StartSet({{0, 1}}), record_argmax, StartWeight::included},
          SweepField{{1, D, 0, D}, StartSet({{1, 0}}), record_argmax, StartWeight::included}};
}

double interface_statistic(const InterfaceTrace& trace, double t, double centering, double exponent) {
  const auto n = static_cast<std::int64_t>(std::floor(t));
  if (n > trace.steps()) throw std::length_error("trace shorter than floor(t)");
  return (static_cast<double>(trace.I(n) - trace.J(n)) - centering) / std::pow(t, exponent);
}

double two_speed_centering(double alpha, double t) { return (alpha - 1.0) * t; }

double generic_centering(double eta0, double u, double t) {
  return -t * (1.0 - eta0) / (1.0 + eta0) + 2.0 * u * std::cbrt(t) / std::pow(1.0 + eta0, 4.0 / 3.0);
}

double bernoulli_centering(double eta, double u, double t) {
  return -t * (1.0 - eta) / (1.0 + eta) + 2.0 * u * std::sqrt(t) / std::pow(1.0 + eta, 1.5);
}

TranslationEvents event_translation_check(const InterfaceTrace& trace, const PassageGrid& plus,
                                          const PassageGrid& minus, std::int64_t M, std::int64_t n) {
  if (M < 0 || M > n - 1) throw std::invalid_argument("need 0 <= M <= n-1");
  TranslationEvents ev;
  ev.blue_at_m = color({M, n - M}, plus, minus) == Color::blue;
  ev.interface_left = trace.I(n) <= M;
  ev.blue_at_m_plus = color({M + 1, n - M - 1}, plus, minus) == Color::blue;
  return ev;
}

bool color_cut_holds(const InterfaceTrace& trace, const PassageGrid& plus, const PassageGrid& minus, std::int64_t n) {
  const std::int64_t in = trace.I(n);
  for (std::int64_t k = 0; k <= n; ++k) {
    if (k == in) continue;
    if (color({k, n - k}, plus, minus) != (k < in ? Color::red : Color::blue)) return false;
  }
  return true;
}

}  // namespace lppshock
