#include "lppshock/tasep.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace lppshock {

ParticleConfig ParticleConfig::uniform(ParticlePositions positions, double rate) {
  ParticleConfig c;
  for (const auto& [n, x] : positions) c.rates[n] = rate;
  c.positions = std::move(positions);
  c.validate();
  return c;
}

void ParticleConfig::validate() const {
  const std::int64_t* prev = nullptr;
  for (const auto& [n, x] : positions) {
    if (prev != nullptr && !(x < *prev)) throw InvalidConfiguration("positions must strictly decrease in the label");
    prev = &x;
    const auto r = rates.find(n);
    if (r == rates.end() || !(r->second > 0)) throw InvalidConfiguration("missing or nonpositive rate for particle " + std::to_string(n));
  }
}

JumpTable::JumpTable(Rect window, std::vector<double> t) : window_(window), t_(std::move(t)) {}

double JumpTable::raw(std::int64_t m, std::int64_t n) const {
  if (!window_.contains(Site{m, n})) throw CoverageError("site outside jump table");
  return t_[static_cast<std::size_t>((n - window_.j0) * window_.width() + (m - window_.i0))];
}

PassageTime JumpTable::time(std::int64_t m, std::int64_t n) const {
  const double v = raw(m, n);
  if (v == kUnreachable) return std::nullopt;
  return v;
}

namespace {

void check_rates(const ParticleConfig& config, const WeightSample& weights, const Rect& window) {
  if (!weights.covers(window)) throw CoverageError("weights do not cover the TASEP window");
  for (std::int64_t n = window.j0; n <= window.j1; ++n) {
    if (!config.positions.contains(n)) throw ConsistencyError("no particle for row " + std::to_string(n));
    const double v = config.rates.at(n);
    double r = 0;
    if (weights.field().row_rate(n, r)) {
      if (r != v) throw ConsistencyError("row " + std::to_string(n) + " weights do not match the particle rate");
      continue;
    }
    for (std::int64_t m = window.i0; m <= window.i1; ++m) {
      const SiteRate s = weights.field().rate_at({m, n});
      if (s.zero_weight || s.rate != v)
        throw ConsistencyError("row " + std::to_string(n) + " weights do not match the particle rate");
    }
  }
}

std::int64_t start_column(const ParticleConfig& c, std::int64_t n, const Rect& window) {
  const std::int64_t s = n + c.positions.at(n);
  if (s < window.i0) throw ConsistencyError("particle " + std::to_string(n) + " starts left of the window");
  return s;
}

}  // namespace

JumpTable evolve_from_weights(const ParticleConfig& config, const WeightSample& weights, const Rect& window) {
  config.validate();
  check_rates(config, weights, window);
  const auto w = window.width();
  std::vector<double> t(window.size(), kUnreachable);
  for (std::int64_t n = window.j0; n <= window.j1; ++n) {
    const std::int64_t s = start_column(config, n, window);
    double* row = t.data() + (n - window.j0) * w;
    const double* below = n > window.j0 ? row - w : nullptr;
    for (std::int64_t m = s; m <= window.i1; ++m) {
      const auto k = m - window.i0;
      if (m == s) {
        row[k] = 0.0;
        continue;
      }
      const double blocker = below != nullptr ? below[k] : kUnreachable;
      row[k] = std::max(row[k - 1], blocker) + weights.at({m, n});
    }
  }
  return JumpTable(window, std::move(t));
}

EventSimulation::EventSimulation(const ParticleConfig& config, const WeightSample& weights, const Rect& window) {
  config.validate();
  check_rates(config, weights, window);
  std::map<std::int64_t, std::int64_t> pos;
  for (std::int64_t n = window.j0; n <= window.j1; ++n) {
    start_column(config, n, window);
    pos[n] = config.positions.at(n);
    start_[n] = pos[n];
    arrivals_[n] = {};
  }
  using Event = std::pair<double, std::int64_t>;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue;
  std::map<std::int64_t, bool> scheduled;
  auto target = [&](std::int64_t n) { return n + pos[n] + 1; };
  auto can_jump = [&](std::int64_t n) {
    if (target(n) > window.i1) return false;
    return n == window.j0 || pos[n - 1] >= pos[n] + 2;
  };
  auto schedule = [&](std::int64_t n, double from) {
    queue.push({from + weights.at({target(n), n}), n});
    scheduled[n] = true;
  };
  for (std::int64_t n = window.j0; n <= window.j1; ++n)
    if (can_jump(n)) schedule(n, 0.0);
  while (!queue.empty()) {
    const auto [t, n] = queue.top();
    queue.pop();
    scheduled[n] = false;
    pos[n] += 1;
    arrivals_[n].push_back(t);
    ++events_;
    if (n > window.j0 && !(pos[n] < pos[n - 1])) throw ConsistencyError("exclusion violated");
    if (can_jump(n)) schedule(n, t);
    const std::int64_t f = n + 1;
    if (f <= window.j1 && !scheduled[f] && can_jump(f)) schedule(f, t);
  }
}

std::int64_t EventSimulation::position(std::int64_t n, double t) const {
  const auto& a = arrivals_.at(n);
  return start_.at(n) + static_cast<std::int64_t>(std::upper_bound(a.begin(), a.end(), t) - a.begin());
}

ProbeReport correspondence_probes(const JumpTable& table, const EventSimulation& sim, const SeedPlan& plan,
                                  std::size_t probes) {
  const Rect& w = table.window();
  double t_hi = 0;
  for (std::int64_t n = w.j0; n <= w.j1; ++n)
    for (std::int64_t m = w.i0; m <= w.i1; ++m) t_hi = std::max(t_hi, table.raw(m, n));
  PhiloxStream g(plan, StreamTag::instance, 1);
  ProbeReport rep;
  for (std::size_t k = 0; k < probes; ++k) {
    const std::int64_t m = w.i0 + static_cast<std::int64_t>(g.below(static_cast<std::uint64_t>(w.width())));
    const std::int64_t n = w.j0 + static_cast<std::int64_t>(g.below(static_cast<std::uint64_t>(w.height())));
    const double T = table.raw(m, n);
    double t;
    switch (k % 3) {
      case 0: t = g.uniform() * 1.1 * t_hi; break;
      case 1: t = T == kUnreachable ? 0.0 : T; break;
      default: t = T > 0.0 ? std::nextafter(T, 0.0) : 0.0; break;
    }
    const bool tasep = sim.position(n, t) >= m - n;
    const bool lpp = T <= t;
    ++rep.probes;
    rep.violations += tasep != lpp;
  }
  return rep;
}

Occupancy bernoulli_occupancy(double rho_minus, double rho_plus, std::int64_t x_lo, std::int64_t x_hi,
                              const SeedPlan& plan) {
  if (x_hi < x_lo) throw std::invalid_argument("empty occupancy window");
  PhiloxStream g(plan, StreamTag::tasep_initial);
  Occupancy o{x_lo, std::vector<std::uint8_t>(static_cast<std::size_t>(x_hi - x_lo + 1))};
  for (std::int64_t x = x_lo; x <= x_hi; ++x)
    o.occ[static_cast<std::size_t>(x - x_lo)] = g.uniform() <= (x < 0 ? rho_minus : rho_plus);
  return o;
}

void run_site_clocks(Occupancy& state, double horizon, PhiloxStream& clocks) {
  if (state.occ.size() < 2) return;
  const std::uint64_t sites = state.occ.size() - 1;
  const double rate = static_cast<double>(sites);
  auto& o = state.occ;
  for (double t = clocks.exponential(rate); t <= horizon; t += clocks.exponential(rate)) {
    const auto x = static_cast<std::size_t>(clocks.below(sites));
    if (o[x] == 1 && o[x + 1] == 0) {
      o[x] = 0;
      o[x + 1] = 1;
    }
  }
}

std::int64_t SecondClassTrack::at(double t) const {
  const auto k = std::upper_bound(times.begin(), times.end(), t) - times.begin();
  return X[static_cast<std::size_t>(k - 1)];
}

namespace {

std::int64_t default_padding(double horizon, std::int64_t padding) {
  return padding >= 0 ? padding : static_cast<std::int64_t>(std::ceil(3.0 * horizon)) + 2;
}

}  // namespace

SecondClassTrack second_class_trajectory(double rho_minus, double rho_plus, double horizon, const SeedPlan& plan,
                                         std::int64_t padding) {
  const std::int64_t P = default_padding(horizon, padding);
  Occupancy a = bernoulli_occupancy(rho_minus, rho_plus, -P, P, plan);
  Occupancy b = a;
  a.occ[static_cast<std::size_t>(P)] = 1;
  b.occ[static_cast<std::size_t>(P)] = 0;
  SecondClassTrack track;
  PhiloxStream clocks(plan, StreamTag::tasep_clocks);
  const std::uint64_t sites = a.occ.size() - 1;
  const double rate = static_cast<double>(sites);
  auto& ea = a.occ;
  auto& eb = b.occ;
  std::size_t X = static_cast<std::size_t>(P);
  for (double t = clocks.exponential(rate); t <= horizon; t += clocks.exponential(rate)) {
    const auto x = static_cast<std::size_t>(clocks.below(sites));
    const int before = (ea[x] != eb[x]) + (ea[x + 1] != eb[x + 1]);
    bool moved = false;
    if (ea[x] == 1 && ea[x + 1] == 0) {
      ea[x] = 0;
      ea[x + 1] = 1;
      moved = true;
    }
    if (eb[x] == 1 && eb[x + 1] == 0) {
      eb[x] = 0;
      eb[x + 1] = 1;
      moved = true;
    }
    if (!moved) continue;
    ++track.events;
    const int after = (ea[x] != eb[x]) + (ea[x + 1] != eb[x + 1]);
    if (before != after) throw ConsistencyError("discrepancy count changed at a jump");
    if (after == 0) continue;
    const std::size_t nx = ea[x] != eb[x] ? x : x + 1;
    if (nx != X) {
      if (nx + 1 != X && X + 1 != nx) throw ConsistencyError("second class particle moved more than one site");
      X = nx;
      track.times.push_back(t);
      track.X.push_back(static_cast<std::int64_t>(X) - P);
    }
  }
  return track;
}

Occupancy shock_state(double rho_minus, double rho_plus, double horizon, const SeedPlan& plan, std::int64_t padding) {
  const std::int64_t P = default_padding(horizon, padding);
  Occupancy a = bernoulli_occupancy(rho_minus, rho_plus, -P, P, plan);
  PhiloxStream clocks(plan, StreamTag::tasep_clocks);
  run_site_clocks(a, horizon, clocks);
  return a;
}

DensityProfile empirical_density_profile(const std::vector<Occupancy>& states, double t, std::vector<double> edges) {
  if (states.empty()) throw std::invalid_argument("empty ensemble");
  if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end()) || !(t > 0))
    throw std::invalid_argument("need sorted bin edges and t > 0");
  const std::size_t nb = edges.size() - 1;
  std::vector<double> occ(nb, 0.0), cnt(nb, 0.0);
  for (const Occupancy& s : states) {
    for (std::size_t k = 0; k < s.occ.size(); ++k) {
      const double xi = static_cast<double>(s.offset + static_cast<std::int64_t>(k)) / t;
      const auto it = std::upper_bound(edges.begin(), edges.end(), xi);
      if (it == edges.begin() || it == edges.end()) continue;
      const auto b = static_cast<std::size_t>(it - edges.begin() - 1);
      occ[b] += s.occ[k];
      cnt[b] += 1;
    }
  }
  DensityProfile p{std::move(edges), std::vector<double>(nb, 0.0)};
  for (std::size_t b = 0; b < nb; ++b) p.density[b] = cnt[b] > 0 ? occ[b] / cnt[b] : 0.0;
  return p;
}

}  // namespace lppshock
