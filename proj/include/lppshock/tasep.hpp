#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lppshock/lpp.hpp"

namespace lppshock {

class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Particle n at positions.at(n), jumping right at rate rates.at(n); labels increase right to left.
struct ParticleConfig {
  ParticlePositions positions;
  std::map<std::int64_t, double> rates;

  static ParticleConfig uniform(ParticlePositions positions, double rate);
  void validate() const;
};

/// T(m, n): time at which particle n reaches m - n; -infinity where it started beyond.
class JumpTable {
 public:
  JumpTable(Rect window, std::vector<double> t);
  const Rect& window() const { return window_; }
  double raw(std::int64_t m, std::int64_t n) const;
  PassageTime time(std::int64_t m, std::int64_t n) const;

 private:
  Rect window_;
  std::vector<double> t_;
};

/// Tandem-queue recursion over the particles with rows in the window; the lowest row is unblocked.
/// Row n of the weights must carry rate rates.at(n).
JumpTable evolve_from_weights(const ParticleConfig& config, const WeightSample& weights, const Rect& window);

/// Event-driven TASEP whose n-th particle waits weights(x_n(0) + n + k, n) for its k-th jump,
/// the wait starting once the particle is free to move. Particles stop at the window's right edge.
class EventSimulation {
 public:
  EventSimulation(const ParticleConfig& config, const WeightSample& weights, const Rect& window);

  /// Position of particle n at time t (right-continuous).
  std::int64_t position(std::int64_t n, double t) const;
  std::size_t events() const { return events_; }
  const std::vector<double>& arrivals(std::int64_t n) const { return arrivals_.at(n); }

 private:
  std::map<std::int64_t, std::int64_t> start_;
  std::map<std::int64_t, std::vector<double>> arrivals_;
  std::size_t events_ = 0;
};

struct ProbeReport {
  std::size_t probes = 0;
  std::size_t violations = 0;
};

/// Checks {x_n(t) >= m - n} == {T(m, n) <= t} at random (m, n, t) and at t = T(m, n) itself.
ProbeReport correspondence_probes(const JumpTable& table, const EventSimulation& sim, const SeedPlan& plan,
                                  std::size_t probes);

/// Occupation numbers on [offset, offset + occ.size()).
struct Occupancy {
  std::int64_t offset = 0;
  std::vector<std::uint8_t> occ;

  std::uint8_t at(std::int64_t x) const { return occ.at(static_cast<std::size_t>(x - offset)); }
};

/// Product Bernoulli(rho_minus) on x < 0 and Bernoulli(rho_plus) on x >= 0 over [x_lo, x_hi].
Occupancy bernoulli_occupancy(double rho_minus, double rho_plus, std::int64_t x_lo, std::int64_t x_hi,
                              const SeedPlan& plan);

/// Rate-1 TASEP with one Poisson clock per site (uniformized); the right edge is a wall.
void run_site_clocks(Occupancy& state, double horizon, PhiloxStream& clocks);

struct SecondClassTrack {
  std::vector<double> times{0.0};
  std::vector<std::int64_t> X{0};
  std::size_t events = 0;

  std::int64_t at(double t) const;
};

/// Two TASEPs with shared site clocks, differing only at 0 (particle in one, hole in the other).
/// Throws ConsistencyError if the discrepancy count ever differs from one.
SecondClassTrack second_class_trajectory(double rho_minus, double rho_plus, double horizon, const SeedPlan& plan,
                                         std::int64_t padding = -1);

/// Final occupancy of the coupled system's first copy, for density profiles.
Occupancy shock_state(double rho_minus, double rho_plus, double horizon, const SeedPlan& plan,
                      std::int64_t padding = -1);

struct DensityProfile {
  std::vector<double> edges;    // bins in xi = x / t
  std::vector<double> density;  // occupation frequency per bin
};

DensityProfile empirical_density_profile(const std::vector<Occupancy>& states, double t, std::vector<double> edges);

}  // namespace lppshock
