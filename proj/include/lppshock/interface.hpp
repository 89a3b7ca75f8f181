#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lppshock/lpp.hpp"
#include "lppshock/sweep.hpp"

namespace lppshock {

enum class Color { red, blue };

/// Equal passage times from both halves; probability zero with continuous weights.
class TieError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Red iff the passage time from the plus half is larger.
Color color(Site s, const PassageGrid& plus, const PassageGrid& minus);
Color color_of(double l_plus, double l_minus);

/// phi[n] = (I_n, J_n) with I_n + J_n = n; tau[n] = passage time from the full start set at phi[n]
/// (-infinity where phi[n] is unreachable). tau is empty when not recorded.
struct InterfaceTrace {
  std::vector<Site> phi;
  std::vector<double> tau;

  std::int64_t steps() const { return static_cast<std::int64_t>(phi.size()) - 1; }
  std::int64_t I(std::int64_t n) const { return phi.at(static_cast<std::size_t>(n)).i; }
  std::int64_t J(std::int64_t n) const { return phi.at(static_cast<std::size_t>(n)).j; }
};

/// Interface from precomputed grids; full supplies tau.
InterfaceTrace trace_interface(const PassageGrid& plus, const PassageGrid& minus, const PassageGrid& full,
                               std::int64_t n_max);

/// Computes the three grids on the weights window; full start set defaults to the union of the halves.
InterfaceTrace trace_interface(const WeightSample& weights, const StartSet& plus, const StartSet& minus,
                               std::int64_t n_max);
/// halves = included colors by the geodesic from a common root, e.g. plus {(0,1)}, minus {(1,0)}, full {(0,0)}.
InterfaceTrace trace_interface(const WeightSample& weights, const StartSet& plus, const StartSet& minus,
                               const StartSet& full, std::int64_t n_max, StartWeight halves = StartWeight::excluded);

/// Follows the interface on a running DiagonalSweep; call advance() after every step.
/// phi[n+1] is fixed once diagonal n+2 is swept, so tracing to n_max needs diagonal n_max+1.
class InterfaceFollower {
 public:
  /// record_tau takes tau as max of the two halves, exact when neither half's paths meet the other's start set.
  InterfaceFollower(std::size_t plus_field, std::size_t minus_field, std::int64_t n_max, bool record_tau);

  void advance(const DiagonalSweep& sweep);
  bool done() const { return trace_.steps() == n_max_; }
  std::int64_t last_diagonal() const { return n_max_ + 1; }
  const InterfaceTrace& trace() const { return trace_; }

 private:
  std::size_t plus_, minus_;
  std::int64_t n_max_;
  bool record_tau_;
  InterfaceTrace trace_;
};

/// Two-speed initial data: sweep fields covering every site that influences colors up to diagonal n_max+2.
/// K truncates the start staircase at |k| <= K (0 means n_max + 2, the smallest exact choice).
std::vector<SweepField> two_speed_fields(std::int64_t n_max, bool record_argmax = false, std::int64_t K = 0);
/// Bernoulli boundary: plus = {(0,1)}, minus = {(1,0)}, start weights included so the halves
/// compare geodesics from (0,0); with them excluded both halves equal the weight at (1,1).
std::vector<SweepField> bernoulli_fields(std::int64_t n_max, bool record_argmax = false);

/// (I_n - J_n - centering) / t^exponent at n = floor(t).
double interface_statistic(const InterfaceTrace& trace, double t, double centering, double exponent = 1.0 / 3.0);

/// (alpha - 1) t.
double two_speed_centering(double alpha, double t);
/// -t (1 - eta0)/(1 + eta0) + 2u t^{1/3} / (1 + eta0)^{4/3}.
double generic_centering(double eta0, double u, double t);
/// -t (1 - eta)/(1 + eta) + 2u t^{1/2} / (1 + eta)^{3/2}.
double bernoulli_centering(double eta, double u, double t);

/// The three events around (M, n-M): blue there, I_n <= M, blue at (M+1, n-M-1).
struct TranslationEvents {
  bool blue_at_m = false;
  bool interface_left = false;
  bool blue_at_m_plus = false;
  bool sandwich_holds() const { return (!blue_at_m || interface_left) && (!interface_left || blue_at_m_plus); }
};

TranslationEvents event_translation_check(const InterfaceTrace& trace, const PassageGrid& plus,
                                          const PassageGrid& minus, std::int64_t M, std::int64_t n);

/// (k, n-k) is red for 0 <= k < I_n and blue for I_n < k <= n.
bool color_cut_holds(const InterfaceTrace& trace, const PassageGrid& plus, const PassageGrid& minus, std::int64_t n);

}  // namespace lppshock
