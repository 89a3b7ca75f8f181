#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "lppshock/rng.hpp"

namespace lppshock {

struct Site {
  std::int64_t i = 0;
  std::int64_t j = 0;

  friend bool operator==(const Site&, const Site&) = default;
  friend auto operator<=>(const Site&, const Site&) = default;
};

/// Closed lattice rectangle [i0, i1] x [j0, j1].
struct Rect {
  std::int64_t i0 = 0, i1 = -1;
  std::int64_t j0 = 0, j1 = -1;

  bool empty() const { return i1 < i0 || j1 < j0; }
  bool contains(Site s) const { return s.i >= i0 && s.i <= i1 && s.j >= j0 && s.j <= j1; }
  bool contains(const Rect& r) const { return r.empty() || (contains(Site{r.i0, r.j0}) && contains(Site{r.i1, r.j1})); }
  std::int64_t width() const { return i1 - i0 + 1; }
  std::int64_t height() const { return j1 - j0 + 1; }
  std::size_t size() const { return empty() ? 0 : static_cast<std::size_t>(width() * height()); }
  friend bool operator==(const Rect&, const Rect&) = default;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exponential rate at a site; zero_weight marks sites that carry weight exactly 0.
struct SiteRate {
  double rate = 1.0;
  bool zero_weight = false;
};

struct TwoSpeed {
  double alpha;
};
struct BernoulliBoundary {
  double rho_minus;
  double rho_plus;
};
struct Homogeneous {
  double rate;
};
struct PointToPointBeta {
  double beta;
};

/// Rate convention: exp(v) is the exponential law with rate v (mean 1/v).
class RateField {
 public:
  using Kind = std::variant<TwoSpeed, BernoulliBoundary, Homogeneous, PointToPointBeta>;

  static RateField two_speed(double alpha);
  static RateField bernoulli_boundary(double rho_minus, double rho_plus);
  static RateField homogeneous(double rate);
  static RateField point_to_point_beta(double beta);

  const Kind& kind() const { return kind_; }

  SiteRate rate_at(Site s) const;
  /// Common rate of all sites of lattice row j; false when rates vary along the row.
  bool row_rate(std::int64_t j, double& rate) const;
  /// Turns unit exponentials w[i - i_lo], i in [i_lo, i_hi], on anti-diagonal d into weights.
  void apply_diagonal(std::int64_t d, std::int64_t i_lo, std::int64_t i_hi, double* w) const;

 private:
  explicit RateField(Kind k) : kind_(k) {}
  Kind kind_;
};

SiteRate rate_at(const RateField& field, Site s);

/// Weights of one replica over a window, row-major (j outer, i inner).
class WeightSample {
 public:
  WeightSample(RateField field, Rect window, SeedPlan plan, std::vector<double> values);

  const Rect& window() const { return window_; }
  const SeedPlan& plan() const { return plan_; }
  const RateField& field() const { return field_; }
  double at(Site s) const;
  double& at_mut(Site s);
  bool covers(const Rect& r) const { return window_.contains(r); }
  const std::vector<double>& values() const { return values_; }

  /// Hand-specified weights for tests and examples; window is the bounding rectangle.
  static WeightSample from_values(Rect window, std::vector<double> row_major, RateField field = RateField::homogeneous(1));

 private:
  std::size_t index(Site s) const;
  RateField field_;
  Rect window_;
  SeedPlan plan_;
  std::vector<double> values_;
};

/// Deterministic in (field, window, plan); value at a site equals weight_at(field, plan, site).
WeightSample sample_weights(const RateField& field, const Rect& window, const SeedPlan& plan);

/// The weight a replica attaches to one site, independent of window and traversal order.
double weight_at(const RateField& field, const SeedPlan& plan, Site s);

/// Weights of sites (i, d - i), i in [i_lo, i_hi], through the active SIMD kernel.
/// buf must hold i_hi - i_lo + 3 doubles; returns pointer to the value for i_lo.
const double* diagonal_weights(const RateField& field, const SeedPlan& plan, std::int64_t d, std::int64_t i_lo,
                               std::int64_t i_hi, double* buf);

}  // namespace lppshock
