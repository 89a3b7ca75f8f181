#include "lppshock/weights.hpp"

#include <algorithm>
#include <string>

#include "lppshock/simd/kernels.hpp"

namespace lppshock {

namespace {

template <class... F>
struct Overload : F... {
  using F::operator()...;
};
template <class... F>
Overload(F...) -> Overload<F...>;

std::string site_str(Site s) { return "(" + std::to_string(s.i) + "," + std::to_string(s.j) + ")"; }

}  // namespace

RateField RateField::two_speed(double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("two_speed requires 0 < alpha < 1");
  return RateField(TwoSpeed{alpha});
}

RateField RateField::bernoulli_boundary(double rho_minus, double rho_plus) {
  if (!(rho_minus > 0 && rho_minus < rho_plus && rho_plus < 1))
    throw std::invalid_argument("bernoulli_boundary requires 0 < rho_minus < rho_plus < 1");
  return RateField(BernoulliBoundary{rho_minus, rho_plus});
}

RateField RateField::homogeneous(double rate) {
  if (!(rate > 0)) throw std::invalid_argument("homogeneous rate must be positive");
  return RateField(Homogeneous{rate});
}

RateField RateField::point_to_point_beta(double beta) {
  if (!(beta > 0)) throw std::invalid_argument("point_to_point_beta requires beta > 0");
  return RateField(PointToPointBeta{beta});
}

SiteRate RateField::rate_at(Site s) const {
  return std::visit(Overload{
                        [&](const TwoSpeed& f) { return SiteRate{s.j <= 0 ? f.alpha : 1.0, false}; },
                        [&](const BernoulliBoundary& f) {
                          if (s.i < 0 || s.j < 0) throw DomainError("bernoulli_boundary has no site " + site_str(s));
                          if (s.i == 0 && s.j == 0) return SiteRate{1.0, true};
                          if (s.i == 0) return SiteRate{f.rho_minus, false};
                          if (s.j == 0) return SiteRate{1.0 - f.rho_plus, false};
                          return SiteRate{1.0, false};
                        },
                        [&](const Homogeneous& f) { return SiteRate{f.rate, false}; },
                        [&](const PointToPointBeta&) { return SiteRate{1.0, false}; },
                    },
                    kind_);
}

bool RateField::row_rate(std::int64_t j, double& rate) const {
  return std::visit(Overload{
                        [&](const TwoSpeed& f) {
                          rate = j <= 0 ? f.alpha : 1.0;
                          return true;
                        },
                        [&](const BernoulliBoundary&) { return false; },
                        [&](const Homogeneous& f) {
                          rate = f.rate;
                          return true;
                        },
                        [&](const PointToPointBeta&) {
                          rate = 1.0;
                          return true;
                        },
                    },
                    kind_);
}

void RateField::apply_diagonal(std::int64_t d, std::int64_t i_lo, std::int64_t i_hi, double* w) const {
  std::visit(Overload{
                 [&](const TwoSpeed& f) {
                   // j = d - i <= 0 exactly when i >= d
                   for (std::int64_t i = std::max(i_lo, d); i <= i_hi; ++i) w[i - i_lo] = w[i - i_lo] / f.alpha;
                 },
                 [&](const BernoulliBoundary& f) {
                   if (i_lo < 0 || d - i_hi < 0)
                     throw DomainError("bernoulli_boundary diagonal leaves the quadrant at d=" + std::to_string(d));
                   if (i_lo == 0) w[0] = d == 0 ? 0.0 : w[0] / f.rho_minus;
                   if (i_hi == d && d > 0) w[d - i_lo] = w[d - i_lo] / (1.0 - f.rho_plus);
                 },
                 [&](const Homogeneous& f) {
                   if (f.rate != 1.0)
                     for (std::int64_t i = i_lo; i <= i_hi; ++i) w[i - i_lo] = w[i - i_lo] / f.rate;
                 },
                 [&](const PointToPointBeta&) {},
             },
             kind_);
}

SiteRate rate_at(const RateField& field, Site s) { return field.rate_at(s); }

double weight_at(const RateField& field, const SeedPlan& plan, Site s) {
  const SiteRate r = field.rate_at(s);
  if (r.zero_weight) return 0.0;
  return unit_exponential(plan, StreamTag::lpp_weights, s.i, s.j) / r.rate;
}

const double* diagonal_weights(const RateField& field, const SeedPlan& plan, std::int64_t d, std::int64_t i_lo,
                               std::int64_t i_hi, double* buf) {
  const std::int64_t a0 = i_lo >> 1;
  const std::int64_t a1 = i_hi >> 1;
  simd::active_kernels().exp_fill({plan.master_seed, plan.replica_index, static_cast<std::uint32_t>(StreamTag::lpp_weights), d, a0},
                                  static_cast<std::size_t>(a1 - a0 + 1), buf);
  double* w = buf + (i_lo - 2 * a0);
  field.apply_diagonal(d, i_lo, i_hi, w);
  return w;
}

WeightSample::WeightSample(RateField field, Rect window, SeedPlan plan, std::vector<double> values)
    : field_(field), window_(window), plan_(plan), values_(std::move(values)) {
  if (values_.size() != window_.size()) throw std::invalid_argument("weight count does not match window");
}

std::size_t WeightSample::index(Site s) const {
  if (!window_.contains(s)) throw DomainError("site " + site_str(s) + " outside weight window");
  return static_cast<std::size_t>((s.j - window_.j0) * window_.width() + (s.i - window_.i0));
}

double WeightSample::at(Site s) const { return values_[index(s)]; }
double& WeightSample::at_mut(Site s) { return values_[index(s)]; }

WeightSample WeightSample::from_values(Rect window, std::vector<double> row_major, RateField field) {
  return WeightSample(field, window, SeedPlan{}, std::move(row_major));
}

WeightSample sample_weights(const RateField& field, const Rect& window, const SeedPlan& plan) {
  if (window.empty()) throw std::invalid_argument("sample_weights: empty window");
  std::vector<double> values(window.size());
  std::vector<double> buf(static_cast<std::size_t>(window.width() + 3));
  const auto width = window.width();
  for (std::int64_t d = window.i0 + window.j0; d <= window.i1 + window.j1; ++d) {
    const std::int64_t lo = std::max(window.i0, d - window.j1);
    const std::int64_t hi = std::min(window.i1, d - window.j0);
    const double* w = diagonal_weights(field, plan, d, lo, hi, buf.data());
    for (std::int64_t i = lo; i <= hi; ++i)
      values[static_cast<std::size_t>((d - i - window.j0) * width + (i - window.i0))] = w[i - lo];
  }
  return WeightSample(field, window, plan, std::move(values));
}

}  // namespace lppshock
