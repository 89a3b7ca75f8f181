#pragma once

#include <cstdint>
#include <vector>

#include "lppshock/lpp.hpp"
#include "lppshock/weights.hpp"

namespace lppshock {

/// One last-passage field of a sweep: its lattice rectangle and start sites.
struct SweepField {
  Rect rect;
  StartSet start;
  bool record_argmax = false;
  StartWeight start_weight = StartWeight::excluded;
};

/// Anti-diagonal LPP over several fields sharing one streamed weight realization.
/// Weights are generated per diagonal with the SIMD kernels and equal weight_at() bitwise;
/// every value equals passage_times() over the field rectangle with the same start set.
class DiagonalSweep {
 public:
  DiagonalSweep(const RateField& field, const SeedPlan& plan, std::vector<SweepField> fields);

  /// First swept diagonal: the lowest start-site diagonal (earlier ones are unreachable).
  std::int64_t d_begin() const { return d_begin_; }
  std::int64_t d_end() const { return d_end_; }
  /// Last diagonal computed so far (d_begin() - 1 before the first step).
  std::int64_t current() const { return d_; }

  /// Computes the next anti-diagonal; false once d_end() is done.
  bool step();

  /// Runs through diagonal d_last, calling visit(*this) after each diagonal.
  template <class Visit>
  void run(std::int64_t d_last, Visit&& visit) {
    while (d_ < d_last && step()) visit(*this);
  }

  /// Value at a site on the current or previous diagonal; -infinity outside the field.
  double value(std::size_t f, Site s) const;

  /// Maximizing path to an already swept site; requires record_argmax.
  LatticePath backtrack(std::size_t f, Site end) const;

  std::size_t field_count() const { return fields_.size(); }

 private:
  struct State {
    SweepField spec;
    std::vector<double> buf[2];
    std::int64_t lo[2], hi[2];  // content range per buffer
    std::vector<std::vector<std::int64_t>> starts_by_diag;
    std::vector<std::uint8_t> arg;  // 0 down, 1 left, 2 path start
    std::vector<std::size_t> arg_off;
    std::vector<std::int64_t> arg_lo;
  };

  std::size_t slot(std::int64_t d) const { return static_cast<std::size_t>(d & 1); }
  std::size_t idx(const State& s, std::int64_t i) const { return static_cast<std::size_t>(i - s.spec.rect.i0 + 1); }

  RateField rates_;
  SeedPlan plan_;
  std::vector<State> fields_;
  std::int64_t d_begin_ = 0, d_end_ = -1, d_ = -1;
  std::vector<double> wbuf_;
};

}  // namespace lppshock
