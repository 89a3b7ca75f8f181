#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lppshock/weights.hpp"

namespace lppshock {

inline constexpr double kUnreachable = -std::numeric_limits<double>::infinity();

/// Passage time, or nullopt for an unreachable site.
using PassageTime = std::optional<double>;

enum class Half { full, plus, minus };

/// Whether start-set sites contribute their own weight to path sums.
enum class StartWeight { excluded, included };

class InvalidConfiguration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CoverageError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class NoPathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Initial particle positions x_k(0), strictly decreasing in the label k.
using ParticlePositions = std::map<std::int64_t, std::int64_t>;

/// x_k(0) = -2k for k != 0 and x_0(0) = 1, for |k| <= K.
ParticlePositions two_speed_positions(std::int64_t K);

class StartSet {
 public:
  StartSet() = default;
  explicit StartSet(std::vector<Site> points);

  const std::vector<Site>& points() const { return points_; }
  bool contains(Site s) const;
  bool empty() const { return points_.empty(); }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<Site> points_;  // sorted
};

/// {(k + x_k(0), k)} restricted to the half (plus: k > 0, minus: k <= 0) and |k| <= K.
StartSet staircase_from_config(const ParticlePositions& positions, Half half, std::int64_t K);

StartSet set_union(const StartSet& a, const StartSet& b);

class PassageGrid {
 public:
  PassageGrid(Rect window, StartSet start, std::vector<double> raw);

  const Rect& window() const { return window_; }
  const StartSet& start() const { return start_; }
  PassageTime time(Site s) const;
  /// -infinity for unreachable sites.
  double raw(Site s) const;
  bool covers(Site s) const { return window_.contains(s); }

 private:
  Rect window_;
  StartSet start_;
  std::vector<double> t_;
};

/// Max over up-right paths in the window from the start set; by default start sites contribute no weight.
PassageGrid passage_times(const WeightSample& weights, const StartSet& start, const Rect& window,
                          StartWeight sw = StartWeight::excluded);

/// Passage time from {A} to B; nullopt when B is not weakly up-right of A.
PassageTime point_passage(const WeightSample& weights, Site a, Site b);

struct LatticePath {
  std::vector<Site> points;
  std::size_t length() const { return points.empty() ? 0 : points.size() - 1; }
};

/// Backtracks a maximizing path; exact ties prefer the horizontal predecessor.
LatticePath max_path(const PassageGrid& grid, Site endpoint);

/// Sum of weights along the path in path order, start-set sites per the convention.
double path_weight(const WeightSample& weights, const LatticePath& path, const StartSet& start,
                   StartWeight sw = StartWeight::excluded);

using SitePredicate = std::function<bool(Site)>;

/// Max over paths from start to end avoiding forbidden sites; window is the weights window cut at end.
PassageTime restricted_passage(const WeightSample& weights, const StartSet& start, Site end,
                               const SitePredicate& forbidden);

bool path_hits(const LatticePath& path, const std::vector<Site>& targets);

inline constexpr std::uint64_t kBruteForcePathLimit = 1'000'000;

/// Exhaustive enumeration of up-right paths from A to B; refuses more than 10^6 paths.
PassageTime brute_force_passage(const WeightSample& weights, Site a, Site b);

/// Exhaustive enumeration from every start point, start-set sites per the convention.
PassageTime brute_force_passage(const WeightSample& weights, const StartSet& start, Site b,
                                StartWeight sw = StartWeight::excluded);

std::uint64_t path_count(Site a, Site b);

}  // namespace lppshock
