#include "lppshock/lpp.hpp"

#include <algorithm>
#include <string>

namespace lppshock {

ParticlePositions two_speed_positions(std::int64_t K) {
  ParticlePositions pos;
  for (std::int64_t k = -K; k <= K; ++k) pos[k] = k == 0 ? 1 : -2 * k;
  return pos;
}

StartSet::StartSet(std::vector<Site> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool StartSet::contains(Site s) const { return std::binary_search(points_.begin(), points_.end(), s); }

StartSet staircase_from_config(const ParticlePositions& positions, Half half, std::int64_t K) {
  std::vector<Site> pts;
  const std::int64_t* prev = nullptr;
  for (const auto& [k, x] : positions) {
    // labels increase right to left: x_{k+1} < x_k
    if (prev != nullptr && !(x < *prev)) throw InvalidConfiguration("positions must strictly decrease in the label");
    prev = &x;
    if (k < -K || k > K) continue;
    if (half == Half::plus && k <= 0) continue;
    if (half == Half::minus && k > 0) continue;
    pts.push_back({k + x, k});
  }
  return StartSet(std::move(pts));
}

StartSet set_union(const StartSet& a, const StartSet& b) {
  std::vector<Site> pts = a.points();
  pts.insert(pts.end(), b.points().begin(), b.points().end());
  return StartSet(std::move(pts));
}

PassageGrid::PassageGrid(Rect window, StartSet start, std::vector<double> raw)
    : window_(window), start_(std::move(start)), t_(std::move(raw)) {}

double PassageGrid::raw(Site s) const {
  if (!window_.contains(s)) throw CoverageError("site outside passage grid");
  return t_[static_cast<std::size_t>((s.j - window_.j0) * window_.width() + (s.i - window_.i0))];
}

PassageTime PassageGrid::time(Site s) const {
  const double v = raw(s);
  if (v == kUnreachable) return std::nullopt;
  return v;
}

namespace {

std::vector<double> dp(const WeightSample& weights, const StartSet& start, const Rect& window,
                       const SitePredicate* forbidden, StartWeight sw = StartWeight::excluded) {
  if (!weights.covers(window)) throw CoverageError("weights do not cover the passage window");
  const auto w = window.width();
  std::vector<double> t(window.size(), kUnreachable);
  for (std::int64_t j = window.j0; j <= window.j1; ++j) {
    for (std::int64_t i = window.i0; i <= window.i1; ++i) {
      const auto idx = static_cast<std::size_t>((j - window.j0) * w + (i - window.i0));
      const Site s{i, j};
      if (forbidden != nullptr && (*forbidden)(s)) continue;
      const double left = i > window.i0 ? t[idx - 1] : kUnreachable;
      const double down = j > window.j0 ? t[idx - static_cast<std::size_t>(w)] : kUnreachable;
      const double pred = std::max(left, down);
      if (start.contains(s))
        t[idx] = sw == StartWeight::included ? std::max(0.0, pred) + weights.at(s) : std::max(0.0, pred);
      else
        t[idx] = pred + weights.at(s);
    }
  }
  return t;
}

}  // namespace

PassageGrid passage_times(const WeightSample& weights, const StartSet& start, const Rect& window, StartWeight sw) {
  return PassageGrid(window, start, dp(weights, start, window, nullptr, sw));
}

PassageTime point_passage(const WeightSample& weights, Site a, Site b) {
  if (b.i < a.i || b.j < a.j) return std::nullopt;
  const Rect win{a.i, b.i, a.j, b.j};
  return PassageGrid(win, StartSet({a}), dp(weights, StartSet({a}), win, nullptr)).time(b);
}

LatticePath max_path(const PassageGrid& grid, Site endpoint) {
  if (!grid.time(endpoint)) throw NoPathError("endpoint is unreachable");
  const Rect& win = grid.window();
  std::vector<Site> rev{endpoint};
  Site p = endpoint;
  while (true) {
    const double left = p.i > win.i0 ? grid.raw({p.i - 1, p.j}) : kUnreachable;
    const double down = p.j > win.j0 ? grid.raw({p.i, p.j - 1}) : kUnreachable;
    const double pred = std::max(left, down);
    if (grid.start().contains(p) && !(pred > 0.0)) break;
    p = left >= down ? Site{p.i - 1, p.j} : Site{p.i, p.j - 1};
    rev.push_back(p);
  }
  std::reverse(rev.begin(), rev.end());
  return LatticePath{std::move(rev)};
}

double path_weight(const WeightSample& weights, const LatticePath& path, const StartSet& start, StartWeight sw) {
  double acc = 0.0;
  for (const Site& s : path.points)
    if (sw == StartWeight::included || !start.contains(s)) acc = acc + weights.at(s);
  return acc;
}

PassageTime restricted_passage(const WeightSample& weights, const StartSet& start, Site end,
                               const SitePredicate& forbidden) {
  const Rect& ww = weights.window();
  if (!ww.contains(end)) throw CoverageError("endpoint outside weight window");
  const Rect win{ww.i0, end.i, ww.j0, end.j};
  const auto t = dp(weights, start, win, &forbidden);
  const double v = t.back();
  if (v == kUnreachable) return std::nullopt;
  return v;
}

bool path_hits(const LatticePath& path, const std::vector<Site>& targets) {
  for (const Site& t : targets)
    if (std::find(path.points.begin(), path.points.end(), t) != path.points.end()) return true;
  return false;
}

std::uint64_t path_count(Site a, Site b) {
  if (b.i < a.i || b.j < a.j) return 0;
  const auto dx = static_cast<std::uint64_t>(b.i - a.i);
  const auto dy = static_cast<std::uint64_t>(b.j - a.j);
  const std::uint64_t k = std::min(dx, dy);
  unsigned __int128 c = 1;
  for (std::uint64_t r = 1; r <= k; ++r) {
    c = c * (dx + dy - k + r) / r;
    if (c > static_cast<unsigned __int128>(1) << 62) return std::uint64_t{1} << 62;
  }
  return static_cast<std::uint64_t>(c);
}

namespace {

void enumerate(const WeightSample& w, const StartSet& start, StartWeight sw, Site p, Site b, double acc,
               double& best) {
  if (p == b) {
    best = std::max(best, acc);
    return;
  }
  if (p.i < b.i) {
    const Site q{p.i + 1, p.j};
    enumerate(w, start, sw, q, b, sw == StartWeight::excluded && start.contains(q) ? acc : acc + w.at(q), best);
  }
  if (p.j < b.j) {
    const Site q{p.i, p.j + 1};
    enumerate(w, start, sw, q, b, sw == StartWeight::excluded && start.contains(q) ? acc : acc + w.at(q), best);
  }
}

}  // namespace

PassageTime brute_force_passage(const WeightSample& weights, Site a, Site b) {
  return brute_force_passage(weights, StartSet({a}), b);
}

PassageTime brute_force_passage(const WeightSample& weights, const StartSet& start, Site b, StartWeight sw) {
  std::uint64_t total = 0;
  for (const Site& a : start.points())
    if (weights.window().contains(a)) total += path_count(a, b);
  if (total > kBruteForcePathLimit) throw std::length_error("brute force refused: more than 10^6 paths");
  double best = kUnreachable;
  for (const Site& a : start.points()) {
    if (!weights.window().contains(a) || b.i < a.i || b.j < a.j) continue;
    enumerate(weights, start, sw, a, b, sw == StartWeight::included ? 0.0 + weights.at(a) : 0.0, best);
  }
  if (best == kUnreachable) return std::nullopt;
  return best;
}

}  // namespace lppshock
