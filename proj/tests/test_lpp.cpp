#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "lppshock/lpp.hpp"
#include "lppshock/sweep.hpp"

using namespace lppshock;

namespace {

// weights (1,1)=1, (2,1)=2, (1,2)=3, (2,2)=4
WeightSample two_by_two() { return WeightSample::from_values({1, 2, 1, 2}, {1, 2, 3, 4}); }

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

StartSet random_starts(PhiloxStream& g, const Rect& r, int count) {
  std::vector<Site> pts;
  for (int k = 0; k < count; ++k)
    pts.push_back({r.i0 + static_cast<std::int64_t>(g.below(static_cast<std::uint64_t>(r.width()))),
                   r.j0 + static_cast<std::int64_t>(g.below(static_cast<std::uint64_t>(r.height())))});
  return StartSet(pts);
}

}  // namespace

TEST_CASE("staircase from the two-speed configuration") {
  const auto pos = two_speed_positions(3);
  const auto full = staircase_from_config(pos, Half::full, 3);
  CHECK(full.contains({1, 0}));
  CHECK(full.contains({-1, 1}));
  CHECK(full.contains({1, -1}));
  const auto plus = staircase_from_config(pos, Half::plus, 3);
  const auto minus = staircase_from_config(pos, Half::minus, 3);
  for (const Site& s : plus.points()) CHECK(s.j > 0);
  for (const Site& s : minus.points()) CHECK(s.j <= 0);
  CHECK(plus.size() + minus.size() == full.size());
  CHECK(set_union(plus, minus).points() == full.points());
  CHECK(staircase_from_config(pos, Half::plus, 0).empty());
  ParticlePositions bad{{0, 0}, {1, 2}};
  CHECK_THROWS_AS(staircase_from_config(bad, Half::full, 5), InvalidConfiguration);
}

TEST_CASE("hand examples") {
  const auto w = two_by_two();
  const auto g = passage_times(w, StartSet({{1, 1}}), w.window());
  CHECK(*g.time({1, 1}) == 0.0);
  CHECK(*g.time({2, 2}) == 7.0);
  const auto p = max_path(g, {2, 2});
  CHECK(p.points == std::vector<Site>{{1, 1}, {1, 2}, {2, 2}});
  CHECK(p.length() == 2);
  CHECK(path_weight(w, p, g.start()) == 7.0);
  CHECK_FALSE(path_hits(p, {{2, 1}}));
  CHECK(path_hits(p, {{2, 2}}));
  CHECK_FALSE(path_hits(p, {}));
  CHECK(*restricted_passage(w, StartSet({{1, 1}}), {2, 2}, [](Site s) { return s == Site{1, 2}; }) == 6.0);
  CHECK(*restricted_passage(w, StartSet({{1, 1}}), {2, 2}, [](Site) { return false; }) == 7.0);
  CHECK_FALSE(restricted_passage(w, StartSet({{1, 1}}), {2, 2}, [](Site s) { return s.i + s.j == 3; }).has_value());
  CHECK(*brute_force_passage(w, {1, 1}, {2, 2}) == 7.0);
  CHECK(*brute_force_passage(w, {1, 1}, {1, 1}) == 0.0);
  CHECK(*point_passage(w, {1, 1}, {1, 1}) == 0.0);
  CHECK(*point_passage(w, {1, 1}, {2, 1}) == 2.0);
  CHECK_FALSE(point_passage(w, {2, 2}, {1, 1}).has_value());
  CHECK_THROWS_AS(max_path(passage_times(w, StartSet({{2, 2}}), w.window()), {1, 1}), NoPathError);
  CHECK_THROWS_AS(passage_times(w, StartSet({{1, 1}}), {0, 2, 1, 2}), CoverageError);
}

TEST_CASE("strip has a unique path") {
  const auto w = WeightSample::from_values({0, 5, 0, 0}, {9, 1, 2, 3, 4, 5});
  const auto g = passage_times(w, StartSet({{0, 0}}), w.window());
  CHECK(*g.time({5, 0}) == 15.0);
  CHECK(max_path(g, {5, 0}).points.size() == 6);
}

TEST_CASE("tie rule prefers the horizontal predecessor") {
  const auto w = WeightSample::from_values({0, 1, 0, 1}, {0, 1, 1, 1});
  const auto g = passage_times(w, StartSet({{0, 0}}), w.window());
  CHECK(max_path(g, {1, 1}).points == std::vector<Site>{{0, 0}, {0, 1}, {1, 1}});
}

TEST_CASE("dp equals brute force bitwise on random small instances") {
  PhiloxStream g({8, 0}, StreamTag::instance);
  for (std::uint32_t rep = 0; rep < 100; ++rep) {
    const std::int64_t wdt = 1 + static_cast<std::int64_t>(g.below(6)), hgt = 1 + static_cast<std::int64_t>(g.below(6));
    const Rect win{-2, -2 + wdt - 1, 3, 3 + hgt - 1};
    const auto w = sample_weights(RateField::homogeneous(1.0), win, {8, rep + 1});
    const auto start = rep % 2 == 0 ? StartSet({{win.i0, win.j0}}) : random_starts(g, win, 1 + static_cast<int>(g.below(4)));
    const auto grid = passage_times(w, start, win);
    const auto incl = passage_times(w, start, win, StartWeight::included);
    for (std::int64_t j = win.j0; j <= win.j1; ++j)
      for (std::int64_t i = win.i0; i <= win.i1; ++i) {
        const auto bf = brute_force_passage(w, start, {i, j});
        const auto dp = grid.time({i, j});
        REQUIRE(bf.has_value() == dp.has_value());
        if (!dp) continue;
        REQUIRE(same_bits(*bf, *dp));
        REQUIRE(same_bits(*brute_force_passage(w, start, {i, j}, StartWeight::included),
                          *incl.time({i, j})));
        REQUIRE(same_bits(path_weight(w, max_path(incl, {i, j}), start, StartWeight::included), *incl.time({i, j})));
        const auto path = max_path(grid, {i, j});
        REQUIRE(same_bits(path_weight(w, path, start), *dp));
        const double l = i > win.i0 ? grid.raw({i - 1, j}) : kUnreachable;
        const double d = j > win.j0 ? grid.raw({i, j - 1}) : kUnreachable;
        REQUIRE(*dp >= l);
        REQUIRE(*dp >= d);
      }
  }
}

TEST_CASE("point passage equals enumeration on 5x5") {
  const auto w = sample_weights(RateField::homogeneous(1.0), {0, 4, 0, 4}, {3, 3});
  CHECK(path_count({0, 0}, {4, 4}) == 70);
  CHECK(same_bits(*point_passage(w, {0, 0}, {4, 4}), *brute_force_passage(w, {0, 0}, {4, 4})));
}

TEST_CASE("brute force refuses large windows and is monotone in weights") {
  auto w = sample_weights(RateField::homogeneous(1.0), {0, 20, 0, 20}, {4, 4});
  CHECK_THROWS_AS(brute_force_passage(w, {0, 0}, {20, 20}), std::length_error);
  const double before = *brute_force_passage(w, {0, 0}, {5, 5});
  w.at_mut({3, 2}) += 1.0;
  CHECK(*brute_force_passage(w, {0, 0}, {5, 5}) >= before);
}

TEST_CASE("superadditivity with the junction convention") {
  for (std::uint32_t rep = 0; rep < 200; ++rep) {
    const auto w = sample_weights(RateField::homogeneous(1.0), {0, 12, 0, 12}, {5, rep});
    const Site a{0, 0}, b{4 + rep % 5, 7 - rep % 4}, c{12, 12};
    const double ac = *point_passage(w, a, c);
    // equality when the A->C geodesic visits B; the two sides then differ only by summation order
    CHECK(*point_passage(w, a, b) + *point_passage(w, b, c) <= ac * (1 + 1e-14));
  }
}

TEST_CASE("restricted passage is bounded by the free passage") {
  for (std::uint32_t rep = 0; rep < 50; ++rep) {
    const auto w = sample_weights(RateField::homogeneous(1.0), {0, 9, 0, 9}, {6, rep});
    const StartSet s({{0, 0}});
    const auto g = passage_times(w, s, w.window());
    const Site block{3 + rep % 4, 5 - rep % 3};
    const auto r = restricted_passage(w, s, {9, 9}, [&](Site x) { return x == block; });
    CHECK(*r <= *g.time({9, 9}));
    CHECK((*r == *g.time({9, 9})) == !path_hits(max_path(g, {9, 9}), {block}));
  }
}

TEST_CASE("diagonal sweep equals passage_times bitwise") {
  PhiloxStream g({9, 0}, StreamTag::instance);
  const std::vector<RateField> fields{RateField::two_speed(0.5), RateField::homogeneous(1.0),
                                      RateField::bernoulli_boundary(0.25, 0.75)};
  for (int rep = 0; rep < 30; ++rep) {
    const RateField& f = fields[static_cast<std::size_t>(rep) % fields.size()];
    const bool quadrant = std::holds_alternative<BernoulliBoundary>(f.kind());
    std::vector<SweepField> specs;
    for (int k = 0; k < 3; ++k) {
      const std::int64_t i0 = quadrant ? static_cast<std::int64_t>(g.below(4)) : -20 + static_cast<std::int64_t>(g.below(30));
      const std::int64_t j0 = quadrant ? static_cast<std::int64_t>(g.below(4)) : -20 + static_cast<std::int64_t>(g.below(30));
      const Rect r{i0, i0 + 1 + static_cast<std::int64_t>(g.below(40)), j0, j0 + static_cast<std::int64_t>(g.below(40))};
      specs.push_back({r, random_starts(g, r, 1 + static_cast<int>(g.below(6))), k != 1,
                       k == 2 ? StartWeight::included : StartWeight::excluded});
    }
    const SeedPlan plan{321, static_cast<std::uint32_t>(rep)};
    std::vector<PassageGrid> ref;
    for (const auto& s : specs)
      ref.push_back(passage_times(sample_weights(f, s.rect, plan), s.start, s.rect, s.start_weight));
    DiagonalSweep sweep(f, plan, specs);
    sweep.run(sweep.d_end(), [&](const DiagonalSweep& sw) {
      const std::int64_t d = sw.current();
      for (std::size_t k = 0; k < specs.size(); ++k) {
        const Rect& r = specs[k].rect;
        for (std::int64_t i = r.i0 - 1; i <= r.i1 + 1; ++i) {
          const Site s{i, d - i};
          const double v = sw.value(k, s);
          if (!r.contains(s)) {
            REQUIRE(v == kUnreachable);
            continue;
          }
          REQUIRE(same_bits(v, ref[k].raw(s)));
          if (specs[k].record_argmax && v != kUnreachable)
            REQUIRE(sw.backtrack(k, s).points == max_path(ref[k], s).points);
        }
      }
    });
    CHECK(sweep.current() == sweep.d_end());
    CHECK_FALSE(sweep.step());
  }
}
