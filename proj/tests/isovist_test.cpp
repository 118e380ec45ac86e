#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"

namespace isofield {
namespace {

using testing::rect_scene;
using testing::square_scene;
using testing::t_scene;

const double kRoot2 = std::sqrt(2.0);

// Longest chords, from the dense 0.01 degree chord oracle and by hand:
// through (15, 25) the bar diagonal (0,20)-(30,30); through (15, 10) the
// corner-grazing line (10,0)-(25,30).
const double kChordT1525 = std::sqrt(1000.0);  // 31.6228
const double kChordT1510 = std::sqrt(1125.0);  // 33.5410

TEST(RadialProfile, SquareCentre) {
  const RadialProfile four = radial_profile(square_scene(), {5, 5}, 4);
  ASSERT_EQ(four.radii.size(), 4u);
  for (double r : four.radii) EXPECT_DOUBLE_EQ(r, 5.0);

  const RadialProfile eight = radial_profile(square_scene(), {5, 5}, 8);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(eight.radii[i], i % 2 ? 5.0 * kRoot2 : 5.0, 1e-12);
}

TEST(RadialProfile, TStem) {
  const RadialProfile p = radial_profile(t_scene(), {15, 10}, 4);
  EXPECT_NEAR(p.radii[0], 5.0, 1e-12);
  EXPECT_NEAR(p.radii[1], 20.0, 1e-12);
  EXPECT_NEAR(p.radii[2], 5.0, 1e-12);
  EXPECT_NEAR(p.radii[3], 10.0, 1e-12);
}

TEST(RadialProfile, Errors) {
  EXPECT_THROW(radial_profile(t_scene(), {5, 10}, 8), Error);
  EXPECT_THROW(radial_profile(square_scene(), {5, 5}, 7), Error);
  EXPECT_THROW(radial_profile(square_scene(), {5, 5}, 2), Error);
}

TEST(IsovistPolygon, Diamond) {
  const IsovistPolygon poly = isovist_polygon(radial_profile(square_scene(), {5, 5}, 4));
  ASSERT_EQ(poly.vertices.size(), 4u);
  const std::vector<Point> want{{10, 5}, {5, 10}, {0, 5}, {5, 0}};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(poly.vertices[i].x, want[i].x, 1e-12);
    EXPECT_NEAR(poly.vertices[i].y, want[i].y, 1e-12);
  }
  EXPECT_NEAR(poly.area(), 50.0, 1e-9);
}

TEST(IsovistPolygon, VertexCountAndConvergence) {
  const IsovistPolygon poly = isovist_polygon(radial_profile(square_scene(), {5, 5}, 7200));
  EXPECT_EQ(poly.vertices.size(), 7200u);
  EXPECT_NEAR(poly.area(), 100.0, 0.5);
  EXPECT_LE(poly.area(), 100.0 + 1e-9);
}

TEST(ExactIsovist, ConvexRoom) {
  EXPECT_NEAR(exact_isovist(square_scene(), {5, 5}).area(), 100.0, 1e-9);
  EXPECT_NEAR(exact_isovist(square_scene(), {1.3, 8.9}).area(), 100.0, 1e-9);
}

TEST(ExactIsovist, TFromBarCentreSeesEverything) {
  EXPECT_NEAR(exact_isovist(t_scene(), {15, 25}).area(), 500.0, 1e-9);
}

TEST(ExactIsovist, TFromStemIsOccluded) {
  const Point p{15, 5};
  const double exact = exact_isovist(t_scene(), p).area();
  EXPECT_LT(exact, 500.0 - 1.0);
  // From (15, 5) the sightlines through the mouth (10..20 at y = 20) fan out
  // to x = 15 -/+ 5 * 25/15 at y = 30: stem 200 plus the fan trapezoid.
  const double fan = 0.5 * ((20.0 - 10.0) + (2 * 5.0 * 25.0 / 15.0)) * 10.0;
  EXPECT_NEAR(exact, 200.0 + fan, 1e-9);
  const double mc = testing::oracle::monte_carlo_visible_area(t_scene(), p, 400000, 11);
  EXPECT_NEAR(exact, mc, 0.02 * exact);
}

TEST(ExactIsovist, ObstacleShadowMatchesMonteCarlo) {
  const Scene s = make_scene({{0, 0}, {20, 0}, {20, 20}, {0, 20}}, {{{8, 8}, {12, 8}, {12, 12}, {8, 12}}});
  const Point p{3, 4};
  const double exact = exact_isovist(s, p).area();
  const double mc = testing::oracle::monte_carlo_visible_area(s, p, 400000, 5);
  EXPECT_LT(exact, 384.0);
  EXPECT_NEAR(exact, mc, 0.02 * exact);
}

TEST(Measures, SquareCentre) {
  const MeasureRecord m = measures(radial_profile(square_scene(), {5, 5}, 7200));
  EXPECT_NEAR(m.mrl, 5.0, 1e-3);
  EXPECT_NEAR(m.mdl, 10.0 * kRoot2, 0.01);
  EXPECT_NEAR(m.area, 100.0, 0.5);
  EXPECT_NEAR(m.convexity, 1.0, 1e-3);
  EXPECT_NEAR(m.drift, 0.0, 1e-3);
  EXPECT_NEAR(m.perimeter, 40.0, 0.01);
  EXPECT_NEAR(m.compactness, std::numbers::pi / 4, 1e-3);
  EXPECT_LE(m.mrl, m.mean_radial);
}

TEST(Measures, TBarCentre) {
  const Point p{15, 25};
  const MeasureRecord m = measures(radial_profile(t_scene(), p, 7200));
  EXPECT_NEAR(m.mrl, distance_to_boundary(t_scene(), p), 1e-3);
  EXPECT_NEAR(m.mrl, 5.0, 1e-3);
  EXPECT_NEAR(testing::oracle::dense_chord(t_scene(), p.x, p.y), kChordT1525, 0.01);
  EXPECT_NEAR(m.mdl, kChordT1525, 0.05);
}

TEST(Measures, TCornerGrazingChord) {
  const Point p{15, 10};
  const MeasureRecord m = measures(radial_profile(t_scene(), p, 7200));
  EXPECT_NEAR(testing::oracle::dense_chord(t_scene(), p.x, p.y), kChordT1510, 0.01);
  EXPECT_NEAR(m.mdl, kChordT1510, 0.05);
  EXPECT_NEAR(distance(m.mdl_chord.a, m.mdl_chord.b), m.mdl, 1e-9);
  // The chord runs from the (10,0) corner to the top wall near (25,30),
  // passing the reflex corner (20,20).
  const Point lo = m.mdl_chord.a.y < m.mdl_chord.b.y ? m.mdl_chord.a : m.mdl_chord.b;
  const Point hi = m.mdl_chord.a.y < m.mdl_chord.b.y ? m.mdl_chord.b : m.mdl_chord.a;
  EXPECT_NEAR(lo.x, 10.0, 0.1);
  EXPECT_NEAR(lo.y, 0.0, 0.1);
  EXPECT_NEAR(hi.x, 25.0, 0.1);
  EXPECT_NEAR(hi.y, 30.0, 0.1);
}

TEST(Measures, DiametricTieTakesSmallestRay) {
  // Rays 1 and 3 both hit corners: sums tie at 10 * sqrt(2).
  const MeasureRecord m = measures(radial_profile(square_scene(), {5, 5}, 8));
  EXPECT_EQ(m.mdl_ray, 1u);
  EXPECT_NEAR(m.mdl_chord.b.x, 10.0, 1e-12);
  EXPECT_NEAR(m.mdl_chord.b.y, 10.0, 1e-12);
}

TEST(MeasureProperties, MrlConvergesToDistance) {
  for (const Scene& s : {square_scene(), rect_scene()}) {
    const auto [lo, hi] = s.bounding_box();
    for (double x = lo.x + 0.5; x < hi.x; x += 2.0) {
      for (double y = lo.y + 0.5; y < hi.y; y += 2.0) {
        if (!s.contains({x, y})) continue;
        const double exact = distance_to_boundary(s, {x, y});
        const double mrl = measures(radial_profile(s, {x, y}, 7200)).mrl;
        EXPECT_GE(mrl, exact - 1e-12);
        EXPECT_LE((mrl - exact) / exact, 1e-4);
      }
    }
  }
}

TEST(MeasureProperties, RefinedMinimumMatchesDistanceNearReflexCorners) {
  // Sampled minima alone miss corner distances by up to ~4e-4 relative here.
  const Scene s = t_scene();
  for (const Point p : {Point{17.5, 21.5}, Point{11.5, 22.5}, Point{14.5, 23.5}, Point{12.2, 20.7}}) {
    const RadialProfile prof = radial_profile(s, p, 7200);
    const double exact = distance_to_boundary(s, p);
    const double refined = refined_min_radial(s, prof);
    EXPECT_NEAR(refined, exact, 1e-9 * exact);
    EXPECT_LE(refined, measures(prof).mrl);
  }
}

TEST(MeasureProperties, ChordBoundsAndConvexity) {
  for (const Scene& s : {square_scene(), rect_scene(), t_scene()}) {
    const auto [lo, hi] = s.bounding_box();
    const double diag = distance(lo, hi);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ux(lo.x, hi.x), uy(lo.y, hi.y);
    int checked = 0;
    while (checked < 15) {
      const Point p{ux(rng), uy(rng)};
      if (!s.contains(p)) continue;
      ++checked;
      const RadialProfile prof = radial_profile(s, p, 1440);
      const MeasureRecord m = measures(prof);
      EXPECT_GE(m.mdl, *std::max_element(prof.radii.begin(), prof.radii.end()));
      EXPECT_LE(m.mdl, diag + 1e-9);
      EXPECT_LE(m.convexity, 1.0);
      EXPECT_LE(m.compactness, 1.0);
      EXPECT_LE(m.mrl, m.mean_radial);
      if (s.obstacles().empty() && s.bounds().size() == 4) { EXPECT_NEAR(m.convexity, 1.0, 1e-3); }
    }
  }
}

TEST(MeasureProperties, TranslationAndScaling) {
  const Ring t{{10, 0}, {20, 0}, {20, 20}, {30, 20}, {30, 30}, {0, 30}, {0, 20}, {10, 20}};
  auto transform = [](const Ring& r, double k, Point shift) {
    Ring out;
    for (const auto& p : r) out.push_back({k * p.x + shift.x, k * p.y + shift.y});
    return out;
  };
  const Scene base = make_scene(t, {});
  const Point shift{123.25, -47.5};
  const Scene moved = make_scene(transform(t, 1.0, shift), {});
  const Scene scaled = make_scene(transform(t, 2.5, {0, 0}), {});
  for (const Point p : {Point{15, 25}, Point{12.5, 7.5}, Point{3.5, 27.25}}) {
    const MeasureRecord a = measures(radial_profile(base, p, 1440));
    const MeasureRecord b = measures(radial_profile(moved, p + shift, 1440));
    const MeasureRecord c = measures(radial_profile(scaled, 2.5 * p, 1440));
    EXPECT_NEAR(a.area, b.area, 1e-8);
    EXPECT_NEAR(a.mdl, b.mdl, 1e-9);
    EXPECT_NEAR(a.mrl, b.mrl, 1e-9);
    EXPECT_NEAR(a.drift, b.drift, 1e-8);
    EXPECT_NEAR(a.convexity, b.convexity, 1e-9);
    EXPECT_NEAR(2.5 * a.mdl, c.mdl, 1e-9);
    EXPECT_NEAR(2.5 * a.perimeter, c.perimeter, 1e-8);
    EXPECT_NEAR(6.25 * a.area, c.area, 1e-7);
    EXPECT_NEAR(a.compactness, c.compactness, 1e-9);
  }
}

TEST(Clustering, ConvexRoomIsFullyClustered) {
  const Scene s = square_scene();
  const Grid g = make_grid(s, 1.0);
  std::vector<Point> peers;
  for (auto i : g.masked_indices()) peers.push_back(g.node(i));
  EXPECT_DOUBLE_EQ(clustering_coefficient(s, {3.5, 6.5}, peers, 64), 1.0);
  EXPECT_DOUBLE_EQ(clustering_coefficient(s, {3.5, 6.5}, peers, 1000), 1.0);
}

TEST(Clustering, DegenerateCases) {
  const Scene s = square_scene();
  const std::vector<Point> one{{2, 2}};
  EXPECT_DOUBLE_EQ(clustering_coefficient(s, {5, 5}, one, 64), 1.0);
  EXPECT_DOUBLE_EQ(clustering_coefficient(s, {5, 5}, std::vector<Point>{}, 64), 1.0);
  EXPECT_THROW(clustering_coefficient(s, {5, 5}, one, 1), Error);
}

TEST(Clustering, TStemMouth) {
  const Scene s = t_scene();
  const Grid g = make_grid(s, 1.0);
  std::vector<Point> peers;
  for (auto i : g.masked_indices()) peers.push_back(g.node(i));
  const Point p{15, 21};
  const double capped = clustering_coefficient(s, p, peers, 64);
  EXPECT_GT(capped, 0.0);
  EXPECT_LT(capped, 1.0);

  // Uncapped brute force with the oracle's own sight-line test.
  std::vector<Point> seen;
  for (const Point& q : peers)
    if (testing::oracle::sees(s, p.x, p.y, q.x, q.y)) seen.push_back(q);
  std::size_t linked = 0, pairs = 0;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    for (std::size_t j = i + 1; j < seen.size(); ++j) {
      ++pairs;
      linked += testing::oracle::sees(s, seen[i].x, seen[i].y, seen[j].x, seen[j].y);
    }
  }
  const double full = double(linked) / double(pairs);
  EXPECT_GT(full, 0.0);
  EXPECT_LT(full, 1.0);
  EXPECT_NEAR(clustering_coefficient(s, p, peers, 100000), full, 1e-12);
}

TEST(Clustering, VisibilityIsSymmetric) {
  const Scene s = testing::random_room(4);
  const Grid g = make_grid(s, 1.0);
  const auto idx = g.masked_indices();
  for (std::size_t a = 0; a < idx.size(); a += 7)
    for (std::size_t b = 0; b < idx.size(); b += 5)
      EXPECT_EQ(visible(s, g.node(idx[a]), g.node(idx[b])), visible(s, g.node(idx[b]), g.node(idx[a])));
}

TEST(MeasureKindNames, RoundTrip) {
  for (MeasureKind k : kAllMeasures) EXPECT_EQ(parse_measure(to_string(k)), k);
  EXPECT_FALSE(parse_measure("volume").has_value());
}

}  // namespace
}  // namespace isofield
