#pragma once

// Radial profiles, isovist polygons and the per-viewpoint measure suite.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isofield/scene.hpp"

namespace isofield {

// 0.05 degree angular step.
inline constexpr std::size_t kDefaultRays = 7200;
inline constexpr std::size_t kDefaultClusteringCap = 64;

enum class MeasureKind { Area, Perimeter, Mrl, Mdl, MeanRadial, Convexity, Compactness, Drift, Clustering };

inline constexpr std::array<MeasureKind, 9> kAllMeasures = {
    MeasureKind::Area,      MeasureKind::Perimeter,   MeasureKind::Mrl,   MeasureKind::Mdl,       MeasureKind::MeanRadial,
    MeasureKind::Convexity, MeasureKind::Compactness, MeasureKind::Drift, MeasureKind::Clustering};

inline std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Area: return "area";
    case MeasureKind::Perimeter: return "perimeter";
    case MeasureKind::Mrl: return "mrl";
    case MeasureKind::Mdl: return "mdl";
    case MeasureKind::MeanRadial: return "mean-radial";
    case MeasureKind::Convexity: return "convexity";
    case MeasureKind::Compactness: return "compactness";
    case MeasureKind::Drift: return "drift";
    case MeasureKind::Clustering: return "clustering";
  }
  return "unknown";
}

inline std::optional<MeasureKind> parse_measure(std::string_view name) {
  for (MeasureKind kind : kAllMeasures)
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

// Unit directions for n uniformly spaced rays. The second half is the exact
// negation of the first so antipodal pairs are bit-exact opposites.
inline std::vector<Point> ray_directions(std::size_t n_rays) {
  std::vector<Point> dirs(n_rays);
  const std::size_t half = n_rays / 2;
  for (std::size_t i = 0; i < half; ++i) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_rays);
    double c = std::cos(theta);
    double s = std::sin(theta);
    if (std::abs(c) < 1e-15) c = 0.0;
    if (std::abs(s) < 1e-15) s = 0.0;
    dirs[i] = {c, s};
    dirs[i + half] = {-c, -s};
  }
  return dirs;
}

struct RadialProfile {
  Point viewpoint;
  std::vector<double> radii;

  std::size_t n_rays() const { return radii.size(); }
  double angle(std::size_t i) const {
    return 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(radii.size());
  }
};

inline void check_ray_count(std::size_t n_rays) {
  if (n_rays < 4 || n_rays % 2 != 0)
    throw Error("BAD_RAY_COUNT", "ray count must be even and at least 4, got " + std::to_string(n_rays));
}

// Uses a precomputed direction table; `dirs.size()` is the ray count.
inline RadialProfile radial_profile(const Scene& scene, Point p, std::span<const Point> dirs) {
  if (!scene.contains(p)) throw Error("OUTSIDE_OPEN_SPACE", "viewpoint is not in the open space");
  RadialProfile profile{p, std::vector<double>(dirs.size())};
  for (std::size_t i = 0; i < dirs.size(); ++i) profile.radii[i] = scene.cast(p, dirs[i]).distance;
  return profile;
}

inline RadialProfile radial_profile(const Scene& scene, Point p, std::size_t n_rays = kDefaultRays) {
  check_ray_count(n_rays);
  const auto dirs = ray_directions(n_rays);
  return radial_profile(scene, p, dirs);
}

struct IsovistPolygon {
  std::vector<Point> vertices;

  double area() const { return signed_area(vertices); }

  double perimeter() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) sum += distance(vertices[i], vertices[(i + 1) % vertices.size()]);
    return sum;
  }

  Point centroid() const {
    double cx = 0.0, cy = 0.0, twice = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const Point& p = vertices[i];
      const Point& q = vertices[(i + 1) % vertices.size()];
      const double w = p.x * q.y - q.x * p.y;
      twice += w;
      cx += (p.x + q.x) * w;
      cy += (p.y + q.y) * w;
    }
    return {cx / (3.0 * twice), cy / (3.0 * twice)};
  }

  // Inclusive: points within kEpsilon of an edge count as contained.
  bool contains(Point p) const { return detail::locate(vertices, p) != detail::Containment::Outside; }
};

inline IsovistPolygon isovist_polygon(const RadialProfile& profile, std::span<const Point> dirs) {
  IsovistPolygon poly;
  poly.vertices.reserve(profile.radii.size());
  for (std::size_t i = 0; i < profile.radii.size(); ++i)
    poly.vertices.push_back(profile.viewpoint + profile.radii[i] * dirs[i]);
  return poly;
}

inline IsovistPolygon isovist_polygon(const RadialProfile& profile) {
  const auto dirs = ray_directions(profile.n_rays());
  return isovist_polygon(profile, dirs);
}

// Exact visibility polygon by angular sweep. Between two consecutive vertex
// angles the nearest wall is a single segment, so each angular interval
// contributes that segment clipped to the interval's bounding rays. Window
// edges behind silhouette vertices fall out as the jump between intervals.
inline IsovistPolygon exact_isovist(const Scene& scene, Point p) {
  if (!scene.contains(p)) throw Error("OUTSIDE_OPEN_SPACE", "viewpoint is not in the open space");
  std::vector<double> angles;
  for (const Point& v : scene.vertices()) {
    double a = std::atan2(v.y - p.y, v.x - p.x);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    angles.push_back(a);
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(), [](double a, double b) { return b - a < 1e-12; }),
               angles.end());

  auto clip = [&](const Segment& s, double angle) {
    const Point dir{std::cos(angle), std::sin(angle)};
    const Point e = s.b - s.a;
    const double den = cross(dir, e);
    const double t = cross(s.a - p, e) / den;
    return p + t * dir;
  };

  IsovistPolygon poly;
  auto push = [&](Point q) {
    if (poly.vertices.empty() || distance(poly.vertices.back(), q) > kEpsilon) poly.vertices.push_back(q);
  };
  const std::size_t m = angles.size();
  for (std::size_t k = 0; k < m; ++k) {
    const double lo = angles[k];
    const double hi = (k + 1 < m) ? angles[k + 1] : angles[0] + 2.0 * std::numbers::pi;
    const double mid = 0.5 * (lo + hi);
    const RayHit hit = scene.cast(p, {std::cos(mid), std::sin(mid)});
    const Segment& s = scene.segments()[hit.segment];
    push(clip(s, lo));
    push(clip(s, hi));
  }
  if (poly.vertices.size() > 1 && distance(poly.vertices.front(), poly.vertices.back()) <= kEpsilon)
    poly.vertices.pop_back();
  return poly;
}

// Andrew's monotone chain; counter-clockwise, collinear points dropped.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

struct MeasureRecord {
  double area{0.0};
  double perimeter{0.0};
  double mrl{0.0};
  double mdl{0.0};
  Segment mdl_chord;
  std::size_t mdl_ray{0};
  double mean_radial{0.0};
  double convexity{0.0};
  double compactness{0.0};
  double drift{0.0};
};

// Longest chord through the viewpoint as the largest antipodal radial sum.
// Sums within 1e-9 of the maximum resolve to the smallest ray index.
inline std::size_t max_diametric_ray(const RadialProfile& profile) {
  const std::size_t half = profile.n_rays() / 2;
  double best = -1.0;
  for (std::size_t i = 0; i < half; ++i) best = std::max(best, profile.radii[i] + profile.radii[i + half]);
  for (std::size_t i = 0; i < half; ++i)
    if (profile.radii[i] + profile.radii[i + half] >= best - 1e-9) return i;
  return 0;
}

inline MeasureRecord measures(const RadialProfile& profile, std::span<const Point> dirs) {
  const std::size_t n = profile.n_rays();
  const std::size_t half = n / 2;
  const IsovistPolygon poly = isovist_polygon(profile, dirs);

  MeasureRecord m;
  m.area = poly.area();
  m.perimeter = poly.perimeter();
  m.mrl = *std::min_element(profile.radii.begin(), profile.radii.end());
  double sum = 0.0;
  for (double r : profile.radii) sum += r;
  m.mean_radial = sum / static_cast<double>(n);

  m.mdl_ray = max_diametric_ray(profile);
  m.mdl = profile.radii[m.mdl_ray] + profile.radii[m.mdl_ray + half];
  m.mdl_chord = {poly.vertices[m.mdl_ray + half], poly.vertices[m.mdl_ray]};

  const double hull_area = signed_area(convex_hull(poly.vertices));
  m.convexity = hull_area > 0.0 ? std::min(1.0, m.area / hull_area) : 1.0;
  m.compactness = 4.0 * std::numbers::pi * m.area / (m.perimeter * m.perimeter);
  m.drift = distance(poly.centroid(), profile.viewpoint);
  return m;
}

inline MeasureRecord measures(const RadialProfile& profile) {
  const auto dirs = ray_directions(profile.n_rays());
  return measures(profile, dirs);
}

// Minimum radial length refined between samples. Each sampled local minimum
// close to the global one is bracketed by its neighbouring rays and narrowed
// by golden-section search on the ray length. Sampling alone misses the true
// minimum by a first-order amount when the nearest wall point is a corner
// poking into the open space.
inline double refined_min_radial(const Scene& scene, const RadialProfile& profile) {
  const std::size_t n = profile.n_rays();
  const auto& r = profile.radii;
  const double sampled = *std::min_element(r.begin(), r.end());
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  double best = sampled;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = r[(i + n - 1) % n];
    const double next = r[(i + 1) % n];
    if (r[i] > prev || r[i] > next || r[i] > 1.05 * sampled) continue;
    double lo = profile.angle(i) - step;
    double hi = profile.angle(i) + step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = scene.ray_length(profile.viewpoint, x1);
    double f2 = scene.ray_length(profile.viewpoint, x2);
    for (int iter = 0; iter < 60 && hi - lo > 1e-14; ++iter) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = scene.ray_length(profile.viewpoint, x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = scene.ray_length(profile.viewpoint, x2);
      }
    }
    best = std::min({best, f1, f2});
  }
  return best;
}

// Unobstructed sight line between two open-space points. The test is run on
// the pair in a canonical order so that visible(p, q) == visible(q, p).
inline bool visible(const Scene& scene, Point p, Point q) {
  if (q.x < p.x || (q.x == p.x && q.y < p.y)) std::swap(p, q);
  const Point dir = q - p;
  const double len = norm(dir);
  if (len <= kEpsilon) return true;
  const RayHit hit = scene.cast(p, dir);
  return hit.distance * len >= len - kEpsilon;
}

// Fraction of mutually visible pairs among the peers visible from `p`. With
// more than `cap` visible peers, every ceil(|N| / cap)-th one (in the given
// order) is kept. Fewer than two visible peers gives 1.
inline double clustering_coefficient(const Scene& scene, Point p, std::span<const Point> peers,
                                     std::size_t cap = kDefaultClusteringCap) {
  if (cap < 2) throw Error("BAD_CAP", "clustering cap must be at least 2");
  std::vector<Point> seen;
  for (const Point& q : peers)
    if (!(q == p) && visible(scene, p, q)) seen.push_back(q);
  if (seen.size() > cap) {
    const std::size_t stride = (seen.size() + cap - 1) / cap;
    std::vector<Point> sample;
    for (std::size_t i = 0; i < seen.size(); i += stride) sample.push_back(seen[i]);
    seen = std::move(sample);
  }
  if (seen.size() < 2) return 1.0;
  std::size_t linked = 0;
  for (std::size_t i = 0; i < seen.size(); ++i)
    for (std::size_t j = i + 1; j < seen.size(); ++j)
      if (visible(scene, seen[i], seen[j])) ++linked;
  const double pairs = 0.5 * static_cast<double>(seen.size()) * static_cast<double>(seen.size() - 1);
  return static_cast<double>(linked) / pairs;
}

}  // namespace isofield
