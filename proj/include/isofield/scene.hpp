#pragma once

// Scene geometry: an outer open-space boundary plus disjoint obstacle rings,
// with the ray-casting and distance queries every isovist measure is built on.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace isofield {

// Coincidence tolerance in scene units.
inline constexpr double kEpsilon = 1e-9;

struct Point {
  double x{0.0};
  double y{0.0};

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

struct Segment {
  Point a;
  Point b;

  double length() const { return distance(a, b); }
};

using Ring = std::vector<Point>;

// Error carrying a stable machine-readable code (e.g. "NO_NODES").
class Error : public std::runtime_error {
 public:
  enum class Kind { Domain, Parse, IO };

  Error(std::string code, const std::string& message, Kind kind = Kind::Domain)
      : std::runtime_error(code + ": " + message), code_(std::move(code)), kind_(kind) {}

  const std::string& code() const noexcept { return code_; }
  Kind kind() const noexcept { return kind_; }

 private:
  std::string code_;
  Kind kind_;
};

// Shoelace signed area; positive for counter-clockwise rings.
inline double signed_area(const Ring& ring) {
  double twice = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = ring[i];
    const Point& q = ring[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

inline double point_segment_distance(Point p, const Segment& s) {
  const Point e = s.b - s.a;
  const double len2 = dot(e, e);
  if (len2 == 0.0) return distance(p, s.a);
  const double t = std::clamp(dot(p - s.a, e) / len2, 0.0, 1.0);
  return distance(p, s.a + t * e);
}

namespace detail {

inline int orient(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  const double scale = std::max({1.0, norm(b - a), norm(c - a)});
  if (v > kEpsilon * scale) return 1;
  if (v < -kEpsilon * scale) return -1;
  return 0;
}

inline bool on_segment(Point p, const Segment& s) { return point_segment_distance(p, s) <= kEpsilon; }

// Closed-segment intersection test, touching included.
inline bool segments_intersect(const Segment& s, const Segment& t) {
  const int o1 = orient(s.a, s.b, t.a);
  const int o2 = orient(s.a, s.b, t.b);
  const int o3 = orient(t.a, t.b, s.a);
  const int o4 = orient(t.a, t.b, s.b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_segment(t.a, s) || on_segment(t.b, s) || on_segment(s.a, t) || on_segment(s.b, t);
}

enum class Containment { Outside, Inside, Boundary };

inline Containment locate(const Ring& ring, Point p) {
  const std::size_t n = ring.size();
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    if (on_segment(p, {a, b})) return Containment::Boundary;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xi = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xi) inside = !inside;
    }
  }
  return inside ? Containment::Inside : Containment::Outside;
}

}  // namespace detail

// Ring index convention: 0 is the bounds ring, k >= 1 is obstacle k - 1.
struct ValidationIssue {
  std::string code;
  std::string message;
  std::size_t ring{0};
};

struct ValidationReport {
  bool ok{true};
  std::vector<ValidationIssue> issues;

  void add(std::string code, std::string message, std::size_t ring) {
    ok = false;
    issues.push_back({std::move(code), std::move(message), ring});
  }
  bool has(const std::string& code) const {
    return std::any_of(issues.begin(), issues.end(), [&](const auto& i) { return i.code == code; });
  }
};

struct RayHit {
  double distance{std::numeric_limits<double>::infinity()};
  std::size_t segment{0};
};

class Scene {
 public:
  Scene() = default;
  Scene(Ring bounds, std::vector<Ring> obstacles) : bounds_(std::move(bounds)), obstacles_(std::move(obstacles)) {
    rebuild_segments();
  }

  const Ring& bounds() const { return bounds_; }
  const std::vector<Ring>& obstacles() const { return obstacles_; }
  const std::vector<Segment>& segments() const { return segments_; }

  std::vector<Point> vertices() const {
    std::vector<Point> out(bounds_);
    for (const auto& ring : obstacles_) out.insert(out.end(), ring.begin(), ring.end());
    return out;
  }

  // Lower-left and upper-right corners of the bounds ring.
  std::pair<Point, Point> bounding_box() const {
    Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Point hi{-lo.x, -lo.y};
    for (const auto& p : bounds_) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    return {lo, hi};
  }

  double open_area() const {
    double area = std::abs(signed_area(bounds_));
    for (const auto& ring : obstacles_) area -= std::abs(signed_area(ring));
    return area;
  }

  // Strictly inside the bounds and strictly outside every obstacle.
  bool contains(Point p) const {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return false;
    if (detail::locate(bounds_, p) != detail::Containment::Inside) return false;
    for (const auto& ring : obstacles_)
      if (detail::locate(ring, p) != detail::Containment::Outside) return false;
    return true;
  }

  // Nearest intersection along origin + t * dir (dir need not be unit; t is
  // returned in units of |dir|). No open-space check.
  RayHit cast(Point origin, Point dir) const {
    RayHit best;
    for (std::size_t k = 0; k < segments_.size(); ++k) {
      const Segment& s = segments_[k];
      const Point e = s.b - s.a;
      const Point w = s.a - origin;
      const double den = cross(dir, e);
      const double elen = norm(e);
      if (std::abs(den) <= 1e-15 * elen * norm(dir)) {
        // Parallel: only a collinear edge can be hit, at its nearer endpoint.
        if (std::abs(cross(w, dir)) > kEpsilon * norm(dir)) continue;
        const double d2 = dot(dir, dir);
        for (const Point& end : {s.a, s.b}) {
          const double t = dot(end - origin, dir) / d2;
          if (t > 0.0 && t < best.distance) best = {t, k};
        }
        continue;
      }
      const double t = cross(w, e) / den;
      if (!(t > 0.0) || t >= best.distance) continue;
      const double u = cross(w, dir) / den;
      const double slack = kEpsilon / elen;
      if (u >= -slack && u <= 1.0 + slack) best = {t, k};
    }
    return best;
  }

  double ray_length(Point origin, double angle) const {
    return cast(origin, {std::cos(angle), std::sin(angle)}).distance;
  }

 private:
  void rebuild_segments() {
    segments_.clear();
    auto push = [&](const Ring& ring) {
      for (std::size_t i = 0; i < ring.size(); ++i) segments_.push_back({ring[i], ring[(i + 1) % ring.size()]});
    };
    push(bounds_);
    for (const auto& ring : obstacles_) push(ring);
  }

  Ring bounds_;
  std::vector<Ring> obstacles_;
  std::vector<Segment> segments_;
};

namespace detail {

inline void check_ring(const Ring& ring, std::size_t index, ValidationReport& report) {
  if (ring.size() < 3) {
    report.add("TOO_FEW_VERTICES", "ring needs at least 3 vertices", index);
    return;
  }
  for (const auto& p : ring) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      report.add("NON_FINITE", "ring has a non-finite coordinate", index);
      return;
    }
  }
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (distance(ring[i], ring[(i + 1) % n]) <= kEpsilon) {
      report.add("REPEATED_VERTEX", "ring repeats vertex " + std::to_string(i), index);
      return;
    }
  }
  // A ring with no net area is degenerate unless two of its edges cross.
  const bool flat = std::abs(signed_area(ring)) <= kEpsilon;
  for (std::size_t i = 0; i < n; ++i) {
    const Segment si{ring[i], ring[(i + 1) % n]};
    for (std::size_t j = i + 1; j < n; ++j) {
      const Segment sj{ring[j], ring[(j + 1) % n]};
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      bool bad = false;
      if (flat && adjacent) continue;
      if (!adjacent) {
        bad = segments_intersect(si, sj);
      } else {
        // Adjacent edges share one vertex; they may only overlap there.
        const Point shared = (j == i + 1) ? si.b : si.a;
        const Point far_i = (j == i + 1) ? si.a : si.b;
        const Point far_j = (j == i + 1) ? sj.b : sj.a;
        bad = orient(far_i, shared, far_j) == 0 && dot(far_i - shared, far_j - shared) > 0.0;
      }
      if (bad) {
        report.add("SELF_INTERSECTION",
                   "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect", index);
        return;
      }
    }
  }
  if (flat) report.add("ZERO_AREA", "ring encloses no area", index);
}

inline bool rings_touch(const Ring& r, const Ring& s) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Segment a{r[i], r[(i + 1) % r.size()]};
    for (std::size_t j = 0; j < s.size(); ++j)
      if (segments_intersect(a, {s[j], s[(j + 1) % s.size()]})) return true;
  }
  return false;
}

}  // namespace detail

inline ValidationReport validate(const Ring& bounds, const std::vector<Ring>& obstacles) {
  ValidationReport report;
  detail::check_ring(bounds, 0, report);
  std::vector<bool> ring_ok(obstacles.size(), false);
  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    const std::size_t before = report.issues.size();
    detail::check_ring(obstacles[k], k + 1, report);
    ring_ok[k] = report.issues.size() == before;
  }
  if (!report.ok && report.issues.front().ring == 0) return report;

  using detail::Containment;
  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    if (!ring_ok[k]) continue;
    const Ring& obs = obstacles[k];
    bool outside = detail::rings_touch(obs, bounds);
    for (const auto& p : obs)
      if (detail::locate(bounds, p) != Containment::Inside) outside = true;
    if (outside) {
      report.add("OBSTACLE_OUTSIDE", "obstacle " + std::to_string(k) + " is not strictly inside the bounds", k + 1);
      ring_ok[k] = false;
    }
  }
  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    for (std::size_t m = k + 1; m < obstacles.size(); ++m) {
      if (!ring_ok[k] || !ring_ok[m]) continue;
      const Ring& a = obstacles[k];
      const Ring& b = obstacles[m];
      const bool overlap = detail::rings_touch(a, b) ||
                           detail::locate(b, a.front()) != Containment::Outside ||
                           detail::locate(a, b.front()) != Containment::Outside;
      if (overlap)
        report.add("OBSTACLE_OVERLAP",
                   "obstacles " + std::to_string(k) + " and " + std::to_string(m) + " overlap or touch", m + 1);
    }
  }
  return report;
}

inline ValidationReport validate(const Scene& scene) { return validate(scene.bounds(), scene.obstacles()); }

// Validates, then orients the bounds counter-clockwise and obstacles clockwise.
inline Scene make_scene(Ring bounds, std::vector<Ring> obstacles) {
  const ValidationReport report = validate(bounds, obstacles);
  if (!report.ok) {
    std::ostringstream msg;
    for (std::size_t i = 0; i < report.issues.size(); ++i)
      msg << (i ? "; " : "") << report.issues[i].code << " (ring " << report.issues[i].ring
          << "): " << report.issues[i].message;
    throw Error(report.issues.front().code, msg.str());
  }
  if (signed_area(bounds) < 0.0) std::reverse(bounds.begin(), bounds.end());
  for (auto& ring : obstacles)
    if (signed_area(ring) > 0.0) std::reverse(ring.begin(), ring.end());
  return Scene(std::move(bounds), std::move(obstacles));
}

namespace detail {

inline Ring parse_ring(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw Error("PARSE", std::string(what) + " must be an array of [x, y] pairs", Error::Kind::Parse);
  Ring ring;
  for (const auto& v : j) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw Error("PARSE", std::string(what) + " vertex must be [x, y]", Error::Kind::Parse);
    ring.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  // A repeated closing vertex is accepted and dropped.
  if (ring.size() > 3 && ring.front() == ring.back()) ring.pop_back();
  return ring;
}

}  // namespace detail

// Parses `{"bounds": [[x,y],...], "obstacles": [[[x,y],...], ...]}`.
inline Scene load_scene(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("PARSE", e.what(), Error::Kind::Parse);
  }
  if (!doc.is_object() || !doc.contains("bounds"))
    throw Error("PARSE", "scene must be an object with a \"bounds\" ring", Error::Kind::Parse);
  Ring bounds = detail::parse_ring(doc["bounds"], "bounds");
  std::vector<Ring> obstacles;
  if (doc.contains("obstacles")) {
    if (!doc["obstacles"].is_array()) throw Error("PARSE", "obstacles must be an array of rings", Error::Kind::Parse);
    for (const auto& r : doc["obstacles"]) obstacles.push_back(detail::parse_ring(r, "obstacle"));
  }
  return make_scene(std::move(bounds), std::move(obstacles));
}

inline std::string save_scene(const Scene& scene) {
  auto ring_json = [](const Ring& ring) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : ring) out.push_back({p.x, p.y});
    return out;
  };
  nlohmann::json doc;
  doc["bounds"] = ring_json(scene.bounds());
  doc["obstacles"] = nlohmann::json::array();
  for (const auto& ring : scene.obstacles()) doc["obstacles"].push_back(ring_json(ring));
  return doc.dump();
}

inline bool point_in_open_space(const Scene& scene, Point p) { return scene.contains(p); }

// Distance to the first wall hit from `origin` along `angle` radians.
inline double ray_cast(const Scene& scene, Point origin, double angle) {
  if (!scene.contains(origin)) throw Error("OUTSIDE_OPEN_SPACE", "ray origin is not in the open space");
  return scene.ray_length(origin, angle);
}

// Exact Euclidean distance to the nearest scene segment.
inline double distance_to_boundary(const Scene& scene, Point p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : scene.segments()) best = std::min(best, point_segment_distance(p, s));
  return best;
}

}  // namespace isofield
