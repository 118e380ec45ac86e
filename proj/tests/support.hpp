#pragma once

// Shared fixtures and brute-force oracles for the test suites. The oracles
// deliberately avoid the library's geometry routines: they carry their own
// ray/segment intersection and point/segment distance code.

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "isofield/isofield.hpp"

namespace isofield::testing {

inline std::string data_path(const std::string& name) { return std::string(ISOFIELD_DATA_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Scene load_data_scene(const std::string& name) { return load_scene(slurp(data_path(name))); }

inline Scene square_scene() { return make_scene({{0, 0}, {10, 0}, {10, 10}, {0, 10}}, {}); }
inline Scene rect_scene() { return make_scene({{0, 0}, {40, 0}, {40, 10}, {0, 10}}, {}); }
inline Scene t_scene() {
  return make_scene({{10, 0}, {20, 0}, {20, 20}, {30, 20}, {30, 30}, {0, 30}, {0, 20}, {10, 20}}, {});
}

// Rectangular room with 2-4 disjoint axis-aligned rectangular obstacles on
// integer coordinates, at least one unit apart from each other and the walls.
inline Scene random_room(unsigned seed) {
  std::mt19937 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int width = uniform(16, 26);
  const int height = uniform(12, 20);
  const int want = uniform(2, 4);
  struct Box {
    int x0, y0, x1, y1;
  };
  std::vector<Box> boxes;
  for (int attempt = 0; attempt < 200 && static_cast<int>(boxes.size()) < want; ++attempt) {
    const int w = uniform(1, 6);
    const int h = uniform(1, 5);
    const int x0 = uniform(1, width - w - 1);
    const int y0 = uniform(1, height - h - 1);
    const Box b{x0, y0, x0 + w, y0 + h};
    const bool clash = std::any_of(boxes.begin(), boxes.end(), [&](const Box& o) {
      return !(b.x1 + 1 <= o.x0 || o.x1 + 1 <= b.x0 || b.y1 + 1 <= o.y0 || o.y1 + 1 <= b.y0);
    });
    if (!clash) boxes.push_back(b);
  }
  std::vector<Ring> obstacles;
  for (const auto& b : boxes)
    obstacles.push_back({{double(b.x0), double(b.y0)}, {double(b.x1), double(b.y0)}, {double(b.x1), double(b.y1)},
                         {double(b.x0), double(b.y1)}});
  return make_scene({{0, 0}, {double(width), 0}, {double(width), double(height)}, {0, double(height)}},
                    std::move(obstacles));
}

namespace oracle {

struct Seg {
  double ax, ay, bx, by;
};

inline std::vector<Seg> segments(const Scene& s) {
  std::vector<Seg> out;
  auto add = [&](const Ring& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      const Point& a = r[i];
      const Point& b = r[(i + 1) % r.size()];
      out.push_back({a.x, a.y, b.x, b.y});
    }
  };
  add(s.bounds());
  for (const auto& r : s.obstacles()) add(r);
  return out;
}

// Exact point-to-segment distance minimised over every wall.
inline double distance(const Scene& s, double px, double py) {
  double best = std::numeric_limits<double>::infinity();
  for (const Seg& g : segments(s)) {
    const double ex = g.bx - g.ax, ey = g.by - g.ay;
    double t = ((px - g.ax) * ex + (py - g.ay) * ey) / (ex * ex + ey * ey);
    t = std::max(0.0, std::min(1.0, t));
    best = std::min(best, std::hypot(px - g.ax - t * ex, py - g.ay - t * ey));
  }
  return best;
}

// Free length along a ray (Cramer's rule, closed segments).
inline double free_length(const std::vector<Seg>& segs, double px, double py, double angle) {
  const double dx = std::cos(angle), dy = std::sin(angle);
  double best = std::numeric_limits<double>::infinity();
  for (const Seg& g : segs) {
    const double ex = g.bx - g.ax, ey = g.by - g.ay;
    const double det = -dx * ey + dy * ex;
    if (std::abs(det) < 1e-14) continue;
    const double wx = g.ax - px, wy = g.ay - py;
    const double t = (-wx * ey + wy * ex) / det;
    const double u = (dx * wy - dy * wx) / det;
    if (t > 1e-12 && u >= -1e-12 && u <= 1 + 1e-12) best = std::min(best, t);
  }
  return best;
}

// Longest chord through (px, py) by dense angular search at `step_deg`.
inline double dense_chord(const Scene& s, double px, double py, double step_deg = 0.01) {
  const auto segs = segments(s);
  const int n = static_cast<int>(std::lround(180.0 / step_deg));
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = i * step_deg * std::numbers::pi / 180.0;
    best = std::max(best, free_length(segs, px, py, a) + free_length(segs, px, py, a + std::numbers::pi));
  }
  return best;
}

// Segment p-q is clear of every wall (strict crossing or touching counts).
inline bool sees(const Scene& s, double px, double py, double qx, double qy) {
  const double len = std::hypot(qx - px, qy - py);
  if (len == 0.0) return true;
  const double angle = std::atan2(qy - py, qx - px);
  return free_length(segments(s), px, py, angle) >= len - 1e-9;
}

// Monte Carlo estimate of the area visible from p.
inline double monte_carlo_visible_area(const Scene& s, Point p, int samples, unsigned seed) {
  const auto [lo, hi] = s.bounding_box();
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ux(lo.x, hi.x), uy(lo.y, hi.y);
  const auto segs = segments(s);
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = ux(rng), y = uy(rng);
    if (!s.contains({x, y})) continue;
    const double len = std::hypot(x - p.x, y - p.y);
    if (free_length(segs, p.x, p.y, std::atan2(y - p.y, x - p.x)) >= len - 1e-9) ++hits;
  }
  return (hi.x - lo.x) * (hi.y - lo.y) * hits / samples;
}

// Sample points of the medial axis: open-space points whose two nearest walls
// are equidistant (within `band`) and seen in directions at least 30 degrees
// apart, which excludes the two walls meeting at a shared nearest vertex.
// The distance gap grows by up to 2 per unit off the axis, so `band` must
// exceed `step` for samples straddling the axis to register.
inline std::vector<Point> medial_axis(const Scene& s, double step, double band) {
  const auto segs = segments(s);
  const auto [lo, hi] = s.bounding_box();
  std::vector<Point> out;
  for (double y = lo.y + step / 2; y < hi.y; y += step) {
    for (double x = lo.x + step / 2; x < hi.x; x += step) {
      if (!s.contains({x, y})) continue;
      struct Foot {
        double d, fx, fy;
      };
      std::vector<Foot> feet;
      for (const Seg& g : segs) {
        const double ex = g.bx - g.ax, ey = g.by - g.ay;
        double t = ((x - g.ax) * ex + (y - g.ay) * ey) / (ex * ex + ey * ey);
        t = std::max(0.0, std::min(1.0, t));
        const double fx = g.ax + t * ex, fy = g.ay + t * ey;
        feet.push_back({std::hypot(x - fx, y - fy), fx, fy});
      }
      const double dmin = std::min_element(feet.begin(), feet.end(), [](auto& a, auto& b) { return a.d < b.d; })->d;
      bool medial = false;
      for (std::size_t i = 0; i < feet.size() && !medial; ++i) {
        if (feet[i].d > dmin + band) continue;
        for (std::size_t j = i + 1; j < feet.size() && !medial; ++j) {
          if (feet[j].d > dmin + band) continue;
          const double a1 = std::atan2(feet[i].fy - y, feet[i].fx - x);
          const double a2 = std::atan2(feet[j].fy - y, feet[j].fx - x);
          double diff = std::abs(a1 - a2);
          diff = std::min(diff, 2 * std::numbers::pi - diff);
          if (diff > std::numbers::pi / 6) medial = true;
        }
      }
      if (medial) out.push_back({x, y});
    }
  }
  return out;
}

inline double nearest(const std::vector<Point>& pts, Point p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& q : pts) best = std::min(best, std::hypot(p.x - q.x, p.y - q.y));
  return best;
}

// General 6-parameter least squares over a 3x3 window via the normal
// equations and Gaussian elimination; returns {a, b, c, d, e, f} in unit cells.
inline std::array<double, 6> quad_fit(const std::array<std::array<double, 3>, 3>& w) {
  double m[6][7] = {};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const double x = c - 1, y = r - 1;
      const double basis[6] = {x * x, y * y, x * y, x, y, 1.0};
      for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) m[i][j] += basis[i] * basis[j];
        m[i][6] += basis[i] * w[r][c];
      }
    }
  }
  for (int col = 0; col < 6; ++col) {
    int piv = col;
    for (int i = col + 1; i < 6; ++i)
      if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
    for (int j = 0; j < 7; ++j) std::swap(m[col][j], m[piv][j]);
    for (int i = 0; i < 6; ++i) {
      if (i == col) continue;
      const double factor = m[i][col] / m[col][col];
      for (int j = col; j < 7; ++j) m[i][j] -= factor * m[col][j];
    }
  }
  std::array<double, 6> out{};
  for (int i = 0; i < 6; ++i) out[i] = m[i][6] / m[i][i];
  return out;
}

}  // namespace oracle

// Principal-axis orientation of a polyline's nodes, degrees in [0, 180).
inline double principal_orientation(const std::vector<Point>& pts) {
  double mx = 0, my = 0;
  for (const auto& p : pts) {
    mx += p.x;
    my += p.y;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxx = 0, syy = 0, sxy = 0;
  for (const auto& p : pts) {
    sxx += (p.x - mx) * (p.x - mx);
    syy += (p.y - my) * (p.y - my);
    sxy += (p.x - mx) * (p.y - my);
  }
  double deg = 0.5 * std::atan2(2 * sxy, sxx - syy) * 180.0 / std::numbers::pi;
  if (deg < 0) deg += 180.0;
  return deg;
}

inline std::vector<Point> chain_points(const Grid& g, const std::vector<std::size_t>& chain) {
  std::vector<Point> pts;
  for (auto i : chain) pts.push_back(g.node(i));
  return pts;
}

}  // namespace isofield::testing
