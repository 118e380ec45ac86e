#pragma once

// Curvature-based surface feature classification of measure fields and ridge
// linking. The skeleton of an open space is the ridge set of its MRL field.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "isofield/field.hpp"
#include "isofield/isovist.hpp"
#include "isofield/scene.hpp"

namespace isofield {

// z = a x^2 + b y^2 + c xy + d x + e y + f, x and y in scene units from the node.
struct QuadCoeffs {
  double a{0.0}, b{0.0}, c{0.0}, d{0.0}, e{0.0}, f{0.0};
};

enum class MorphClass { Ridge, Channel, Planar, Peak, Pit, Pass, NoData };

inline std::string_view to_string(MorphClass m) {
  switch (m) {
    case MorphClass::Ridge: return "ridge";
    case MorphClass::Channel: return "channel";
    case MorphClass::Planar: return "planar";
    case MorphClass::Peak: return "peak";
    case MorphClass::Pit: return "pit";
    case MorphClass::Pass: return "pass";
    case MorphClass::NoData: return "nodata";
  }
  return "nodata";
}

struct Tolerances {
  // Below this gradient (rise over run) a node is treated as flat and
  // classified by its Hessian eigenvalues.
  double slope{0.6};
  // Curvature threshold in 1/length; see default_tolerances().
  double curvature{0.05};
};

inline Tolerances default_tolerances(double spacing) { return {0.6, 0.05 / spacing}; }

// Least-squares quadratic over a 3x3 window. window[r][c] holds the value at
// unit offsets x = c - 1, y = r - 1 (r = 0 is the southern row).
inline QuadCoeffs fit_window(const std::array<std::array<double, 3>, 3>& window, double spacing) {
  double s = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const double z = window[r][c];
      const double x = c - 1, y = r - 1;
      s += z;
      sx += x * z;
      sy += y * z;
      sxx += x * x * z;
      syy += y * y * z;
      sxy += x * y * z;
    }
  }
  const double f = (5.0 * s - 3.0 * (sxx + syy)) / 9.0;
  const double a_plus_b = (3.0 * (sxx + syy) - 4.0 * s) / 6.0;
  const double a_minus_b = (sxx - syy) / 2.0;
  const double h = spacing;
  QuadCoeffs q;
  q.a = 0.5 * (a_plus_b + a_minus_b) / (h * h);
  q.b = 0.5 * (a_plus_b - a_minus_b) / (h * h);
  q.c = (sxy / 4.0) / (h * h);
  q.d = (sx / 6.0) / h;
  q.e = (sy / 6.0) / h;
  q.f = f;
  return q;
}

// Whether the node and all eight neighbours carry data.
inline bool full_window(const MeasureField& field, std::size_t col, std::size_t row) {
  const Grid& g = field.grid;
  if (col == 0 || row == 0 || col + 1 >= g.n_cols || row + 1 >= g.n_rows) return false;
  for (std::size_t r = row - 1; r <= row + 1; ++r)
    for (std::size_t c = col - 1; c <= col + 1; ++c)
      if (!g.mask[g.index(c, r)]) return false;
  return true;
}

inline std::optional<QuadCoeffs> fit_quadratic(const MeasureField& field, std::size_t col, std::size_t row) {
  if (!full_window(field, col, row)) return std::nullopt;
  std::array<std::array<double, 3>, 3> w{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) w[r][c] = field.at(col + c - 1, row + r - 1);
  return fit_window(w, field.grid.spacing);
}

inline MorphClass classify_node(const QuadCoeffs& q, const Tolerances& tol) {
  const double g = std::hypot(q.d, q.e);
  if (g > tol.slope) {
    // Second derivative along the contour direction; negative across a crest.
    const double cross_curv = 2.0 * (q.a * q.e * q.e - q.c * q.d * q.e + q.b * q.d * q.d) / (g * g);
    if (cross_curv <= -tol.curvature) return MorphClass::Ridge;
    if (cross_curv >= tol.curvature) return MorphClass::Channel;
    return MorphClass::Planar;
  }
  const double mean = q.a + q.b;
  const double radius = std::hypot(q.a - q.b, q.c);
  const double lo = mean - radius;
  const double hi = mean + radius;
  const double t = tol.curvature;
  if (hi <= -t) return MorphClass::Peak;
  if (lo >= t) return MorphClass::Pit;
  if (lo <= -t && hi >= t) return MorphClass::Pass;
  if (lo <= -t && std::abs(hi) < t) return MorphClass::Ridge;
  if (hi >= t && std::abs(lo) < t) return MorphClass::Channel;
  return MorphClass::Planar;
}

// Per-node class; NoData where the 3x3 window is incomplete.
inline std::vector<MorphClass> classify_field(const MeasureField& field, const Tolerances& tol) {
  const Grid& g = field.grid;
  std::vector<MorphClass> out(g.size(), MorphClass::NoData);
  for (std::size_t row = 0; row < g.n_rows; ++row)
    for (std::size_t col = 0; col < g.n_cols; ++col)
      if (auto q = fit_quadratic(field, col, row)) out[g.index(col, row)] = classify_node(*q, tol);
  return out;
}

struct RidgeSet {
  std::vector<std::size_t> nodes;                 // grid indices, ascending
  std::vector<std::vector<std::size_t>> polylines;  // 8-connected chains, >= 2 nodes
  bool skeleton{false};
};

namespace detail {

// Neighbour offsets in preference order: E, N, W, S, NE, NW, SW, SE.
inline constexpr std::array<std::array<int, 2>, 8> kNeighbours = {
    {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};

}  // namespace detail

// Links ridge nodes into chains. Chains start at endpoints (one ridge
// neighbour) before interior nodes, and each step takes the unvisited
// neighbour with the smallest turn, never turning more than 90 degrees.
inline std::vector<std::vector<std::size_t>> link_ridges(const Grid& grid, const std::vector<bool>& is_ridge) {
  std::vector<bool> used(grid.size(), false);
  const auto n_cols = static_cast<long>(grid.n_cols);
  const auto n_rows = static_cast<long>(grid.n_rows);

  auto neighbour = [&](std::size_t idx, int k) -> long {
    const long c = static_cast<long>(grid.col(idx)) + detail::kNeighbours[k][0];
    const long r = static_cast<long>(grid.row(idx)) + detail::kNeighbours[k][1];
    if (c < 0 || r < 0 || c >= n_cols || r >= n_rows) return -1;
    const auto j = static_cast<std::size_t>(r * n_cols + c);
    return is_ridge[j] ? static_cast<long>(j) : -1;
  };
  auto degree = [&](std::size_t idx) {
    int n = 0;
    for (int k = 0; k < 8; ++k) n += neighbour(idx, k) >= 0;
    return n;
  };

  std::vector<std::vector<std::size_t>> chains;
  auto trace = [&](std::size_t start) {
    std::vector<std::size_t> chain{start};
    used[start] = true;
    int heading = -1;
    std::size_t at = start;
    for (;;) {
      int pick = -1;
      double best_turn = 1e9;
      for (int k = 0; k < 8; ++k) {
        const long j = neighbour(at, k);
        if (j < 0 || used[static_cast<std::size_t>(j)]) continue;
        double turn = 0.0;
        if (heading >= 0) {
          const auto& h = detail::kNeighbours[heading];
          const auto& v = detail::kNeighbours[k];
          const double cosang = (h[0] * v[0] + h[1] * v[1]) / (std::hypot(h[0], h[1]) * std::hypot(v[0], v[1]));
          turn = std::acos(std::clamp(cosang, -1.0, 1.0));
          if (turn > std::numbers::pi / 2 + 1e-9) continue;
        }
        if (turn < best_turn - 1e-12) {
          best_turn = turn;
          pick = k;
        }
      }
      if (pick < 0) break;
      at = static_cast<std::size_t>(neighbour(at, pick));
      used[at] = true;
      chain.push_back(at);
      heading = pick;
    }
    if (chain.size() >= 2) chains.push_back(std::move(chain));
  };

  for (std::size_t i = 0; i < grid.size(); ++i)
    if (is_ridge[i] && !used[i] && degree(i) <= 1) trace(i);
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (is_ridge[i] && !used[i]) trace(i);
  return chains;
}

inline RidgeSet extract_ridges(const MeasureField& field, const Tolerances& tol) {
  const Grid& g = field.grid;
  const std::vector<MorphClass> classes = classify_field(field, tol);
  if (std::all_of(classes.begin(), classes.end(), [](MorphClass m) { return m == MorphClass::NoData; }))
    throw Error("NO_WINDOW", "field has no complete 3x3 data window");

  RidgeSet out;
  std::vector<bool> is_ridge(g.size(), false);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (classes[i] == MorphClass::Ridge || classes[i] == MorphClass::Peak) {
      is_ridge[i] = true;
      out.nodes.push_back(i);
    }
  }
  out.polylines = link_ridges(g, is_ridge);
  return out;
}

inline RidgeSet extract_ridges(const MeasureField& field) {
  return extract_ridges(field, default_tolerances(field.grid.spacing));
}

// Medial-axis skeleton: ridges of the MRL (distance transform) field.
inline RidgeSet skeleton(const Scene& scene, const Grid& grid, const Tolerances& tol, const FieldOptions& options = {},
                         MeasureField* mrl_out = nullptr) {
  MeasureField mrl = compute_field(scene, grid, MeasureKind::Mrl, options);
  RidgeSet ridges = extract_ridges(mrl, tol);
  ridges.skeleton = true;
  if (mrl_out) *mrl_out = std::move(mrl);
  return ridges;
}

}  // namespace isofield
