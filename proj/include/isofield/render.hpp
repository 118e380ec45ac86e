#pragma once

// Static SVG rendering of a scene with an optional field raster underneath and
// line layers on top. Field cells are gray-ramped with light meaning high.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "isofield/field.hpp"
#include "isofield/scene.hpp"
#include "isofield/vector_io.hpp"

namespace isofield {

struct RenderOptions {
  double px_per_unit{10.0};
  std::string ramp{"gray"};  // "gray" (light = high) or "gray-inverted"
};

// Throws GRID_MISMATCH unless `field` sits on the grid make_grid() would build
// for `scene` at the field's cell size.
inline void check_grid_matches(const Scene& scene, const Grid& grid) {
  const auto [lo, hi] = scene.bounding_box();
  const double tol = 1e-6 * std::max(1.0, grid.spacing);
  const auto cols = static_cast<std::size_t>(std::max(1.0, std::ceil((hi.x - lo.x) / grid.spacing - 1e-9)));
  const auto rows = static_cast<std::size_t>(std::max(1.0, std::ceil((hi.y - lo.y) / grid.spacing - 1e-9)));
  if (std::abs(grid.origin.x - lo.x) > tol || std::abs(grid.origin.y - lo.y) > tol || grid.n_cols != cols ||
      grid.n_rows != rows)
    throw Error("GRID_MISMATCH", "raster extent does not match the scene grid");
}

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace detail

inline std::string render_svg(const Scene& scene, const MeasureField* field, std::span<const std::vector<LineFeature>> layers,
                              const RenderOptions& options = {}) {
  if (options.ramp != "gray" && options.ramp != "gray-inverted")
    throw Error("BAD_RAMP", "unknown colour ramp " + options.ramp);
  if (field) check_grid_matches(scene, field->grid);

  const auto [lo, hi] = scene.bounding_box();
  const double k = options.px_per_unit;
  const double width = (hi.x - lo.x) * k;
  const double height = (hi.y - lo.y) * k;
  auto X = [&](double x) { return detail::num((x - lo.x) * k); };
  auto Y = [&](double y) { return detail::num((hi.y - y) * k); };
  auto ring_path = [&](const Ring& ring) {
    std::string d;
    for (std::size_t i = 0; i < ring.size(); ++i) d += (i ? " L" : "M") + X(ring[i].x) + "," + Y(ring[i].y);
    return d + " Z";
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << detail::num(width) << "\" height=\""
      << detail::num(height) << "\" viewBox=\"0 0 " << detail::num(width) << " " << detail::num(height) << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << detail::num(width) << "\" height=\"" << detail::num(height)
      << "\" fill=\"#202020\"/>\n";
  svg << "<path d=\"" << ring_path(scene.bounds()) << "\" fill=\"#ffffff\"/>\n";

  if (field) {
    double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
    for (std::size_t i = 0; i < field->grid.size(); ++i) {
      if (!field->grid.mask[i]) continue;
      vmin = std::min(vmin, field->values[i]);
      vmax = std::max(vmax, field->values[i]);
    }
    const double s = field->grid.spacing;
    svg << "<g id=\"field\" shape-rendering=\"crispEdges\">\n";
    for (std::size_t i = 0; i < field->grid.size(); ++i) {
      if (!field->grid.mask[i]) continue;
      double t = vmax > vmin ? (field->values[i] - vmin) / (vmax - vmin) : 1.0;
      if (options.ramp == "gray-inverted") t = 1.0 - t;
      const int level = static_cast<int>(std::lround(40.0 + 215.0 * t));
      char colour[8];
      std::snprintf(colour, sizeof colour, "#%02x%02x%02x", level, level, level);
      const Point c = field->grid.node(i);
      svg << "<rect x=\"" << X(c.x - 0.5 * s) << "\" y=\"" << Y(c.y + 0.5 * s) << "\" width=\"" << detail::num(s * k)
          << "\" height=\"" << detail::num(s * k) << "\" fill=\"" << colour << "\"/>\n";
    }
    svg << "</g>\n";
  }

  svg << "<g id=\"obstacles\" fill=\"#202020\">\n";
  for (const auto& ring : scene.obstacles()) svg << "<path d=\"" << ring_path(ring) << "\"/>\n";
  svg << "</g>\n";
  svg << "<path d=\"" << ring_path(scene.bounds()) << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

  static constexpr const char* kStrokes[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd"};
  for (std::size_t l = 0; l < layers.size(); ++l) {
    svg << "<g id=\"lines" << l << "\" fill=\"none\" stroke=\"" << kStrokes[l % 5] << "\" stroke-width=\"2\">\n";
    for (const auto& f : layers[l]) {
      if (f.coords.empty()) continue;
      svg << "<polyline points=\"";
      for (std::size_t i = 0; i < f.coords.size(); ++i) svg << (i ? " " : "") << X(f.coords[i].x) << "," << Y(f.coords[i].y);
      svg << "\"/>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace isofield
