#pragma once

// Viewpoint grids and measure fields, plus ESRI ASCII grid and CSV I/O.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "isofield/isovist.hpp"
#include "isofield/scene.hpp"

namespace isofield {

inline constexpr double kNoData = -9999.0;

// Cell-centred raster. Row 0 is the southernmost row; nodes are indexed
// row-major from the lower-left corner.
struct Grid {
  Point origin;
  double spacing{1.0};
  std::size_t n_cols{0};
  std::size_t n_rows{0};
  std::vector<bool> mask;

  std::size_t size() const { return n_cols * n_rows; }
  std::size_t index(std::size_t col, std::size_t row) const { return row * n_cols + col; }
  std::size_t col(std::size_t index) const { return index % n_cols; }
  std::size_t row(std::size_t index) const { return index / n_cols; }

  Point node(std::size_t col, std::size_t row) const {
    return {origin.x + (static_cast<double>(col) + 0.5) * spacing, origin.y + (static_cast<double>(row) + 0.5) * spacing};
  }
  Point node(std::size_t index) const { return node(col(index), row(index)); }

  std::size_t masked_count() const { return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true)); }

  std::vector<std::size_t> masked_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) out.push_back(i);
    return out;
  }
};

inline Grid make_grid(const Scene& scene, double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw Error("BAD_SPACING", "grid spacing must be positive");
  const auto [lo, hi] = scene.bounding_box();
  Grid grid;
  grid.origin = lo;
  grid.spacing = spacing;
  grid.n_cols = static_cast<std::size_t>(std::max(1.0, std::ceil((hi.x - lo.x) / spacing - 1e-9)));
  grid.n_rows = static_cast<std::size_t>(std::max(1.0, std::ceil((hi.y - lo.y) / spacing - 1e-9)));
  grid.mask.assign(grid.size(), false);
  for (std::size_t i = 0; i < grid.size(); ++i) grid.mask[i] = scene.contains(grid.node(i));
  if (grid.masked_count() == 0) throw Error("NO_NODES", "no grid node lies inside the open space");
  return grid;
}

struct MeasureField {
  Grid grid;
  std::optional<MeasureKind> kind;
  std::vector<double> values;  // NaN where the mask is false

  double at(std::size_t col, std::size_t row) const { return values[grid.index(col, row)]; }
  bool has(std::size_t col, std::size_t row) const { return grid.mask[grid.index(col, row)]; }
};

namespace detail {

// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware).
// Work is split into interleaved stripes; results must be written by index.
inline void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

struct FieldOptions {
  std::size_t n_rays{kDefaultRays};
  std::size_t clustering_cap{kDefaultClusteringCap};
  std::size_t threads{1};
};

inline double measure_value(const MeasureRecord& m, MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Area: return m.area;
    case MeasureKind::Perimeter: return m.perimeter;
    case MeasureKind::Mrl: return m.mrl;
    case MeasureKind::Mdl: return m.mdl;
    case MeasureKind::MeanRadial: return m.mean_radial;
    case MeasureKind::Convexity: return m.convexity;
    case MeasureKind::Compactness: return m.compactness;
    case MeasureKind::Drift: return m.drift;
    case MeasureKind::Clustering: break;
  }
  throw Error("BAD_MEASURE", "measure needs scene context: " + std::string(to_string(kind)));
}

// Evaluates `kind` at every masked node. MRL uses the refined minimum radial
// length so the field tracks the exact distance transform; CLUSTERING uses
// every masked node as the peer set.
inline MeasureField compute_field(const Scene& scene, const Grid& grid, MeasureKind kind,
                                  const FieldOptions& options = {}) {
  check_ray_count(options.n_rays);
  MeasureField field{grid, kind, std::vector<double>(grid.size(), std::numeric_limits<double>::quiet_NaN())};
  const std::vector<std::size_t> nodes = grid.masked_indices();
  const auto dirs = ray_directions(options.n_rays);

  std::vector<Point> peers;
  if (kind == MeasureKind::Clustering)
    for (std::size_t i : nodes) peers.push_back(grid.node(i));

  detail::parallel_for(nodes.size(), options.threads, [&](std::size_t k) {
    const std::size_t idx = nodes[k];
    const Point p = grid.node(idx);
    double value = 0.0;
    if (kind == MeasureKind::Clustering) {
      value = clustering_coefficient(scene, p, peers, options.clustering_cap);
    } else {
      const RadialProfile profile = radial_profile(scene, p, dirs);
      if (kind == MeasureKind::Mrl) {
        value = refined_min_radial(scene, profile);
      } else {
        value = measure_value(measures(profile, dirs), kind);
      }
    }
    field.values[idx] = value;
  });
  return field;
}

namespace detail {

inline std::string format_g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Shortest decimal form that round-trips, for header coordinates.
inline std::string format_exact(double v) {
  char buf[40];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace detail

inline std::string export_raster(const MeasureField& field) {
  const Grid& g = field.grid;
  std::ostringstream out;
  out << "ncols " << g.n_cols << "\n"
      << "nrows " << g.n_rows << "\n"
      << "xllcorner " << detail::format_exact(g.origin.x) << "\n"
      << "yllcorner " << detail::format_exact(g.origin.y) << "\n"
      << "cellsize " << detail::format_exact(g.spacing) << "\n"
      << "NODATA_value -9999\n";
  for (std::size_t r = g.n_rows; r-- > 0;) {
    for (std::size_t c = 0; c < g.n_cols; ++c) {
      if (c) out << ' ';
      const double v = field.values[g.index(c, r)];
      out << (g.mask[g.index(c, r)] ? detail::format_g6(v) : std::string("-9999"));
    }
    out << '\n';
  }
  return out.str();
}

inline MeasureField import_raster(const std::string& text, std::optional<MeasureKind> kind = std::nullopt) {
  std::istringstream in(text);
  std::optional<double> ncols, nrows, xll, yll, cellsize;
  bool centre_x = false, centre_y = false;
  double nodata = kNoData;
  auto fail = [](const std::string& msg) { return Error("PARSE", msg, Error::Kind::Parse); };

  // Header: keyword/value pairs until the first numeric token.
  std::string key;
  std::streampos body_start = in.tellg();
  while (in >> key) {
    if (!key.empty() && (std::isdigit(static_cast<unsigned char>(key[0])) || key[0] == '-' || key[0] == '+' || key[0] == '.')) {
      break;
    }
    std::string lower(key);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    double value = 0.0;
    if (!(in >> value)) throw fail("header value missing for " + key);
    if (lower == "ncols") ncols = value;
    else if (lower == "nrows") nrows = value;
    else if (lower == "xllcorner") xll = value;
    else if (lower == "yllcorner") yll = value;
    else if (lower == "xllcenter") { xll = value; centre_x = true; }
    else if (lower == "yllcenter") { yll = value; centre_y = true; }
    else if (lower == "cellsize") cellsize = value;
    else if (lower == "nodata_value") nodata = value;
    else throw fail("unknown header key " + key);
    body_start = in.tellg();
  }
  if (!ncols || !nrows || !xll || !yll || !cellsize) throw fail("header needs ncols, nrows, xllcorner, yllcorner, cellsize");
  if (*ncols < 1 || *nrows < 1 || *ncols != std::floor(*ncols) || *nrows != std::floor(*nrows) || !(*cellsize > 0.0))
    throw fail("bad raster dimensions");

  Grid grid;
  grid.spacing = *cellsize;
  grid.n_cols = static_cast<std::size_t>(*ncols);
  grid.n_rows = static_cast<std::size_t>(*nrows);
  grid.origin = {*xll - (centre_x ? 0.5 * grid.spacing : 0.0), *yll - (centre_y ? 0.5 * grid.spacing : 0.0)};
  grid.mask.assign(grid.size(), false);
  MeasureField field{grid, kind, std::vector<double>(grid.size(), std::numeric_limits<double>::quiet_NaN())};

  in.clear();
  in.seekg(body_start);
  std::string line;
  std::size_t row_seen = 0;
  while (std::getline(in, line)) {
    std::istringstream row_in(line);
    std::vector<double> row;
    std::string token;
    while (row_in >> token) {
      char* end = nullptr;
      const double v = std::strtod(token.c_str(), &end);
      if (end == token.c_str() || *end != '\0') throw fail("bad cell value '" + token + "'");
      row.push_back(v);
    }
    if (row.empty()) continue;
    if (row.size() != grid.n_cols)
      throw fail("row " + std::to_string(row_seen) + " has " + std::to_string(row.size()) + " values, expected " +
                 std::to_string(grid.n_cols));
    if (row_seen >= grid.n_rows) throw fail("more rows than nrows");
    const std::size_t r = grid.n_rows - 1 - row_seen;
    for (std::size_t c = 0; c < grid.n_cols; ++c) {
      if (row[c] == nodata) continue;
      field.grid.mask[grid.index(c, r)] = true;
      field.values[grid.index(c, r)] = row[c];
    }
    ++row_seen;
  }
  if (row_seen != grid.n_rows) throw fail("expected " + std::to_string(grid.n_rows) + " rows, got " + std::to_string(row_seen));
  return field;
}

// x,y,value per masked node, south to north then west to east.
inline std::string export_csv(const MeasureField& field) {
  std::ostringstream out;
  out << "x,y,value\n";
  for (std::size_t i = 0; i < field.grid.size(); ++i) {
    if (!field.grid.mask[i]) continue;
    const Point p = field.grid.node(i);
    out << detail::format_exact(p.x) << ',' << detail::format_exact(p.y) << ',' << detail::format_g6(field.values[i])
        << '\n';
  }
  return out.str();
}

}  // namespace isofield
