#pragma once

// Rank-and-overlap elimination: greedy selection of the viewpoints with the
// longest diametric chords, each one retiring every viewpoint inside its own
// isovist. The chords of the selected viewpoints form the network of lines of
// longest depth; the viewpoints themselves form an art-gallery guard set.
//
// The elimination rule (containment in the selected isovist) is a chosen
// reading of the method: it is the weakest rule under which the generators are
// guaranteed to see every grid node.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "isofield/field.hpp"
#include "isofield/isovist.hpp"
#include "isofield/scene.hpp"

namespace isofield {

struct DepthLine {
  Point generator;
  Segment chord;
  double mdl{0.0};
  std::size_t rank{0};  // 1-based selection order
  std::size_t node{0};  // grid index of the generator
};

struct LineNetwork {
  std::vector<DepthLine> lines;
  // Rank of the first line whose isovist covers each node; 0 for unmasked.
  std::vector<std::size_t> covered;

  std::size_t covered_count() const {
    return static_cast<std::size_t>(std::count_if(covered.begin(), covered.end(), [](std::size_t r) { return r > 0; }));
  }
};

struct RopeOptions {
  std::size_t n_rays{kDefaultRays};
  std::size_t threads{1};
  // Ordering measure; anything but MDL is for experimentation.
  MeasureKind rank_by{MeasureKind::Mdl};
};

inline LineNetwork rope_extract(const Scene& scene, const Grid& grid, const RopeOptions& options = {}) {
  check_ray_count(options.n_rays);
  if (options.rank_by == MeasureKind::Clustering) throw Error("BAD_MEASURE", "cannot rank by clustering");
  const std::vector<std::size_t> nodes = grid.masked_indices();
  if (nodes.empty()) throw Error("NO_NODES", "grid has no masked nodes");
  const auto dirs = ray_directions(options.n_rays);

  struct Candidate {
    std::int64_t key{0};  // ranking value at 1e-9 resolution
    MeasureRecord record;
  };
  std::vector<Candidate> cand(nodes.size());
  detail::parallel_for(nodes.size(), options.threads, [&](std::size_t k) {
    const RadialProfile profile = radial_profile(scene, grid.node(nodes[k]), dirs);
    cand[k].record = measures(profile, dirs);
    cand[k].key = std::llround(measure_value(cand[k].record, options.rank_by) * 1e9);
  });

  // Masked indices are already in (row, col) order, so a stable sort on the
  // key alone breaks ties by grid order.
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cand[a].key > cand[b].key; });

  LineNetwork net;
  net.covered.assign(grid.size(), 0);
  std::vector<bool> active(nodes.size(), true);
  std::size_t remaining = nodes.size();
  for (std::size_t pos = 0; pos < order.size() && remaining > 0; ++pos) {
    const std::size_t k = order[pos];
    if (!active[k]) continue;
    const Point gen = grid.node(nodes[k]);
    const MeasureRecord& rec = cand[k].record;
    const std::size_t rank = net.lines.size() + 1;
    net.lines.push_back({gen, rec.mdl_chord, rec.mdl, rank, nodes[k]});

    const IsovistPolygon iso = isovist_polygon(radial_profile(scene, gen, dirs), dirs);
    active[k] = false;
    net.covered[nodes[k]] = rank;
    --remaining;
    for (std::size_t m = 0; m < nodes.size(); ++m) {
      if (!active[m] || !iso.contains(grid.node(nodes[m]))) continue;
      active[m] = false;
      net.covered[nodes[m]] = rank;
      --remaining;
    }
  }
  return net;
}

}  // namespace isofield
