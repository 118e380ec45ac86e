// isofield: isovist fields, lines of longest depth, ridges and skeletons.
//
// Exit codes: 0 success, 1 domain error, 2 I/O error, 64 usage error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "isofield/isofield.hpp"

namespace {

using namespace isofield;

constexpr int kExitDomain = 1;
constexpr int kExitIO = 2;
constexpr int kExitUsage = 64;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IO", "cannot open " + path, Error::Kind::IO);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("IO", "cannot write " + path, Error::Kind::IO);
  out << text;
  if (!out.flush()) throw Error("IO", "failed writing " + path, Error::Kind::IO);
}

struct RunConfig {
  std::string scene;
  double spacing{0.0};
  std::size_t n_rays{kDefaultRays};
  std::string measure{"mdl"};
  std::optional<double> t_slope;
  std::optional<double> t_curv;
  std::string out;
  std::string field;
  std::vector<std::string> lines;
  std::string render;
  std::string csv;
  std::string ramp{"gray"};
  double cell_px{10.0};
  std::size_t cap{kDefaultClusteringCap};
  std::size_t threads{1};
  std::string rank_by{"mdl"};
  bool keep_field{false};
};

Tolerances tolerances(const RunConfig& cfg, double spacing) {
  Tolerances tol = default_tolerances(spacing);
  if (cfg.t_slope) tol.slope = *cfg.t_slope;
  if (cfg.t_curv) tol.curvature = *cfg.t_curv;
  if (!(tol.slope > 0.0) || !(tol.curvature > 0.0)) throw Error("BAD_TOLERANCE", "tolerances must be positive");
  return tol;
}

FieldOptions field_options(const RunConfig& cfg) { return {cfg.n_rays, cfg.cap, cfg.threads}; }

std::string sibling_path(const std::string& out, const std::string& suffix) {
  std::filesystem::path p(out);
  p.replace_extension();
  return p.string() + suffix;
}

int cmd_field(const RunConfig& cfg) {
  const auto kind = parse_measure(cfg.measure);
  if (!kind) throw Error("BAD_MEASURE", "unknown measure " + cfg.measure);
  const Scene scene = load_scene(read_file(cfg.scene));
  const Grid grid = make_grid(scene, cfg.spacing);
  const MeasureField field = compute_field(scene, grid, *kind, field_options(cfg));
  write_file(cfg.out, export_raster(field));
  if (!cfg.csv.empty()) write_file(cfg.csv, export_csv(field));
  if (!cfg.render.empty()) write_file(cfg.render, render_svg(scene, &field, {}, {cfg.cell_px, cfg.ramp}));
  return 0;
}

int cmd_rope(const RunConfig& cfg) {
  const auto rank_by = parse_measure(cfg.rank_by);
  if (!rank_by) throw Error("BAD_MEASURE", "unknown ranking measure " + cfg.rank_by);
  const Scene scene = load_scene(read_file(cfg.scene));
  const Grid grid = make_grid(scene, cfg.spacing);
  const LineNetwork net = rope_extract(scene, grid, {cfg.n_rays, cfg.threads, *rank_by});
  write_file(cfg.out, export_lines(network_features(net)));
  std::cout << "lines=" << net.lines.size() << " covered=" << net.covered_count() << "/" << grid.masked_count() << "\n";
  return 0;
}

int cmd_ridges(const RunConfig& cfg) {
  const MeasureField field = import_raster(read_file(cfg.field));
  const RidgeSet ridges = extract_ridges(field, tolerances(cfg, field.grid.spacing));
  write_file(cfg.out, export_lines(ridge_features(ridges, field)));
  return 0;
}

int cmd_skeleton(const RunConfig& cfg) {
  const Scene scene = load_scene(read_file(cfg.scene));
  const Grid grid = make_grid(scene, cfg.spacing);
  MeasureField mrl;
  const RidgeSet ridges = skeleton(scene, grid, tolerances(cfg, grid.spacing), field_options(cfg), &mrl);
  write_file(cfg.out, export_lines(ridge_features(ridges, mrl)));
  if (cfg.keep_field) write_file(sibling_path(cfg.out, ".mrl.asc"), export_raster(mrl));
  return 0;
}

int cmd_render(const RunConfig& cfg) {
  const Scene scene = load_scene(read_file(cfg.scene));
  std::optional<MeasureField> field;
  if (!cfg.field.empty()) field = import_raster(read_file(cfg.field));
  std::vector<std::vector<LineFeature>> layers;
  for (const auto& path : cfg.lines) layers.push_back(parse_lines(read_file(path)));
  write_file(cfg.out, render_svg(scene, field ? &*field : nullptr, layers, {cfg.cell_px, cfg.ramp}));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isofield: isovist fields and open-space structure extraction"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_scene = [&](CLI::App* sub) { sub->add_option("--scene", cfg.scene, "scene JSON file")->required(); };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--spacing", cfg.spacing, "viewpoint grid spacing")->required()->check(CLI::PositiveNumber);
    sub->add_option("--n-rays", cfg.n_rays, "rays per viewpoint (even, >= 8)")
        ->default_val(kDefaultRays)
        ->check(CLI::Range(std::size_t{8}, std::size_t{1} << 24));
    sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->default_val(1);
  };
  auto add_tolerances = [&](CLI::App* sub) {
    sub->add_option("--t-slope", cfg.t_slope, "slope tolerance (default 0.6)");
    sub->add_option("--t-curv", cfg.t_curv, "curvature tolerance (default 0.05 / spacing)");
  };
  auto add_out = [&](CLI::App* sub, const char* what) { sub->add_option("--out", cfg.out, what)->required(); };
  auto add_render_opts = [&](CLI::App* sub) {
    sub->add_option("--cell-px", cfg.cell_px, "pixels per scene unit")->default_val(10.0)->check(CLI::PositiveNumber);
    sub->add_option("--ramp", cfg.ramp, "gray | gray-inverted")->default_val("gray");
  };

  auto* field = app.add_subcommand("field", "compute a measure field and write an ASCII grid");
  add_scene(field);
  add_grid(field);
  field->add_option("--measure", cfg.measure,
                    "area|perimeter|mrl|mdl|mean-radial|convexity|compactness|drift|clustering")
      ->default_val("mdl");
  field->add_option("--cap", cfg.cap, "clustering peer cap")->default_val(kDefaultClusteringCap)->check(CLI::Range(2, 1 << 20));
  field->add_option("--csv", cfg.csv, "also write x,y,value CSV");
  field->add_option("--render", cfg.render, "also write an SVG render");
  add_render_opts(field);
  add_out(field, "output raster (.asc)");

  auto* rope = app.add_subcommand("rope", "extract the network of lines of longest depth");
  add_scene(rope);
  add_grid(rope);
  rope->add_option("--rank-by", cfg.rank_by, "ranking measure")->default_val("mdl");
  add_out(rope, "output line features (.geojson)");

  auto* ridges = app.add_subcommand("ridges", "extract ridge polylines from a raster");
  ridges->add_option("--field", cfg.field, "input raster (.asc)")->required();
  add_tolerances(ridges);
  add_out(ridges, "output line features (.geojson)");

  auto* skel = app.add_subcommand("skeleton", "medial-axis skeleton as ridges of the MRL field");
  add_scene(skel);
  add_grid(skel);
  add_tolerances(skel);
  skel->add_flag("--keep-field", cfg.keep_field, "also write the MRL raster next to --out");
  add_out(skel, "output line features (.geojson)");

  auto* render = app.add_subcommand("render", "write an SVG of a scene, raster and line layers");
  add_scene(render);
  render->add_option("--field", cfg.field, "raster layer (.asc)");
  render->add_option("--lines", cfg.lines, "line layer(s) (.geojson)");
  add_render_opts(render);
  add_out(render, "output SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cfg.n_rays % 2 != 0) {
      std::cerr << "--n-rays must be even\n";
      return kExitUsage;
    }
    if (*field) return cmd_field(cfg);
    if (*rope) return cmd_rope(cfg);
    if (*ridges) return cmd_ridges(cfg);
    if (*skel) return cmd_skeleton(cfg);
    if (*render) return cmd_render(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == Error::Kind::IO ? kExitIO : kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
