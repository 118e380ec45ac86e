#pragma once

// Line features as a JSON feature collection of LineString geometries.

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "isofield/field.hpp"
#include "isofield/morphology.hpp"
#include "isofield/rope.hpp"
#include "isofield/scene.hpp"

namespace isofield {

struct LineFeature {
  std::vector<Point> coords;
  nlohmann::ordered_json properties = nlohmann::ordered_json::object();
};

namespace detail {

inline double round6(double v) {
  const double r = std::round(v * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;  // no "-0"
}

}  // namespace detail

// Coordinates and floating-point properties are rounded to 6 decimals.
inline std::string export_lines(const std::vector<LineFeature>& features) {
  nlohmann::ordered_json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = nlohmann::ordered_json::array();
  for (const auto& f : features) {
    nlohmann::ordered_json coords = nlohmann::ordered_json::array();
    for (const Point& p : f.coords) coords.push_back({detail::round6(p.x), detail::round6(p.y)});
    nlohmann::ordered_json props = f.properties;
    for (auto& [key, value] : props.items())
      if (value.is_number_float()) value = detail::round6(value.get<double>());
    nlohmann::ordered_json feature;
    feature["type"] = "Feature";
    feature["geometry"] = {{"type", "LineString"}, {"coordinates", coords}};
    feature["properties"] = props;
    doc["features"].push_back(feature);
  }
  return doc.dump(1) + "\n";
}

inline std::vector<LineFeature> parse_lines(const std::string& text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("PARSE", e.what(), Error::Kind::Parse);
  }
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" || !doc.contains("features") ||
      !doc["features"].is_array())
    throw Error("PARSE", "expected a FeatureCollection", Error::Kind::Parse);
  std::vector<LineFeature> out;
  for (const auto& f : doc["features"]) {
    const auto& geom = f.at("geometry");
    if (geom.value("type", "") != "LineString") throw Error("PARSE", "only LineString geometries are supported", Error::Kind::Parse);
    LineFeature lf;
    for (const auto& c : geom.at("coordinates")) lf.coords.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
    if (f.contains("properties") && f["properties"].is_object()) lf.properties = f["properties"];
    out.push_back(std::move(lf));
  }
  return out;
}

inline std::vector<LineFeature> network_features(const LineNetwork& net) {
  std::vector<LineFeature> out;
  for (const auto& line : net.lines) {
    LineFeature f;
    f.coords = {line.chord.a, line.chord.b};
    f.properties["rank"] = line.rank;
    f.properties["mdl"] = line.mdl;
    f.properties["generator_x"] = line.generator.x;
    f.properties["generator_y"] = line.generator.y;
    out.push_back(std::move(f));
  }
  return out;
}

inline std::vector<LineFeature> ridge_features(const RidgeSet& ridges, const MeasureField& field) {
  std::vector<LineFeature> out;
  for (const auto& chain : ridges.polylines) {
    LineFeature f;
    double sum = 0.0;
    for (std::size_t idx : chain) {
      f.coords.push_back(field.grid.node(idx));
      sum += field.values[idx];
    }
    f.properties["nodes"] = chain.size();
    f.properties["mean_value"] = sum / static_cast<double>(chain.size());
    f.properties["kind"] = ridges.skeleton ? "skeleton" : "ridge";
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace isofield
