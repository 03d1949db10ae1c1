#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ucs/graph.hpp"

namespace ucs {

struct LayoutConfig {
  int iterations = 500;
  double area = 1.0;
  double initial_temperature = 0.1;  // 0.1 * sqrt(area)
  double cooling = 0.99;
  std::uint64_t seed = 0;

  /// Throws ValidationError unless iterations >= 1, area > 0,
  /// initial_temperature > 0 and 0 < cooling < 1.
  void validate() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Positions indexed by vertex id, inside the square frame of side sqrt(area)
/// centred on the origin.
struct NodeCoordinates {
  std::vector<Point> positions;
};

/// Seeded uniform placement in the layout frame.
NodeCoordinates initial_placement(std::size_t vertex_count, const LayoutConfig& cfg);

/// Fruchterman-Reingold spring embedding. With k = sqrt(area/|V|), every pair
/// repels with k^2/d and every edge attracts with d^2/k; each sweep moves a
/// vertex by at most the current temperature, which is then multiplied by
/// `cooling`. If `sweep_displacement` is given it receives the summed
/// displacement length of every sweep.
NodeCoordinates fruchterman_reingold(const Graph& g, const LayoutConfig& cfg,
                                     std::vector<double>* sweep_displacement = nullptr);

struct SvgStyle {
  double canvas = 800.0;
  double margin = 20.0;
  double node_radius = 3.0;
};

/// SVG 1.1 drawing. Each edge is one <line>; plain edges come first, then the
/// highlighted ones with class "highlight". Nodes are <circle> elements drawn
/// on top. Output bytes depend only on the inputs.
std::string render_svg(const Graph& g, const NodeCoordinates& coords,
                       std::span<const EdgeIndex> highlight = {}, const SvgStyle& style = {});

/// {"<original id>": [x, y], ...}
nlohmann::json coordinates_json(const Graph& g, const NodeCoordinates& coords);

}  // namespace ucs
