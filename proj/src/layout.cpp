#include "ucs/layout.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "ucs/error.hpp"

namespace ucs {

void LayoutConfig::validate() const {
  if (iterations < 1) throw ValidationError("layout iterations must be >= 1");
  if (!(area > 0.0)) throw ValidationError("layout area must be positive");
  if (!(initial_temperature > 0.0)) throw ValidationError("initial temperature must be positive");
  if (!(cooling > 0.0 && cooling < 1.0)) throw ValidationError("cooling must lie in (0, 1)");
}

NodeCoordinates initial_placement(std::size_t vertex_count, const LayoutConfig& cfg) {
  // mt19937_64 output is fixed by the standard; the distributions are not,
  // so the unit interval mapping is done by hand.
  std::mt19937_64 rng(cfg.seed);
  const double side = std::sqrt(cfg.area);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  NodeCoordinates out;
  out.positions.resize(vertex_count);
  for (auto& p : out.positions) {
    p.x = (unit() - 0.5) * side;
    p.y = (unit() - 0.5) * side;
  }
  return out;
}

NodeCoordinates fruchterman_reingold(const Graph& g, const LayoutConfig& cfg,
                                     std::vector<double>* sweep_displacement) {
  cfg.validate();
  const std::size_t nv = g.vertex_count();
  if (nv == 0) throw ValidationError("cannot lay out an empty graph");
  NodeCoordinates coords = initial_placement(nv, cfg);
  auto& pos = coords.positions;

  const double half = 0.5 * std::sqrt(cfg.area);
  const double k = std::sqrt(cfg.area / static_cast<double>(nv));
  const double k2 = k * k;
  const double min_dist = 1e-9 * k;
  double temperature = cfg.initial_temperature;
  std::vector<Point> disp(nv);
  if (sweep_displacement) sweep_displacement->clear();

  for (int sweep = 0; sweep < cfg.iterations; ++sweep) {
    std::fill(disp.begin(), disp.end(), Point{});
    for (std::size_t i = 0; i < nv; ++i) {
      for (std::size_t j = i + 1; j < nv; ++j) {
        double dx = pos[i].x - pos[j].x;
        double dy = pos[i].y - pos[j].y;
        double d = std::hypot(dx, dy);
        if (d < min_dist) {
          // Coincident vertices: separate along x, lower index to the right.
          dx = min_dist;
          dy = 0.0;
          d = min_dist;
        }
        const double f = k2 / d;
        disp[i].x += dx / d * f;
        disp[i].y += dy / d * f;
        disp[j].x -= dx / d * f;
        disp[j].y -= dy / d * f;
      }
    }
    for (const auto& e : g.edges()) {
      const double dx = pos[e.u].x - pos[e.v].x;
      const double dy = pos[e.u].y - pos[e.v].y;
      const double d = std::hypot(dx, dy);
      if (d < min_dist) continue;
      const double f = d * d / k;
      disp[e.u].x -= dx / d * f;
      disp[e.u].y -= dy / d * f;
      disp[e.v].x += dx / d * f;
      disp[e.v].y += dy / d * f;
    }

    double moved = 0.0;
    for (std::size_t i = 0; i < nv; ++i) {
      const double len = std::hypot(disp[i].x, disp[i].y);
      if (len <= 0.0) continue;
      const double step = std::min(len, temperature);
      const Point before = pos[i];
      pos[i].x = std::clamp(pos[i].x + disp[i].x / len * step, -half, half);
      pos[i].y = std::clamp(pos[i].y + disp[i].y / len * step, -half, half);
      moved += std::hypot(pos[i].x - before.x, pos[i].y - before.y);
    }
    if (sweep_displacement) sweep_displacement->push_back(moved);
    temperature *= cfg.cooling;
  }
  return coords;
}

namespace {

std::string fixed3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace

std::string render_svg(const Graph& g, const NodeCoordinates& coords,
                       std::span<const EdgeIndex> highlight, const SvgStyle& style) {
  const std::size_t nv = g.vertex_count();
  if (coords.positions.size() != nv) {
    throw DimensionError("coordinates cover " + std::to_string(coords.positions.size()) +
                         " vertices, graph has " + std::to_string(nv));
  }
  std::vector<bool> marked(g.edge_count(), false);
  for (EdgeIndex i : highlight) {
    if (i >= g.edge_count()) throw DimensionError("highlight edge " + std::to_string(i));
    marked[i] = true;
  }

  // Fit the drawing to the canvas, preserving aspect ratio.
  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  if (nv > 0) {
    min_x = max_x = coords.positions[0].x;
    min_y = max_y = coords.positions[0].y;
    for (const auto& p : coords.positions) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  const double extent = std::max({max_x - min_x, max_y - min_y, 1e-12});
  const double usable = style.canvas - 2.0 * style.margin;
  const double scale = usable / extent;
  const double off_x = style.margin + 0.5 * (usable - (max_x - min_x) * scale);
  const double off_y = style.margin + 0.5 * (usable - (max_y - min_y) * scale);
  auto sx = [&](double x) { return fixed3(off_x + (x - min_x) * scale); };
  // SVG y grows downward.
  auto sy = [&](double y) { return fixed3(off_y + (max_y - y) * scale); };

  const std::string size = fixed3(style.canvas);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + size +
         "\" height=\"" + size + "\" viewBox=\"0 0 " + size + " " + size + "\">\n";
  out += "<style>\n";
  out += "line { stroke: #999999; stroke-opacity: 0.35; stroke-width: 1; }\n";
  out += "line.highlight { stroke: #1f3a93; stroke-opacity: 1; stroke-width: 1.5; }\n";
  out += "circle { fill: #222222; }\n";
  out += "</style>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto emit_edge = [&](const Edge& e, bool hl) {
    const Point& a = coords.positions[e.u];
    const Point& b = coords.positions[e.v];
    out += "<line";
    if (hl) out += " class=\"highlight\"";
    out += " x1=\"" + sx(a.x) + "\" y1=\"" + sy(a.y) + "\" x2=\"" + sx(b.x) + "\" y2=\"" +
           sy(b.y) + "\"/>\n";
  };
  for (EdgeIndex i = 0; i < g.edge_count(); ++i) {
    if (!marked[i]) emit_edge(g.edge(i), false);
  }
  for (EdgeIndex i = 0; i < g.edge_count(); ++i) {
    if (marked[i]) emit_edge(g.edge(i), true);
  }
  const std::string r = fixed3(style.node_radius);
  for (std::size_t v = 0; v < nv; ++v) {
    out += "<circle cx=\"" + sx(coords.positions[v].x) + "\" cy=\"" + sy(coords.positions[v].y) +
           "\" r=\"" + r + "\"><title>" + std::to_string(g.original_ids()[v]) +
           "</title></circle>\n";
  }
  out += "</svg>\n";
  return out;
}

nlohmann::json coordinates_json(const Graph& g, const NodeCoordinates& coords) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t v = 0; v < coords.positions.size(); ++v) {
    out[std::to_string(g.original_ids()[v])] = {coords.positions[v].x, coords.positions[v].y};
  }
  return out;
}

}  // namespace ucs
