#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "test_util.hpp"
#include "ucs/error.hpp"
#include "ucs/layout.hpp"

namespace ucs {
namespace {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

TEST(Layout, SingleVertexStaysAtSeedPlacement) {
  LayoutConfig cfg;
  cfg.seed = 17;
  const auto placed = initial_placement(1, cfg);
  const auto laid = fruchterman_reingold(Graph(1, {}), cfg);
  EXPECT_EQ(laid.positions, placed.positions);
}

TEST(Layout, TwoVerticesSettleAtIdealLength) {
  for (std::uint64_t seed : {0u, 1u, 2u, 3u}) {
    LayoutConfig cfg;
    cfg.seed = seed;
    const auto c = fruchterman_reingold(Graph(2, {{0, 1, 1.0}}), cfg);
    const double k = std::sqrt(cfg.area / 2.0);
    EXPECT_NEAR(distance(c.positions[0], c.positions[1]), k, 0.05 * k) << "seed " << seed;
  }
}

TEST(Layout, TriangleIsEquilateral) {
  for (std::uint64_t seed : {0u, 5u, 9u}) {
    LayoutConfig cfg;
    cfg.seed = seed;
    const auto c = fruchterman_reingold(testing::triangle(), cfg);
    const double d01 = distance(c.positions[0], c.positions[1]);
    const double d02 = distance(c.positions[0], c.positions[2]);
    const double d12 = distance(c.positions[1], c.positions[2]);
    const double mean = (d01 + d02 + d12) / 3.0;
    for (double d : {d01, d02, d12}) EXPECT_NEAR(d, mean, 0.05 * mean);
    EXPECT_NEAR(mean, std::sqrt(cfg.area / 3.0), 0.05 * std::sqrt(cfg.area / 3.0));
  }
}

TEST(Layout, DeterministicAndInsideFrame) {
  testing::Rng rng(61);
  const Graph g = testing::random_connected_graph(rng, 30, 30, 60, false);
  LayoutConfig cfg;
  cfg.seed = 4;
  const auto a = fruchterman_reingold(g, cfg);
  const auto b = fruchterman_reingold(g, cfg);
  EXPECT_EQ(a.positions, b.positions);
  EXPECT_EQ(render_svg(g, a), render_svg(g, b));
  for (const auto& p : a.positions) {
    EXPECT_TRUE(std::isfinite(p.x) && std::isfinite(p.y));
    EXPECT_LE(std::abs(p.x), 0.5);
    EXPECT_LE(std::abs(p.y), 0.5);
  }
  cfg.seed = 5;
  EXPECT_NE(fruchterman_reingold(g, cfg).positions, a.positions);
}

// Near equilibrium vertices oscillate with amplitude close to the
// temperature, so single sweeps jitter by about the cooling rate; the trend is
// checked on 10-sweep window means over the final 10% of sweeps.
TEST(Layout, DisplacementTrendsDownInFinalSweeps) {
  testing::Rng rng(62);
  std::vector<Graph> graphs = {testing::triangle(), testing::k4()};
  for (int i = 0; i < 4; ++i) {
    graphs.push_back(testing::random_connected_graph(rng, 10, 40, 80, false));
  }
  for (const auto& g : graphs) {
    LayoutConfig cfg;
    std::vector<double> moved;
    fruchterman_reingold(g, cfg, &moved);
    ASSERT_EQ(moved.size(), 500u);
    double temperature = cfg.initial_temperature;
    for (double d : moved) {
      EXPECT_LE(d, static_cast<double>(g.vertex_count()) * temperature * (1.0 + 1e-12));
      temperature *= cfg.cooling;
    }
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t w = 450; w < 500; w += 10) {
      const double mean = std::accumulate(moved.begin() + w, moved.begin() + w + 10, 0.0) / 10.0;
      EXPECT_LE(mean, previous) << "|V|=" << g.vertex_count() << " window " << w;
      previous = mean;
    }
  }
}

TEST(Layout, ConfigValidation) {
  LayoutConfig cfg;
  cfg.cooling = 1.0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = {};
  cfg.iterations = 0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = {};
  cfg.area = -1.0;
  EXPECT_THROW(fruchterman_reingold(testing::triangle(), cfg), ValidationError);
  EXPECT_THROW(fruchterman_reingold(Graph(0, {}), LayoutConfig{}), ValidationError);
}

TEST(RenderSvg, K4WithThreeHighlightedEdges) {
  const Graph g = testing::k4();
  const auto coords = fruchterman_reingold(g, {});
  const std::vector<EdgeIndex> hl = {0, 2, 5};
  const std::string svg = render_svg(g, coords, hl);
  EXPECT_EQ(count_of(svg, "<line"), 6u);
  EXPECT_EQ(count_of(svg, "<line class=\"highlight\""), 3u);
  EXPECT_EQ(count_of(svg, "<circle"), 4u);
  // Highlighted edges come after the plain ones.
  EXPECT_GT(svg.find("<line class=\"highlight\""), svg.rfind("<line x1"));
  EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
}

TEST(RenderSvg, EmptyAndFullHighlight) {
  const Graph g = testing::k4();
  const auto coords = fruchterman_reingold(g, {});
  EXPECT_EQ(count_of(render_svg(g, coords), "class=\"highlight\""), 0u);
  const std::vector<EdgeIndex> all = {0, 1, 2, 3, 4, 5};
  EXPECT_EQ(count_of(render_svg(g, coords, all), "<line class=\"highlight\""), 6u);
  const std::vector<EdgeIndex> bad = {6};
  EXPECT_THROW(render_svg(g, coords, bad), DimensionError);
  EXPECT_THROW(render_svg(g, NodeCoordinates{}), DimensionError);
}

TEST(RenderSvg, TitlesCarryOriginalIds) {
  const Graph g(2, {{0, 1, 1.0}}, {42, 7});
  const std::string svg = render_svg(g, fruchterman_reingold(g, {}));
  EXPECT_NE(svg.find("<title>42</title>"), std::string::npos);
  EXPECT_NE(svg.find("<title>7</title>"), std::string::npos);
}

TEST(CoordinatesJson, KeyedByOriginalId) {
  const Graph g(2, {{0, 1, 1.0}}, {42, 7});
  const auto coords = fruchterman_reingold(g, {});
  const auto j = coordinates_json(g, coords);
  ASSERT_TRUE(j.contains("42"));
  EXPECT_EQ(j.at("42")[0].get<double>(), coords.positions[0].x);
  EXPECT_EQ(j.at("7")[1].get<double>(), coords.positions[1].y);
}

}  // namespace
}  // namespace ucs
