#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

#include "ucs/error.hpp"
#include "ucs/graph.hpp"

namespace ucs {

namespace {

struct RawEdge {
  OriginalId u;
  OriginalId v;
  double weight;
};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

OriginalId parse_id(std::string_view token, std::size_t line_no) {
  OriginalId value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line_no, "invalid vertex id '" + std::string(token) + "'");
  }
  return value;
}

double parse_weight(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line_no, "invalid weight '" + std::string(token) + "'");
  }
  if (!std::isfinite(value) || value <= 0.0) {
    throw ValidationError("line " + std::to_string(line_no) + ": weight must be positive, got '" +
                          std::string(token) + "'");
  }
  return value;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

EdgeListFormat parse_format(const std::string& name) {
  if (name == "snap") return EdgeListFormat::snap;
  if (name == "weighted") return EdgeListFormat::weighted;
  throw ValidationError("unknown edge-list format '" + name + "' (expected snap or weighted)");
}

std::string to_string(EdgeListFormat format) {
  return format == EdgeListFormat::snap ? "snap" : "weighted";
}

ParsedGraph parse_edge_list(std::istream& in, EdgeListFormat format) {
  const std::size_t expected_tokens = format == EdgeListFormat::snap ? 2 : 3;
  ParseStats stats;
  std::vector<RawEdge> raw;
  std::set<OriginalId> vertices;
  std::set<std::pair<OriginalId, OriginalId>> seen;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != expected_tokens) {
      throw ParseError(line_no, "expected " + std::to_string(expected_tokens) + " fields, found " +
                                    std::to_string(tokens.size()));
    }
    const OriginalId a = parse_id(tokens[0], line_no);
    const OriginalId b = parse_id(tokens[1], line_no);
    const double w = format == EdgeListFormat::weighted ? parse_weight(tokens[2], line_no) : 1.0;
    vertices.insert(a);
    vertices.insert(b);
    if (a == b) {
      ++stats.self_loops_dropped;
      continue;
    }
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second) {
      ++stats.duplicates_dropped;
      continue;
    }
    raw.push_back({a, b, w});
  }
  if (in.bad()) throw IoError("read failure at line " + std::to_string(line_no + 1));

  std::vector<OriginalId> original_ids(vertices.begin(), vertices.end());
  std::map<OriginalId, VertexId> index;
  for (VertexId i = 0; i < original_ids.size(); ++i) index.emplace(original_ids[i], i);

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& r : raw) edges.push_back({index.at(r.u), index.at(r.v), r.weight});
  const std::size_t vertex_count = original_ids.size();
  return {Graph(vertex_count, std::move(edges), std::move(original_ids)), stats};
}

ParsedGraph parse_edge_list(const std::string& text, EdgeListFormat format) {
  std::istringstream in(text);
  return parse_edge_list(in, format);
}

ParsedGraph read_edge_list_file(const std::string& path, EdgeListFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_edge_list(in, format);
}

std::string write_edge_list(const Graph& g, EdgeListFormat format) {
  std::string out;
  const auto& ids = g.original_ids();
  for (const auto& e : g.edges()) {
    out += std::to_string(ids[e.u]);
    if (format == EdgeListFormat::snap) {
      out += '\t';
      out += std::to_string(ids[e.v]);
    } else {
      out += ' ';
      out += std::to_string(ids[e.v]);
      out += ' ';
      out += format_double(e.weight);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.weight});
  return {{"vertex_count", g.vertex_count()}, {"edges", std::move(edges)},
          {"original_ids", g.original_ids()}};
}

Graph graph_from_json(const nlohmann::json& j) {
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      edges.push_back({e.at(0).get<VertexId>(), e.at(1).get<VertexId>(), e.at(2).get<double>()});
    }
    auto ids = j.contains("original_ids") ? j.at("original_ids").get<std::vector<OriginalId>>()
                                          : std::vector<OriginalId>{};
    return Graph(j.at("vertex_count").get<std::size_t>(), std::move(edges), std::move(ids));
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("malformed graph JSON: ") + ex.what());
  }
}

}  // namespace ucs
