#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace ucs {

using VertexId = std::size_t;
using EdgeIndex = std::size_t;
using OriginalId = std::int64_t;

/// Undirected weighted edge, stored with u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph with strictly positive weights.
///
/// Vertices are contiguous [0, vertex_count). `original_ids()[i]` is the id
/// vertex i carried in the input file; it is the identity map for graphs
/// built in memory. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  /// Validates and normalizes orientation (u < v). Throws ValidationError on
  /// self-loops, duplicate pairs, non-positive or non-finite weights, or
  /// out-of-range vertex ids.
  Graph(std::size_t vertex_count, std::vector<Edge> edges,
        std::vector<OriginalId> original_ids = {});

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeIndex i) const { return edges_.at(i); }
  const std::vector<OriginalId>& original_ids() const noexcept { return original_ids_; }
  bool is_unweighted() const noexcept;

  /// Same vertex set, only the edges listed in `subset` (in that order).
  Graph edge_subgraph(std::span<const EdgeIndex> subset) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<OriginalId> original_ids_;
};

enum class EdgeListFormat { snap, weighted };

EdgeListFormat parse_format(const std::string& name);
std::string to_string(EdgeListFormat format);

struct ParseStats {
  std::size_t duplicates_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

struct ParsedGraph {
  Graph graph;
  ParseStats stats;
};

/// Reads a SNAP ("u<TAB>v", '#' comments) or weighted ("u v w") edge list.
///
/// Vertex ids are re-indexed to [0, k) in ascending order of original id; a
/// vertex that only appears in a self-loop is kept as an isolated vertex.
/// Edge order follows first appearance. A repeated undirected pair keeps the
/// first weight and is counted in `stats.duplicates_dropped`.
ParsedGraph parse_edge_list(std::istream& in, EdgeListFormat format);
ParsedGraph parse_edge_list(const std::string& text, EdgeListFormat format);
ParsedGraph read_edge_list_file(const std::string& path, EdgeListFormat format);

/// Writes the graph back in `format` using original vertex ids. Weights are
/// printed with round-trip precision.
std::string write_edge_list(const Graph& g, EdgeListFormat format);

nlohmann::json to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

struct ComponentLabeling {
  std::vector<std::size_t> labels;
  std::size_t component_count = 0;
};

/// Component ids are assigned in order of each component's smallest vertex.
ComponentLabeling connected_components(const Graph& g);

/// B (m x |V|, one -1 at u and one +1 at v per row), edge weights W and
/// L = B^T diag(W) B.
struct IncidenceSystem {
  Eigen::MatrixXd incidence;
  Eigen::VectorXd weights;
  Eigen::MatrixXd laplacian;
};

IncidenceSystem incidence_system(const Graph& g);

/// Sum over edges of w (x_u - x_v)^2. Throws DimensionError on size mismatch.
double quadratic_form(const Graph& g, const Eigen::VectorXd& x);

}  // namespace ucs
