#include "ucs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "ucs/error.hpp"

namespace ucs {

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges,
             std::vector<OriginalId> original_ids)
    : vertex_count_(vertex_count), edges_(std::move(edges)), original_ids_(std::move(original_ids)) {
  if (original_ids_.empty()) {
    original_ids_.resize(vertex_count_);
    std::iota(original_ids_.begin(), original_ids_.end(), OriginalId{0});
  }
  if (original_ids_.size() != vertex_count_) {
    throw ValidationError("original id map has " + std::to_string(original_ids_.size()) +
                          " entries for " + std::to_string(vertex_count_) + " vertices");
  }

  std::set<std::pair<VertexId, VertexId>> seen;
  for (auto& e : edges_) {
    if (e.u >= vertex_count_ || e.v >= vertex_count_) {
      throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") references a vertex outside [0," + std::to_string(vertex_count_) +
                            ")");
    }
    if (e.u == e.v) {
      throw ValidationError("self-loop at vertex " + std::to_string(e.u));
    }
    if (!std::isfinite(e.weight) || e.weight <= 0.0) {
      throw ValidationError("edge weight must be finite and strictly positive");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.emplace(e.u, e.v).second) {
      throw ValidationError("duplicate edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            "}");
    }
  }
}

bool Graph::is_unweighted() const noexcept {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight == 1.0; });
}

Graph Graph::edge_subgraph(std::span<const EdgeIndex> subset) const {
  std::vector<Edge> kept;
  kept.reserve(subset.size());
  for (EdgeIndex i : subset) kept.push_back(edge(i));
  return Graph(vertex_count_, std::move(kept), original_ids_);
}

ComponentLabeling connected_components(const Graph& g) {
  const std::size_t nv = g.vertex_count();
  std::vector<std::vector<VertexId>> adjacency(nv);
  for (const auto& e : g.edges()) {
    adjacency[e.u].push_back(e.v);
    adjacency[e.v].push_back(e.u);
  }

  constexpr std::size_t unlabeled = static_cast<std::size_t>(-1);
  ComponentLabeling out;
  out.labels.assign(nv, unlabeled);
  std::vector<VertexId> stack;
  for (VertexId root = 0; root < nv; ++root) {
    if (out.labels[root] != unlabeled) continue;
    const std::size_t id = out.component_count++;
    out.labels[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      for (VertexId y : adjacency[x]) {
        if (out.labels[y] == unlabeled) {
          out.labels[y] = id;
          stack.push_back(y);
        }
      }
    }
  }
  return out;
}

IncidenceSystem incidence_system(const Graph& g) {
  const auto m = static_cast<Eigen::Index>(g.edge_count());
  const auto nv = static_cast<Eigen::Index>(g.vertex_count());
  IncidenceSystem sys;
  sys.incidence = Eigen::MatrixXd::Zero(m, nv);
  sys.weights.resize(m);
  sys.laplacian = Eigen::MatrixXd::Zero(nv, nv);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Edge& e = g.edges()[static_cast<std::size_t>(k)];
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    sys.incidence(k, u) = -1.0;
    sys.incidence(k, v) = 1.0;
    sys.weights(k) = e.weight;
    // Accumulated per edge rather than formed as a product, so unit weights
    // give exact integer entries.
    sys.laplacian(u, u) += e.weight;
    sys.laplacian(v, v) += e.weight;
    sys.laplacian(u, v) -= e.weight;
    sys.laplacian(v, u) -= e.weight;
  }
  return sys;
}

double quadratic_form(const Graph& g, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != g.vertex_count()) {
    throw DimensionError("vector has " + std::to_string(x.size()) + " entries, graph has " +
                         std::to_string(g.vertex_count()) + " vertices");
  }
  double sum = 0.0;
  for (const auto& e : g.edges()) {
    const double d = x(static_cast<Eigen::Index>(e.u)) - x(static_cast<Eigen::Index>(e.v));
    sum += e.weight * d * d;
  }
  return sum;
}

}  // namespace ucs
