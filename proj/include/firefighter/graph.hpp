#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace firefighter {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;
using VertexList = std::vector<Vertex>;

class GraphError : public std::invalid_argument {
public:
  enum class Kind { SelfLoop, DuplicateEdge, IdOutOfRange };

  GraphError(Kind kind, Edge edge, const std::string &what)
      : std::invalid_argument(what), kind_(kind), edge_(edge) {}

  Kind kind() const noexcept { return kind_; }
  Edge edge() const noexcept { return edge_; }

private:
  Kind kind_;
  Edge edge_;
};

/// Undirected simple graph on vertices 0..n-1. Immutable once built.
///
/// Edges are stored normalized (smaller endpoint first) and sorted, and every
/// adjacency list is sorted ascending, so iteration order is deterministic.
class Graph {
public:
  Graph() = default;

  Graph(std::size_t vertex_count, const std::vector<Edge> &edge_list)
      : adjacency_(vertex_count) {
    edges_.reserve(edge_list.size());
    for (auto [u, v] : edge_list) {
      if (u >= vertex_count || v >= vertex_count) {
        throw GraphError(GraphError::Kind::IdOutOfRange, {u, v},
                         "edge (" + std::to_string(u) + "," +
                             std::to_string(v) + ") references a vertex >= " +
                             std::to_string(vertex_count));
      }
      if (u == v) {
        throw GraphError(GraphError::Kind::SelfLoop, {u, v},
                         "self-loop at vertex " + std::to_string(u));
      }
      edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
      throw GraphError(GraphError::Kind::DuplicateEdge, *dup,
                       "duplicate edge (" + std::to_string(dup->first) + "," +
                           std::to_string(dup->second) + ")");
    }
    for (auto [u, v] : edges_) {
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto &nbrs : adjacency_) {
      std::sort(nbrs.begin(), nbrs.end());
    }
  }

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge> &edges() const noexcept { return edges_; }
  const VertexList &neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  bool contains(Vertex v) const noexcept { return v < adjacency_.size(); }

  bool adjacent(Vertex u, Vertex v) const {
    const auto &nbrs = adjacency_.at(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  std::size_t max_degree() const noexcept {
    std::size_t best = 0;
    for (const auto &nbrs : adjacency_) {
      best = std::max(best, nbrs.size());
    }
    return best;
  }

  friend bool operator==(const Graph &a, const Graph &b) {
    return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
  }

private:
  std::vector<Edge> edges_;
  std::vector<VertexList> adjacency_;
};

inline Graph build_graph(std::size_t vertex_count,
                         const std::vector<Edge> &edge_list) {
  return Graph(vertex_count, edge_list);
}

/// BFS distances from a set of roots; unreachable vertices get -1.
inline std::vector<int> bfs_distances(const Graph &g, const VertexList &roots) {
  std::vector<int> dist(g.vertex_count(), -1);
  std::deque<Vertex> queue;
  for (Vertex r : roots) {
    if (!g.contains(r)) {
      throw std::out_of_range("vertex " + std::to_string(r) +
                              " not in graph");
    }
    if (dist[r] < 0) {
      dist[r] = 0;
      queue.push_back(r);
    }
  }
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

/// N^k(v): all vertices at distance at most k from v, v included. Sorted.
inline VertexList k_neighborhood(const Graph &g, Vertex v, int k) {
  if (!g.contains(v)) {
    throw std::out_of_range("vertex " + std::to_string(v) + " not in graph");
  }
  if (k < 0) {
    throw std::invalid_argument("neighborhood radius must be >= 0");
  }
  std::vector<int> dist(g.vertex_count(), -1);
  std::deque<Vertex> queue{v};
  dist[v] = 0;
  VertexList out{v};
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    if (dist[u] == k) {
      continue;
    }
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        out.push_back(w);
        queue.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_connected(const Graph &g) {
  if (g.vertex_count() == 0) {
    return true;
  }
  auto dist = bfs_distances(g, {0});
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

inline bool is_tree(const Graph &g) {
  return g.vertex_count() > 0 && g.edge_count() + 1 == g.vertex_count() &&
         is_connected(g);
}

/// Subgraph induced by `keep`, relabelled 0..|keep|-1 in the order given.
struct InducedSubgraph {
  Graph graph;
  VertexList original;          // new id -> old id
  std::vector<int> relabel;     // old id -> new id, -1 when dropped
};

inline InducedSubgraph induced_subgraph(const Graph &g, const VertexList &keep) {
  InducedSubgraph out;
  out.relabel.assign(g.vertex_count(), -1);
  out.original = keep;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.relabel.at(keep[i]) = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    if (out.relabel[u] >= 0 && out.relabel[v] >= 0) {
      edges.emplace_back(static_cast<Vertex>(out.relabel[u]),
                         static_cast<Vertex>(out.relabel[v]));
    }
  }
  out.graph = Graph(keep.size(), edges);
  return out;
}

} // namespace firefighter
