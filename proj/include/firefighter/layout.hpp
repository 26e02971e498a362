#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "firefighter/graph.hpp"

namespace firefighter {

/// A bijection V -> {0..n-1}; order[i] is the vertex at position i.
class LinearLayout {
public:
  LinearLayout() = default;
  explicit LinearLayout(VertexList order) : order_(std::move(order)) {
    position_.assign(order_.size(), -1);
    for (std::size_t i = 0; i < order_.size(); ++i) {
      Vertex v = order_[i];
      if (v >= order_.size() || position_[v] >= 0) {
        throw std::invalid_argument("layout is not a permutation of 0.." +
                                    std::to_string(order_.size() - 1));
      }
      position_[v] = static_cast<int>(i);
    }
  }

  static LinearLayout identity(std::size_t n) {
    VertexList order(n);
    for (std::size_t i = 0; i < n; ++i) {
      order[i] = static_cast<Vertex>(i);
    }
    return LinearLayout(std::move(order));
  }

  std::size_t size() const noexcept { return order_.size(); }
  const VertexList &order() const noexcept { return order_; }
  Vertex at(std::size_t pos) const { return order_.at(pos); }
  int position(Vertex v) const { return position_.at(v); }
  int distance(Vertex a, Vertex b) const {
    return std::abs(position(a) - position(b));
  }

  friend bool operator==(const LinearLayout &a, const LinearLayout &b) {
    return a.order_ == b.order_;
  }

private:
  VertexList order_;
  std::vector<int> position_;
};

struct PathDecomposition {
  std::vector<VertexList> bags;

  friend bool operator==(const PathDecomposition &,
                         const PathDecomposition &) = default;
};

inline void require_layout_of(const Graph &g, const LinearLayout &layout) {
  if (layout.size() != g.vertex_count()) {
    throw std::invalid_argument(
        "layout has " + std::to_string(layout.size()) +
        " positions but graph has " + std::to_string(g.vertex_count()) +
        " vertices");
  }
}

/// Edges crossing each gap; entry i is the cut between positions i and i+1.
inline std::vector<int> gap_cuts(const Graph &g, const LinearLayout &layout) {
  require_layout_of(g, layout);
  std::vector<int> diff(g.vertex_count() + 1, 0);
  for (auto [u, v] : g.edges()) {
    int a = layout.position(u);
    int b = layout.position(v);
    if (a > b) {
      std::swap(a, b);
    }
    diff[a] += 1;
    diff[b] -= 1;
  }
  std::vector<int> cuts;
  int running = 0;
  for (std::size_t i = 0; i + 1 < g.vertex_count(); ++i) {
    running += diff[i];
    cuts.push_back(running);
  }
  return cuts;
}

inline int cutwidth_of_layout(const Graph &g, const LinearLayout &layout) {
  auto cuts = gap_cuts(g, layout);
  return cuts.empty() ? 0 : *std::max_element(cuts.begin(), cuts.end());
}

inline int bandwidth_of_layout(const Graph &g, const LinearLayout &layout) {
  require_layout_of(g, layout);
  int best = 0;
  for (auto [u, v] : g.edges()) {
    best = std::max(best, layout.distance(u, v));
  }
  return best;
}

class DecompositionError : public std::invalid_argument {
public:
  /// condition: 1 = coverage, 2 = edge inside some bag, 3 = contiguity.
  /// Condition 0 flags a bag that names a vertex outside the graph.
  DecompositionError(int condition, std::optional<Vertex> vertex,
                     std::optional<Edge> edge, const std::string &what)
      : std::invalid_argument(what), condition_(condition), vertex_(vertex),
        edge_(edge) {}

  int condition() const noexcept { return condition_; }
  std::optional<Vertex> witness_vertex() const noexcept { return vertex_; }
  std::optional<Edge> witness_edge() const noexcept { return edge_; }

private:
  int condition_;
  std::optional<Vertex> vertex_;
  std::optional<Edge> edge_;
};

/// Checks conditions 1-3 in order and returns the width (max bag size - 1).
/// Throws DecompositionError naming the first failed condition and a witness.
inline int validate_path_decomposition(const Graph &g,
                                       const PathDecomposition &pd) {
  const std::size_t n = g.vertex_count();
  std::vector<int> first(n, -1);
  std::vector<int> last(n, -1);
  std::vector<int> occurrences(n, 0);
  std::size_t widest = 0;
  for (std::size_t b = 0; b < pd.bags.size(); ++b) {
    auto bag = pd.bags[b];
    std::sort(bag.begin(), bag.end());
    bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    widest = std::max(widest, bag.size());
    for (Vertex v : bag) {
      if (v >= n) {
        throw DecompositionError(0, v, std::nullopt,
                                 "bag " + std::to_string(b) +
                                     " names unknown vertex " +
                                     std::to_string(v));
      }
      if (first[v] < 0) {
        first[v] = static_cast<int>(b);
      }
      last[v] = static_cast<int>(b);
      occurrences[v] += 1;
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (first[v] < 0) {
      throw DecompositionError(1, v, std::nullopt,
                               "condition 1: vertex " + std::to_string(v) +
                                   " is in no bag");
    }
  }
  for (auto e : g.edges()) {
    // Only bags inside [first, last] of an endpoint can hold both.
    Vertex u = e.first;
    Vertex v = e.second;
    bool covered = false;
    int lo = std::max(first[u], first[v]);
    int hi = std::min(last[u], last[v]);
    for (int b = lo; b <= hi && !covered; ++b) {
      const auto &bag = pd.bags[b];
      covered = std::find(bag.begin(), bag.end(), u) != bag.end() &&
                std::find(bag.begin(), bag.end(), v) != bag.end();
    }
    if (!covered) {
      throw DecompositionError(2, std::nullopt, e,
                               "condition 2: edge (" + std::to_string(u) +
                                   "," + std::to_string(v) +
                                   ") is in no bag");
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (occurrences[v] != last[v] - first[v] + 1) {
      throw DecompositionError(3, v, std::nullopt,
                               "condition 3: bags containing vertex " +
                                   std::to_string(v) +
                                   " are not contiguous");
    }
  }
  return widest == 0 ? 0 : static_cast<int>(widest) - 1;
}

} // namespace firefighter
