#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "firefighter/graph.hpp"

// Small-graph generators for exhaustive sweeps: every non-isomorphic tree or
// connected graph of a given order, and seeded random connected graphs.

namespace firefighter::corpus {

namespace detail {

inline std::string rooted_code(const Graph &g, Vertex v, Vertex parent) {
  std::vector<std::string> children;
  for (Vertex w : g.neighbors(v)) {
    if (w != parent) {
      children.push_back(rooted_code(g, w, v));
    }
  }
  std::sort(children.begin(), children.end());
  std::string out = "(";
  for (const auto &c : children) {
    out += c;
  }
  return out + ")";
}

/// AHU code of a tree rooted at its center (the smaller code when bicentral).
inline std::string tree_code(const Graph &g) {
  const std::size_t n = g.vertex_count();
  if (n <= 2) {
    return std::to_string(n);
  }
  std::vector<std::size_t> degree(n);
  VertexList layer;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    if (degree[v] <= 1) {
      layer.push_back(v);
    }
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    remaining -= layer.size();
    VertexList next;
    for (Vertex v : layer) {
      for (Vertex w : g.neighbors(v)) {
        if (--degree[w] == 1) {
          next.push_back(w);
        }
      }
    }
    layer = std::move(next);
  }
  constexpr Vertex kNone = ~Vertex{0};
  std::string best = rooted_code(g, layer.front(), kNone);
  for (Vertex c : layer) {
    best = std::min(best, rooted_code(g, c, kNone));
  }
  return best;
}

/// Canonical adjacency code for graphs with up to 11 vertices: the minimum
/// upper-triangle bit pattern over all relabellings that order vertices by
/// an isomorphism-invariant class (degree, then sorted neighbour degrees).
inline std::uint64_t graph_code(const Graph &g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::pair<std::vector<std::size_t>, Vertex>> keyed;
  for (Vertex v = 0; v < n; ++v) {
    std::vector<std::size_t> key{g.degree(v)};
    for (Vertex w : g.neighbors(v)) {
      key.push_back(g.degree(w));
    }
    std::sort(key.begin() + 1, key.end());
    keyed.emplace_back(std::move(key), v);
  }
  std::sort(keyed.begin(), keyed.end());
  VertexList order;
  std::vector<std::size_t> group_start;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || keyed[i].first != keyed[i - 1].first) {
      group_start.push_back(i);
    }
    order.push_back(keyed[i].second);
  }
  group_start.push_back(n);

  auto code_of = [&](const VertexList &ord) {
    std::vector<int> pos(n);
    for (std::size_t i = 0; i < n; ++i) {
      pos[ord[i]] = static_cast<int>(i);
    }
    std::uint64_t code = 0;
    for (auto [u, v] : g.edges()) {
      int a = std::min(pos[u], pos[v]);
      int b = std::max(pos[u], pos[v]);
      code |= std::uint64_t{1} << (b * (b - 1) / 2 + a);
    }
    return code;
  };

  for (std::size_t k = 0; k + 1 < group_start.size(); ++k) {
    std::sort(order.begin() + static_cast<long>(group_start[k]),
              order.begin() + static_cast<long>(group_start[k + 1]));
  }
  std::uint64_t best = ~std::uint64_t{0};
  // Odometer over the permutations of every class.
  while (true) {
    best = std::min(best, code_of(order));
    std::size_t k = 0;
    for (; k + 1 < group_start.size(); ++k) {
      auto first = order.begin() + static_cast<long>(group_start[k]);
      auto last = order.begin() + static_cast<long>(group_start[k + 1]);
      if (std::next_permutation(first, last)) {
        break;
      }
    }
    if (k + 1 == group_start.size()) {
      break;
    }
  }
  return best;
}

} // namespace detail

/// All trees with n vertices up to isomorphism (n >= 1).
inline std::vector<Graph> all_trees(std::size_t n) {
  std::vector<Graph> level{Graph(1, {})};
  for (std::size_t size = 2; size <= n; ++size) {
    std::map<std::string, Graph> next;
    for (const Graph &t : level) {
      for (Vertex v = 0; v < t.vertex_count(); ++v) {
        auto edges = t.edges();
        edges.emplace_back(v, static_cast<Vertex>(t.vertex_count()));
        Graph grown(size, edges);
        next.emplace(detail::tree_code(grown), std::move(grown));
      }
    }
    level.clear();
    for (auto &[code, g] : next) {
      level.push_back(std::move(g));
    }
  }
  return n == 0 ? std::vector<Graph>{} : level;
}

/// All connected graphs with n vertices up to isomorphism (1 <= n <= 11).
/// Every connected graph has a vertex whose removal leaves it connected, so
/// growing connected graphs one vertex at a time reaches all of them.
inline std::vector<Graph> all_connected_graphs(std::size_t n) {
  if (n == 0) {
    return {};
  }
  std::vector<Graph> level{Graph(1, {})};
  for (std::size_t size = 2; size <= n; ++size) {
    std::map<std::uint64_t, Graph> next;
    const std::uint32_t subsets = 1u << (size - 1);
    for (const Graph &g : level) {
      for (std::uint32_t mask = 1; mask < subsets; ++mask) {
        auto edges = g.edges();
        for (Vertex v = 0; v + 1 < size; ++v) {
          if ((mask >> v) & 1u) {
            edges.emplace_back(v, static_cast<Vertex>(size - 1));
          }
        }
        Graph grown(size, edges);
        next.emplace(detail::graph_code(grown), std::move(grown));
      }
    }
    level.clear();
    for (auto &[code, g] : next) {
      level.push_back(std::move(g));
    }
  }
  return level;
}

/// Random connected graph: a random recursive tree under a random labelling,
/// plus each remaining pair as an edge with probability extra_edge_prob.
inline Graph random_connected_graph(std::size_t n, double extra_edge_prob,
                                    std::mt19937_64 &rng) {
  VertexList label(n);
  std::iota(label.begin(), label.end(), Vertex{0});
  std::shuffle(label.begin(), label.end(), rng);
  std::set<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    Vertex a = label[i];
    Vertex b = label[pick(rng)];
    edges.emplace(std::min(a, b), std::max(a, b));
  }
  std::bernoulli_distribution coin(extra_edge_prob);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!edges.count({u, v}) && coin(rng)) {
        edges.emplace(u, v);
      }
    }
  }
  return Graph(n, {edges.begin(), edges.end()});
}

} // namespace firefighter::corpus
