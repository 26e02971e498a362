#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "firefighter/graph.hpp"
#include "firefighter/layout.hpp"

namespace firefighter {

class SizeCapExceeded : public std::length_error {
public:
  SizeCapExceeded(std::size_t size, std::size_t cap, const std::string &what)
      : std::length_error(what + ": size " + std::to_string(size) +
                          " exceeds cap " + std::to_string(cap)),
        size_(size), cap_(cap) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t size_;
  std::size_t cap_;
};

inline constexpr std::size_t kDefaultLayoutCap = 12;
inline constexpr std::size_t kDefaultPathwidthCap = 16;

template <typename Certificate> struct WidthResult {
  int value = 0;
  Certificate certificate;
};

namespace detail {

// Subset DP tables are indexed by 32-bit masks.
inline constexpr std::size_t kMaskLimit = 30;

inline void check_cap(const Graph &g, std::size_t cap, const char *what) {
  std::size_t limit = std::min(cap, kMaskLimit);
  if (g.vertex_count() > limit) {
    throw SizeCapExceeded(g.vertex_count(), limit, what);
  }
}

inline std::vector<std::uint32_t> adjacency_masks(const Graph &g) {
  std::vector<std::uint32_t> adj(g.vertex_count(), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  return adj;
}

/// Minimises, over vertex orderings, the maximum of cost(prefix set) over all
/// prefixes. Both cutwidth and vertex separation have this shape, so the
/// optimum only depends on the prefix set and a DP over subsets is exact.
template <typename Cost>
std::pair<int, VertexList> min_max_prefix_order(std::size_t n, Cost cost) {
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<int> best(std::size_t{full} + 1,
                        std::numeric_limits<int>::max());
  std::vector<std::int8_t> last(std::size_t{full} + 1, -1);
  best[0] = 0;
  for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
    int here = cost(s);
    for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
      int v = std::countr_zero(rest);
      int candidate = std::max(best[s & ~(1u << v)], here);
      if (candidate < best[s]) {
        best[s] = candidate;
        last[s] = static_cast<std::int8_t>(v);
      }
    }
  }
  VertexList order(n);
  std::uint32_t s = full;
  for (std::size_t i = n; i-- > 0;) {
    order[i] = static_cast<Vertex>(last[s]);
    s &= ~(1u << last[s]);
  }
  return {best[full], order};
}

class BandwidthSearch {
public:
  BandwidthSearch(const Graph &g, int k)
      : g_(g), k_(k), adj_(adjacency_masks(g)),
        position_(g.vertex_count(), -1) {}

  bool run() { return place(0, 0); }
  const VertexList &order() const { return order_; }

private:
  bool place(std::uint32_t placed, int pos) {
    const int n = static_cast<int>(g_.vertex_count());
    if (pos == n) {
      return true;
    }
    std::string key = state_key(placed, pos);
    if (failed_.count(key) != 0) {
      return false;
    }
    // Every unplaced vertex with a placed neighbour has a latest position.
    std::vector<int> deadlines;
    for (int w = 0; w < n; ++w) {
      if ((placed >> w) & 1u) {
        continue;
      }
      int deadline = n;
      for (std::uint32_t m = adj_[w] & placed; m != 0; m &= m - 1) {
        deadline = std::min(deadline, position_[std::countr_zero(m)] + k_);
      }
      if (deadline < n) {
        deadlines.push_back(deadline);
      }
    }
    std::sort(deadlines.begin(), deadlines.end());
    for (std::size_t i = 0; i < deadlines.size(); ++i) {
      if (deadlines[i] < pos + static_cast<int>(i)) {
        failed_.insert(key);
        return false;
      }
    }
    for (int v = 0; v < n; ++v) {
      if ((placed >> v) & 1u) {
        continue;
      }
      bool fits = true;
      for (std::uint32_t m = adj_[v] & placed; m != 0 && fits; m &= m - 1) {
        fits = pos - position_[std::countr_zero(m)] <= k_;
      }
      if (!fits) {
        continue;
      }
      position_[v] = pos;
      order_.push_back(static_cast<Vertex>(v));
      if (place(placed | (1u << v), pos + 1)) {
        return true;
      }
      order_.pop_back();
      position_[v] = -1;
    }
    failed_.insert(key);
    return false;
  }

  // Only the last k placements can still constrain the future.
  std::string state_key(std::uint32_t placed, int pos) const {
    std::string key(reinterpret_cast<const char *>(&placed), sizeof(placed));
    for (int p = std::max(0, pos - k_); p < pos; ++p) {
      key.push_back(static_cast<char>(order_[p]));
    }
    return key;
  }

  const Graph &g_;
  int k_;
  std::vector<std::uint32_t> adj_;
  std::vector<int> position_;
  VertexList order_;
  std::unordered_set<std::string> failed_;
};

} // namespace detail

inline WidthResult<LinearLayout>
exact_cutwidth(const Graph &g, std::size_t cap = kDefaultLayoutCap) {
  detail::check_cap(g, cap, "exact cutwidth");
  if (g.vertex_count() == 0) {
    return {0, LinearLayout{}};
  }
  auto adj = detail::adjacency_masks(g);
  const std::size_t n = g.vertex_count();
  auto [value, order] = detail::min_max_prefix_order(n, [&](std::uint32_t s) {
    int crossing = 0;
    for (std::uint32_t m = s; m != 0; m &= m - 1) {
      crossing += std::popcount(adj[std::countr_zero(m)] & ~s);
    }
    return crossing;
  });
  return {value, LinearLayout(std::move(order))};
}

inline WidthResult<LinearLayout>
exact_bandwidth(const Graph &g, std::size_t cap = kDefaultLayoutCap) {
  detail::check_cap(g, cap, "exact bandwidth");
  const std::size_t n = g.vertex_count();
  if (g.edge_count() == 0) {
    return {0, LinearLayout::identity(n)};
  }
  int k = std::max<int>(1, static_cast<int>((g.max_degree() + 1) / 2));
  for (;; ++k) {
    detail::BandwidthSearch search(g, k);
    if (search.run()) {
      return {k, LinearLayout(search.order())};
    }
  }
}

/// Pathwidth via vertex separation: the ordering is read as the order in
/// which vertices enter the decomposition, and bag i holds v_i plus every
/// earlier vertex that still has a neighbour at position >= i.
inline WidthResult<PathDecomposition>
exact_pathwidth(const Graph &g, std::size_t cap = kDefaultPathwidthCap) {
  detail::check_cap(g, cap, "exact pathwidth");
  const std::size_t n = g.vertex_count();
  if (n == 0) {
    return {0, PathDecomposition{}};
  }
  auto adj = detail::adjacency_masks(g);
  auto boundary = [&](std::uint32_t s) {
    int count = 0;
    for (std::uint32_t m = s; m != 0; m &= m - 1) {
      count += (adj[std::countr_zero(m)] & ~s) != 0 ? 1 : 0;
    }
    return count;
  };
  auto [value, order] = detail::min_max_prefix_order(n, boundary);
  PathDecomposition pd;
  std::uint32_t prefix = 0;
  for (Vertex v : order) {
    VertexList bag;
    for (std::uint32_t m = prefix; m != 0; m &= m - 1) {
      int u = std::countr_zero(m);
      if ((adj[u] & ~prefix) != 0) {
        bag.push_back(static_cast<Vertex>(u));
      }
    }
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    pd.bags.push_back(std::move(bag));
    prefix |= 1u << v;
  }
  return {value, std::move(pd)};
}

} // namespace firefighter
