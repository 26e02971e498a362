#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "firefighter/graph.hpp"
#include "firefighter/layout.hpp"
#include "firefighter/propagation.hpp"

namespace firefighter {

/// A contiguous stretch [left, right] of layout positions around one or more
/// fire sources. A fresh bubble of radius i spans every position reached by
/// N^i(source); merging keeps the hull of the two stretches.
struct Bubble {
  VertexList sources;
  int left = 0;
  int right = 0;
  int radius = 0;

  bool covers(int position) const {
    return left <= position && position <= right;
  }

  friend bool operator==(const Bubble &, const Bubble &) = default;
};

inline Bubble bubble(const Graph &g, const LinearLayout &layout, Vertex source,
                     int radius) {
  require_layout_of(g, layout);
  Bubble b{{source}, layout.position(source), layout.position(source), radius};
  for (Vertex v : k_neighborhood(g, source, radius)) {
    b.left = std::min(b.left, layout.position(v));
    b.right = std::max(b.right, layout.position(v));
  }
  return b;
}

namespace detail {

inline bool bubbles_overlap(const Bubble &a, const Bubble &b, const Graph &g,
                            const LinearLayout &layout) {
  if (a.left <= b.right && b.left <= a.right) {
    return true;
  }
  for (auto [u, v] : g.edges()) {
    int pu = layout.position(u);
    int pv = layout.position(v);
    if ((a.covers(pu) && b.covers(pv)) || (a.covers(pv) && b.covers(pu))) {
      return true;
    }
  }
  return false;
}

} // namespace detail

/// Merges bubbles that share a position or are joined by an edge until no
/// two remain joined. Result is sorted by left endpoint.
inline std::vector<Bubble> merge_overlapping(std::vector<Bubble> bubbles,
                                             const Graph &g,
                                             const LinearLayout &layout) {
  require_layout_of(g, layout);
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < bubbles.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < bubbles.size() && !merged; ++j) {
        if (!detail::bubbles_overlap(bubbles[i], bubbles[j], g, layout)) {
          continue;
        }
        Bubble &a = bubbles[i];
        const Bubble &b = bubbles[j];
        a.left = std::min(a.left, b.left);
        a.right = std::max(a.right, b.right);
        a.radius = std::max(a.radius, b.radius);
        a.sources.insert(a.sources.end(), b.sources.begin(), b.sources.end());
        std::sort(a.sources.begin(), a.sources.end());
        a.sources.erase(std::unique(a.sources.begin(), a.sources.end()),
                        a.sources.end());
        bubbles.erase(bubbles.begin() + static_cast<long>(j));
        merged = true;
      }
    }
  }
  std::sort(bubbles.begin(), bubbles.end(),
            [](const Bubble &a, const Bubble &b) { return a.left < b.left; });
  return bubbles;
}

/// Saturating unsigned arithmetic: the bounds below overflow 64 bits for
/// tiny arguments, so kSaturated stands for "at least this large".
inline constexpr std::uint64_t kSaturated =
    std::numeric_limits<std::uint64_t>::max();

namespace detail {

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) {
    return 0;
  }
  if (a > kSaturated / b) {
    return kSaturated;
  }
  return a * b;
}

inline std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    result = sat_mul(result, base);
    if (result == kSaturated || result == 0) {
      break;
    }
  }
  return result;
}

} // namespace detail

/// Upper bound on vertices burned by the isolation strategy on a layout of
/// cutwidth `cutwidth` with `initially_burned` fire sources:
///   B(0, f) = f
///   B(c, f) = f * [ f * (2c)^(2c + B(c-1, f)) ]
/// where the bracket bounds one bubble and the outer factor counts bubbles.
inline std::uint64_t burned_upper_bound(std::uint64_t cutwidth,
                                        std::uint64_t initially_burned) {
  std::uint64_t bound = initially_burned;
  for (std::uint64_t c = 1; c <= cutwidth; ++c) {
    std::uint64_t exponent = bound == kSaturated ? kSaturated : 2 * c + bound;
    std::uint64_t per_bubble =
        detail::sat_mul(initially_burned, detail::sat_pow(2 * c, exponent));
    bound = detail::sat_mul(initially_burned, per_bubble);
    if (bound == kSaturated) {
      return kSaturated;
    }
  }
  return bound;
}

/// Same bound with cutwidth replaced by pathwidth * max degree.
inline std::uint64_t bound_pw_delta(std::uint64_t pathwidth,
                                    std::uint64_t max_degree,
                                    std::uint64_t initially_burned) {
  return burned_upper_bound(pathwidth * max_degree, initially_burned);
}

/// Same bound with cutwidth replaced by bw(bw+1)/2.
inline std::uint64_t bound_bandwidth(std::uint64_t bandwidth,
                                     std::uint64_t initially_burned) {
  return burned_upper_bound(bandwidth * (bandwidth + 1) / 2,
                            initially_burned);
}

struct IsolationResult {
  Strategy strategy;
  Trace trace;
  int cutwidth = 0;               // of the given layout
  std::vector<Bubble> bubbles;    // first-round merged bubbles
  std::uint64_t bound = 0;        // burned_upper_bound(cutwidth, |sources|)
  VertexList escaped;             // burned vertices outside every bubble

  bool confined() const { return escaped.empty(); }
  bool within_bound() const { return trace.burned.size() <= bound; }
};

namespace detail {

class IsolationRun {
public:
  IsolationRun(const Graph &g, const LinearLayout &layout,
               const VertexList &sources, std::vector<int> budgets)
      : g_(g), layout_(layout), fire_(g, sources),
        budgets_(std::move(budgets)) {}

  void run() {
    bool first = true;
    while (!fire_.stopped()) {
      std::size_t before = plan_.steps.size();
      isolate(layout_.order(), first ? &first_bubbles_ : nullptr);
      first = false;
      if (plan_.steps.size() == before && !fire_.stopped()) {
        step({});
      }
    }
    while (!plan_.steps.empty() && plan_.steps.back().empty()) {
      plan_.steps.pop_back();
    }
  }

  const Strategy &plan() const { return plan_; }
  const std::vector<Bubble> &first_bubbles() const { return first_bubbles_; }

private:
  void step(const VertexList &protect) {
    std::size_t t = static_cast<std::size_t>(fire_.next_step());
    int budget = budgets_[std::min(t, budgets_.size()) - 1];
    if (auto violation = fire_.protect(protect, budget)) {
      throw std::logic_error("isolation produced an invalid step: " +
                             violation->message());
    }
    plan_.steps.push_back(protect);
    fire_.spread();
  }

  int budget_now() const {
    std::size_t t = static_cast<std::size_t>(fire_.next_step());
    return budgets_[std::min(t, budgets_.size()) - 1];
  }

  bool alive_in(const VertexList &region) const {
    std::vector<char> inside(g_.vertex_count(), 0);
    for (Vertex v : region) {
      inside[v] = 1;
    }
    for (Vertex v : region) {
      if (!fire_.is_burned(v)) {
        continue;
      }
      for (Vertex w : g_.neighbors(v)) {
        if (inside[w] && fire_.state(w) == Propagation::State::Unburned) {
          return true;
        }
      }
    }
    return false;
  }

  /// One level of the recursion on `region` (given in layout order). The
  /// working graph drops protected vertices and burned-burned edges; local
  /// ids are positions in the restricted layout.
  void isolate(const VertexList &region, std::vector<Bubble> *record) {
    if (fire_.stopped() || (record == nullptr && !alive_in(region))) {
      return;
    }
    VertexList verts;
    std::vector<int> local(g_.vertex_count(), -1);
    for (Vertex v : region) {
      if (!fire_.is_protected(v)) {
        local[v] = static_cast<int>(verts.size());
        verts.push_back(v);
      }
    }
    std::vector<Edge> edges;
    for (Vertex v : verts) {
      for (Vertex w : g_.neighbors(v)) {
        if (v < w && local[w] >= 0 &&
            !(fire_.is_burned(v) && fire_.is_burned(w))) {
          edges.emplace_back(local[v], local[w]);
        }
      }
    }
    Graph h(verts.size(), edges);
    auto order = LinearLayout::identity(verts.size());
    const int c = cutwidth_of_layout(h, order);

    std::vector<Bubble> bubbles;
    for (Vertex v : verts) {
      if (fire_.is_burned(v)) {
        bubbles.push_back(bubble(h, order, local[v], 2 * c));
      }
    }
    bubbles = merge_overlapping(std::move(bubbles), h, order);
    if (record != nullptr) {
      for (Bubble b : bubbles) {
        for (auto &s : b.sources) {
          s = verts[s];
        }
        b.left = layout_.position(verts[b.left]);
        b.right = layout_.position(verts[b.right]);
        record->push_back(b);
      }
    }
    if (c == 0 || !alive_in(region)) {
      return;
    }

    // Boundary of each bubble: outside vertices with an edge into it. Most
    // boundary edges first, then lowest id; bubbles left to right.
    VertexList queue;
    for (const Bubble &b : bubbles) {
      std::vector<std::pair<int, Vertex>> ranked;
      std::vector<int> edges_into(verts.size(), 0);
      for (auto [x, y] : h.edges()) {
        bool xin = b.covers(static_cast<int>(x));
        bool yin = b.covers(static_cast<int>(y));
        if (xin != yin) {
          edges_into[xin ? y : x] += 1;
        }
      }
      for (std::size_t x = 0; x < verts.size(); ++x) {
        if (edges_into[x] > 0) {
          ranked.emplace_back(-edges_into[x], verts[x]);
        }
      }
      std::sort(ranked.begin(), ranked.end());
      for (auto [neg, v] : ranked) {
        queue.push_back(v);
      }
    }

    std::size_t next = 0;
    for (int i = 0; i < 2 * c && !fire_.stopped() && alive_in(region); ++i) {
      VertexList now;
      const int budget = budget_now();
      while (next < queue.size() && static_cast<int>(now.size()) < budget) {
        Vertex v = queue[next++];
        if (fire_.state(v) == Propagation::State::Unburned &&
            std::find(now.begin(), now.end(), v) == now.end()) {
          now.push_back(v);
        }
      }
      step(now);
    }

    for (const Bubble &b : bubbles) {
      VertexList inner(verts.begin() + b.left, verts.begin() + b.right + 1);
      isolate(inner, nullptr);
    }
  }

  const Graph &g_;
  const LinearLayout &layout_;
  Propagation fire_;
  std::vector<int> budgets_;
  Strategy plan_;
  std::vector<Bubble> first_bubbles_;
};

} // namespace detail

/// Builds a concrete strategy by confining every fire bubble of radius
/// 2*cw behind protected boundary vertices, then recursing inside each
/// bubble with burned-burned edges dropped. budgets[t-1] is the number of
/// firefighters at step t (last entry repeats) and must be >= 1.
inline IsolationResult isolation_strategy(const Graph &g,
                                          const LinearLayout &layout,
                                          const VertexList &sources,
                                          std::vector<int> budgets = {1}) {
  require_layout_of(g, layout);
  if (budgets.empty() ||
      *std::min_element(budgets.begin(), budgets.end()) < 1) {
    throw std::invalid_argument("isolation needs at least one firefighter "
                                "per step");
  }
  auto instance = Instance::multi(g, sources, budgets);
  detail::IsolationRun run(g, layout, instance.sources(), budgets);
  run.run();

  IsolationResult result;
  result.strategy = run.plan();
  result.trace = simulate(instance, result.strategy);
  result.cutwidth = cutwidth_of_layout(g, layout);
  result.bubbles = run.first_bubbles();
  result.bound = burned_upper_bound(static_cast<std::uint64_t>(result.cutwidth),
                                    instance.sources().size());
  for (Vertex v : result.trace.burned) {
    int p = layout.position(v);
    bool inside = std::any_of(result.bubbles.begin(), result.bubbles.end(),
                              [&](const Bubble &b) { return b.covers(p); });
    if (!inside) {
      result.escaped.push_back(v);
    }
  }
  return result;
}

} // namespace firefighter
