#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "firefighter/bits.hpp"
#include "firefighter/bubble.hpp"
#include "firefighter/graph.hpp"
#include "firefighter/propagation.hpp"
#include "firefighter/widths.hpp"

namespace firefighter {

struct SolveResult {
  int min_burned = 0;
  Strategy witness;
  std::uint64_t nodes_explored = 0;
};

struct Decision {
  bool yes = false;
  Strategy witness; // meaningful only when yes
  std::uint64_t nodes_explored = 0;
};

inline constexpr std::size_t kDefaultExhaustiveCap = 10;
inline constexpr std::size_t kSearchVertexLimit = 1024;

namespace detail {

template <std::size_t W> struct SearchState {
  FixedBits<W> burned;
  FixedBits<W> protect;
  std::size_t phase = 0; // budget index; 0 when budgets are uniform

  friend bool operator==(const SearchState &, const SearchState &) = default;
};

template <std::size_t W> struct SearchStateHash {
  std::size_t operator()(const SearchState<W> &s) const {
    return s.burned.hash() * 31 + s.protect.hash() * 7 + s.phase;
  }
};

/// Bitset view of a graph plus the transition function of the process.
template <std::size_t W> class SearchSpace {
public:
  using Bits = FixedBits<W>;

  SearchSpace(const Graph &g, const Instance &instance)
      : n_(g.vertex_count()), adj_(g.vertex_count()), instance_(instance) {
    for (auto [u, v] : g.edges()) {
      adj_[u].set(v);
      adj_[v].set(u);
    }
    for (std::size_t v = 0; v < n_; ++v) {
      all_.set(v);
    }
  }

  std::size_t size() const { return n_; }
  const Bits &all() const { return all_; }
  const Bits &adjacent(std::size_t v) const { return adj_[v]; }

  Bits neighbourhood(const Bits &set) const {
    Bits out;
    set.for_each([&](std::size_t v) { out |= adj_[v]; });
    return out;
  }

  /// Vertices the next spreading phase burns.
  Bits spread(const Bits &burned, const Bits &protect) const {
    return neighbourhood(burned) - burned - protect;
  }

  SearchState<W> initial() const {
    SearchState<W> s;
    for (Vertex v : instance_.sources()) {
      s.burned.set(v);
    }
    return s;
  }

  int budget(std::size_t step) const { return instance_.budget_at(step); }

  std::size_t phase_of(std::size_t step) const {
    return instance_.uniform_budget()
               ? 0
               : std::min(step, instance_.budgets().size());
  }

private:
  std::size_t n_;
  std::vector<Bits> adj_;
  Bits all_;
  const Instance &instance_;
};

/// Calls f(subset) for each subset of `pool` with min_size <= |subset| <=
/// max_size, by size then lexicographically; stops early when f returns true.
template <typename F>
bool for_each_subset(const VertexList &pool, std::size_t min_size,
                     std::size_t max_size, F &&f) {
  max_size = std::min(max_size, pool.size());
  VertexList pick;
  std::vector<std::size_t> idx;
  for (std::size_t size = min_size; size <= max_size; ++size) {
    idx.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
      idx[i] = i;
    }
    while (true) {
      pick.clear();
      for (auto i : idx) {
        pick.push_back(pool[i]);
      }
      if (f(pick)) {
        return true;
      }
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == pool.size() - size + i - 1) {
        --i;
      }
      if (i == 0) {
        break;
      }
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) {
        idx[j] = idx[j - 1] + 1;
      }
    }
  }
  return false;
}

template <std::size_t W> VertexList to_list(const FixedBits<W> &bits) {
  VertexList out;
  bits.for_each([&](std::size_t v) { out.push_back(static_cast<Vertex>(v)); });
  return out;
}

template <std::size_t W> FixedBits<W> to_bits(const VertexList &list) {
  FixedBits<W> out;
  for (Vertex v : list) {
    out.set(v);
  }
  return out;
}

/// Minimum number of burned vertices reachable from a state, with the
/// protection choice that attains it. Candidates are generated per state by
/// `choices`, which must call its sink once per allowed protection set.
template <std::size_t W, typename Choices> class OptimalSearch {
public:
  OptimalSearch(const SearchSpace<W> &space, Choices choices)
      : space_(space), choices_(std::move(choices)) {}

  SolveResult solve() {
    auto start = space_.initial();
    SolveResult result;
    result.min_burned = value(start, 1);
    // Replay stored choices to recover the witness.
    auto state = start;
    for (std::size_t t = 1;; ++t) {
      state.phase = space_.phase_of(t);
      const auto &entry = memo_.at(state);
      auto protect = state.protect | entry.choice;
      auto newly = space_.spread(state.burned, protect);
      result.witness.steps.push_back(to_list(entry.choice));
      if (newly.none()) {
        break;
      }
      state.burned |= newly;
      state.protect = protect;
    }
    while (!result.witness.steps.empty() &&
           result.witness.steps.back().empty()) {
      result.witness.steps.pop_back();
    }
    result.nodes_explored = memo_.size();
    return result;
  }

private:
  struct Entry {
    int value;
    FixedBits<W> choice;
  };

  int value(SearchState<W> state, std::size_t step) {
    state.phase = space_.phase_of(step);
    if (auto it = memo_.find(state); it != memo_.end()) {
      return it->second.value;
    }
    Entry best{std::numeric_limits<int>::max(), {}};
    choices_(state, step, [&](const VertexList &pick) {
      auto choice = to_bits<W>(pick);
      auto protect = state.protect | choice;
      auto newly = space_.spread(state.burned, protect);
      int v = newly.none() ? static_cast<int>(state.burned.count())
                           : value({state.burned | newly, protect, 0}, step + 1);
      if (v < best.value) {
        best = {v, choice};
      }
    });
    memo_.emplace(state, best);
    return best.value;
  }

  const SearchSpace<W> &space_;
  Choices choices_;
  std::unordered_map<SearchState<W>, Entry, SearchStateHash<W>> memo_;
};

template <std::size_t W>
SolveResult exhaustive_search(const Instance &instance) {
  SearchSpace<W> space(instance.graph(), instance);
  auto choices = [&space](const SearchState<W> &s, std::size_t step,
                          auto &&sink) {
    auto pool = to_list(space.all() - s.burned - s.protect);
    for_each_subset(pool, 0, static_cast<std::size_t>(space.budget(step)),
                    [&](const VertexList &pick) {
                      sink(pick);
                      return false;
                    });
  };
  return OptimalSearch<W, decltype(choices)>(space, choices).solve();
}

template <std::size_t W> SolveResult tree_search(const Instance &instance) {
  SearchSpace<W> space(instance.graph(), instance);
  // Only vertices adjacent to the fire; protecting more never hurts, so the
  // budget is always used in full.
  auto choices = [&space](const SearchState<W> &s, std::size_t step,
                          auto &&sink) {
    auto pool = to_list(space.spread(s.burned, s.protect));
    auto take = std::min(pool.size(),
                         static_cast<std::size_t>(space.budget(step)));
    for_each_subset(pool, take, take, [&](const VertexList &pick) {
      sink(pick);
      return false;
    });
  };
  return OptimalSearch<W, decltype(choices)>(space, choices).solve();
}

template <template <std::size_t> class Fn, typename... Args>
auto dispatch_width(std::size_t n, Args &&...args) {
  if (n <= 64) {
    return Fn<1>::run(std::forward<Args>(args)...);
  }
  if (n <= 256) {
    return Fn<4>::run(std::forward<Args>(args)...);
  }
  if (n <= kSearchVertexLimit) {
    return Fn<kSearchVertexLimit / 64>::run(std::forward<Args>(args)...);
  }
  throw SizeCapExceeded(n, kSearchVertexLimit, "search state");
}

template <std::size_t W> struct ExhaustiveFn {
  static SolveResult run(const Instance &i) { return exhaustive_search<W>(i); }
};
template <std::size_t W> struct TreeFn {
  static SolveResult run(const Instance &i) { return tree_search<W>(i); }
};

} // namespace detail

/// Ground truth: minimum burned count over every valid strategy, where each
/// step may protect any set of at most b unburned, unprotected vertices.
/// Memoised on the (burned, protected) pair.
inline SolveResult exhaustive_optimal(const Instance &instance,
                                      std::size_t cap = kDefaultExhaustiveCap) {
  const std::size_t n = instance.graph().vertex_count();
  if (n > cap) {
    throw SizeCapExceeded(n, cap, "exhaustive search");
  }
  return detail::dispatch_width<detail::ExhaustiveFn>(n, instance);
}

/// Optimum on trees, searching only strategies that protect vertices
/// adjacent to the fire at every step.
inline SolveResult tree_optimal(const Instance &instance) {
  if (!is_tree(instance.graph())) {
    throw std::invalid_argument("tree_optimal requires a tree");
  }
  return detail::dispatch_width<detail::TreeFn>(instance.graph().vertex_count(),
                                                instance);
}

namespace detail {

/// Decides whether at most k vertices can burn. The search lives on N^k(s):
/// a run burning at most k vertices takes at most k steps and never lets the
/// fire leave distance k-1 of s, so nothing outside N^k(s) matters.
template <std::size_t W> class BoundedBurnSearch {
public:
  BoundedBurnSearch(const Instance &instance, int k)
      : instance_(instance), k_(k) {
    const Graph &g = instance.graph();
    region_ = k_neighborhood(g, instance.source(), k);
    std::vector<int> local(g.vertex_count(), -1);
    for (std::size_t i = 0; i < region_.size(); ++i) {
      local[region_[i]] = static_cast<int>(i);
    }
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) {
      if (local[u] >= 0 && local[v] >= 0) {
        edges.emplace_back(local[u], local[v]);
      }
    }
    local_graph_ = Graph(region_.size(), edges);
    adj_.resize(region_.size());
    for (auto [u, v] : local_graph_.edges()) {
      adj_[u].set(v);
      adj_[v].set(u);
    }
    start_.set(static_cast<std::size_t>(local[instance.source()]));
  }

  Decision run() {
    Decision d;
    d.yes = search(start_, {}, 1);
    d.nodes_explored = nodes_;
    if (d.yes) {
      // Map local ids back; steps were pushed deepest first.
      std::reverse(path_.begin(), path_.end());
      for (auto &step : path_) {
        VertexList global;
        for (Vertex v : step) {
          global.push_back(region_[v]);
        }
        d.witness.steps.push_back(std::move(global));
      }
      while (!d.witness.steps.empty() && d.witness.steps.back().empty()) {
        d.witness.steps.pop_back();
      }
    }
    return d;
  }

private:
  using Bits = FixedBits<W>;

  Bits spread(const Bits &burned, const Bits &protect) const {
    Bits out;
    burned.for_each([&](std::size_t v) { out |= adj_[v]; });
    return out - burned - protect;
  }

  /// Unburned, unprotected vertices the fire can reach within `radius` more
  /// spreading phases. With r more vertices allowed to burn the fire gets at
  /// most r+1 spreads deep, so protections farther away cannot matter.
  Bits reachable(const Bits &burned, const Bits &protect, int radius) const {
    Bits seen = burned;
    Bits layer = burned;
    Bits out;
    for (int d = 0; d < radius && !layer.none(); ++d) {
      layer = spread(layer, protect | seen);
      seen |= layer;
      out |= layer;
    }
    return out;
  }

  bool search(const Bits &burned, const Bits &protect, std::size_t step) {
    ++nodes_;
    const int burned_count = static_cast<int>(burned.count());
    if (burned_count > k_ || step > static_cast<std::size_t>(k_)) {
      return false;
    }
    const int budget = instance_.budget_at(step);
    auto threatened = spread(burned, protect);
    if (burned_count +
            std::max(0, static_cast<int>(threatened.count()) - budget) >
        k_) {
      return false;
    }
    detail::SearchState<W> key{burned, protect,
                               instance_.uniform_budget()
                                   ? 0
                                   : std::min(step, instance_.budgets().size())};
    if (failed_.count(key) != 0) {
      return false;
    }
    auto pool = to_list(reachable(burned, protect, k_ - burned_count + 1));
    auto take = std::min(pool.size(), static_cast<std::size_t>(budget));
    bool found = for_each_subset(pool, take, take, [&](const VertexList &pick) {
      auto next_protect = protect | to_bits<W>(pick);
      auto newly = spread(burned, next_protect);
      if (newly.none() || search(burned | newly, next_protect, step + 1)) {
        path_.push_back(pick);
        return true;
      }
      return false;
    });
    if (!found) {
      failed_.insert(key);
    }
    return found;
  }

  const Instance &instance_;
  int k_;
  VertexList region_;
  Graph local_graph_;
  std::vector<Bits> adj_;
  Bits start_;
  std::uint64_t nodes_ = 0;
  std::vector<VertexList> path_;
  std::unordered_set<detail::SearchState<W>, detail::SearchStateHash<W>>
      failed_;
};

template <std::size_t W> struct BoundedBurnFn {
  static Decision run(const Instance &i, int k) {
    return BoundedBurnSearch<W>(i, k).run();
  }
};

inline void require_single_source(const Instance &instance) {
  if (instance.sources().size() != 1) {
    throw std::invalid_argument("this solver takes a single fire source");
  }
}

} // namespace detail

/// Decision form with threshold k: can the fire be held to at most k burned
/// vertices? With b >= max degree the whole neighbourhood of s is protected
/// at step one; otherwise a bounded search over N^k(s) answers.
inline Decision fpt_decide_k_delta(const Instance &instance) {
  detail::require_single_source(instance);
  if (!instance.threshold()) {
    throw std::invalid_argument("decision needs a threshold k");
  }
  const int k = *instance.threshold();
  const Graph &g = instance.graph();
  if (static_cast<std::size_t>(instance.budget_at(1)) >= g.max_degree()) {
    Decision d;
    d.yes = true;
    const auto &nbrs = g.neighbors(instance.source());
    if (!nbrs.empty()) {
      d.witness.steps.push_back(nbrs);
    }
    return d;
  }
  auto region = k_neighborhood(g, instance.source(), k);
  return detail::dispatch_width<detail::BoundedBurnFn>(region.size(), instance,
                                                       k);
}

/// Optimisation by iterating the decision procedure over k' = 1, 2, ...
/// The first yes is the optimum. The burn bound for (pathwidth, max degree)
/// caps the loop, together with |V|.
inline SolveResult fpt_pw_delta(const Instance &instance,
                                std::size_t pathwidth_cap =
                                    kDefaultPathwidthCap) {
  detail::require_single_source(instance);
  const Graph &g = instance.graph();
  std::uint64_t cutoff = g.vertex_count();
  if (g.vertex_count() <= pathwidth_cap) {
    auto pw = exact_pathwidth(g, pathwidth_cap).value;
    cutoff = std::min<std::uint64_t>(
        cutoff, bound_pw_delta(static_cast<std::uint64_t>(pw), g.max_degree(),
                               1));
  }
  SolveResult result;
  for (std::uint64_t k = 1; k <= cutoff; ++k) {
    auto d = fpt_decide_k_delta(instance.with_threshold(static_cast<int>(k)));
    result.nodes_explored += d.nodes_explored;
    if (d.yes) {
      result.min_burned = static_cast<int>(k);
      result.witness = std::move(d.witness);
      return result;
    }
  }
  throw std::logic_error("no strategy found within the burn bound");
}

/// Baseline: each step protects the threatened vertices that shield the most
/// unburned vertices (size of the region each one cuts off), lowest id on
/// ties. Not optimal.
inline SolveResult greedy_baseline(const Instance &instance) {
  const Graph &g = instance.graph();
  Propagation fire(g, instance.sources());
  Strategy plan;
  while (!fire.stopped()) {
    auto threatened = fire.threatened();
    if (threatened.empty()) {
      fire.spread();
      break;
    }
    std::vector<char> blocked(g.vertex_count(), 0);
    for (Vertex v : threatened) {
      blocked[v] = 1;
    }
    std::vector<std::pair<long, Vertex>> ranked;
    for (Vertex v : threatened) {
      // Region reachable from v through free vertices, other threatened
      // vertices excluded.
      std::vector<char> seen(g.vertex_count(), 0);
      VertexList stack{v};
      seen[v] = 1;
      long size = 0;
      while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        ++size;
        for (Vertex w : g.neighbors(u)) {
          if (!seen[w] && !blocked[w] &&
              fire.state(w) == Propagation::State::Unburned) {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
      }
      ranked.emplace_back(-size, v);
    }
    std::sort(ranked.begin(), ranked.end());
    std::size_t budget =
        static_cast<std::size_t>(instance.budget_at(
            static_cast<std::size_t>(fire.next_step())));
    VertexList pick;
    for (std::size_t i = 0; i < ranked.size() && i < budget; ++i) {
      pick.push_back(ranked[i].second);
    }
    std::sort(pick.begin(), pick.end());
    fire.protect(pick, static_cast<int>(budget));
    plan.steps.push_back(pick);
    fire.spread();
  }
  while (!plan.steps.empty() && plan.steps.back().empty()) {
    plan.steps.pop_back();
  }
  SolveResult result;
  result.min_burned = static_cast<int>(simulate(instance, plan).burned.size());
  result.witness = std::move(plan);
  return result;
}

} // namespace firefighter
