#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "firefighter/graph.hpp"

namespace firefighter {

/// steps[t-1] holds the vertices protected at step t.
struct Strategy {
  std::vector<VertexList> steps;

  friend bool operator==(const Strategy &, const Strategy &) = default;
};

/// A firefighter instance: graph, fire sources, per-step budgets, and an
/// optional burn threshold k for the decision form. budgets[t-1] is the cap
/// at step t; the last entry repeats for later steps.
class Instance {
public:
  static Instance single(Graph graph, Vertex source, int budget,
                         std::optional<int> threshold = std::nullopt) {
    if (budget < 1) {
      throw std::invalid_argument("budget must be >= 1");
    }
    return Instance(std::make_shared<const Graph>(std::move(graph)), {source},
                    {budget}, threshold);
  }

  static Instance multi(Graph graph, VertexList sources,
                        std::vector<int> budgets,
                        std::optional<int> threshold = std::nullopt) {
    return Instance(std::make_shared<const Graph>(std::move(graph)),
                    std::move(sources), std::move(budgets), threshold);
  }

  const Graph &graph() const noexcept { return *graph_; }
  const VertexList &sources() const noexcept { return sources_; }
  Vertex source() const { return sources_.front(); }
  const std::vector<int> &budgets() const noexcept { return budgets_; }
  std::optional<int> threshold() const noexcept { return threshold_; }

  int budget_at(std::size_t step) const {
    return budgets_[std::min(step, budgets_.size()) - 1];
  }
  bool uniform_budget() const {
    return std::all_of(budgets_.begin(), budgets_.end(),
                       [&](int b) { return b == budgets_.front(); });
  }

  Instance with_threshold(std::optional<int> k) const {
    return Instance(graph_, sources_, budgets_, k);
  }

private:
  Instance(std::shared_ptr<const Graph> graph, VertexList sources,
           std::vector<int> budgets, std::optional<int> threshold)
      : graph_(std::move(graph)), sources_(std::move(sources)),
        budgets_(std::move(budgets)), threshold_(threshold) {
    if (sources_.empty()) {
      throw std::invalid_argument("at least one fire source is required");
    }
    for (Vertex s : sources_) {
      if (!graph_->contains(s)) {
        throw std::out_of_range("source " + std::to_string(s) +
                                " not in graph");
      }
    }
    std::sort(sources_.begin(), sources_.end());
    if (std::adjacent_find(sources_.begin(), sources_.end()) !=
        sources_.end()) {
      throw std::invalid_argument("duplicate fire source");
    }
    if (budgets_.empty()) {
      throw std::invalid_argument("budget sequence must be nonempty");
    }
    for (int b : budgets_) {
      if (b < 0) {
        throw std::invalid_argument("budgets must be >= 0");
      }
    }
    if (threshold_ && *threshold_ < 1) {
      throw std::invalid_argument("threshold k must be >= 1");
    }
  }

  std::shared_ptr<const Graph> graph_;
  VertexList sources_;
  std::vector<int> budgets_;
  std::optional<int> threshold_;
};

struct StepRecord {
  VertexList protected_now;
  VertexList newly_burned;

  friend bool operator==(const StepRecord &, const StepRecord &) = default;
};

struct Trace {
  std::vector<StepRecord> per_step;
  VertexList burned;
  VertexList protected_vertices;
  VertexList saved;
  int step_count = 0;

  friend bool operator==(const Trace &, const Trace &) = default;
};

struct StrategyViolation {
  enum class Kind {
    UnknownVertex,
    BudgetExceeded,
    ProtectsBurned,
    AlreadyProtected,
    EntriesAfterStop,
  };

  Kind kind;
  int step;
  std::optional<Vertex> vertex;

  std::string message() const {
    std::string where = "step " + std::to_string(step);
    std::string who = vertex ? " (vertex " + std::to_string(*vertex) + ")" : "";
    switch (kind) {
    case Kind::UnknownVertex:
      return where + ": unknown vertex" + who;
    case Kind::BudgetExceeded:
      return where + ": budget exceeded";
    case Kind::ProtectsBurned:
      return where + ": protecting a burned vertex" + who;
    case Kind::AlreadyProtected:
      return where + ": vertex already protected" + who;
    case Kind::EntriesAfterStop:
      return where + ": strategy continues after the fire stopped";
    }
    return where;
  }
};

class StrategyError : public std::invalid_argument {
public:
  explicit StrategyError(StrategyViolation v)
      : std::invalid_argument(v.message()), violation_(v) {}
  const StrategyViolation &violation() const noexcept { return violation_; }

private:
  StrategyViolation violation_;
};

/// Process-wide counters over every completed simulation, used to audit the
/// step bound (steps <= burned vertices) across whole test runs.
struct SimulationStats {
  std::atomic<std::uint64_t> runs{0};
  std::atomic<std::uint64_t> step_bound_violations{0};
};

inline SimulationStats &simulation_stats() {
  static SimulationStats stats;
  return stats;
}

/// Step-by-step burn/protect process. Each step is protect() then spread();
/// the process has stopped once a spread() burns nothing.
class Propagation {
public:
  enum class State : std::uint8_t { Unburned, Burned, Protected };

  Propagation(const Graph &g, const VertexList &sources)
      : g_(&g), state_(g.vertex_count(), State::Unburned) {
    for (Vertex s : sources) {
      if (!g.contains(s)) {
        throw std::out_of_range("source " + std::to_string(s) +
                                " not in graph");
      }
      if (state_[s] != State::Burned) {
        state_[s] = State::Burned;
        frontier_.push_back(s);
        ++burned_count_;
      }
    }
    std::sort(frontier_.begin(), frontier_.end());
  }

  const Graph &graph() const noexcept { return *g_; }
  /// Index of the step about to run (1-based).
  int next_step() const noexcept { return step_ + 1; }
  bool stopped() const noexcept { return stopped_; }
  std::size_t burned_count() const noexcept { return burned_count_; }
  State state(Vertex v) const { return state_.at(v); }
  bool is_burned(Vertex v) const { return state_.at(v) == State::Burned; }
  bool is_protected(Vertex v) const {
    return state_.at(v) == State::Protected;
  }

  /// Unburned, unprotected vertices adjacent to a burned vertex. Sorted.
  VertexList threatened() const {
    VertexList out;
    for (Vertex v = 0; v < state_.size(); ++v) {
      if (state_[v] != State::Unburned) {
        continue;
      }
      for (Vertex w : g_->neighbors(v)) {
        if (state_[w] == State::Burned) {
          out.push_back(v);
          break;
        }
      }
    }
    return out;
  }

  /// Validates and applies the protection phase of the next step. Nothing is
  /// applied when a violation is returned.
  std::optional<StrategyViolation> protect(const VertexList &vertices,
                                           int budget) {
    const int step = next_step();
    if (static_cast<long>(vertices.size()) > budget) {
      return StrategyViolation{StrategyViolation::Kind::BudgetExceeded, step,
                               std::nullopt};
    }
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      Vertex v = vertices[i];
      if (!g_->contains(v)) {
        return StrategyViolation{StrategyViolation::Kind::UnknownVertex, step,
                                 v};
      }
      if (state_[v] == State::Burned) {
        return StrategyViolation{StrategyViolation::Kind::ProtectsBurned,
                                 step, v};
      }
      bool repeated = std::find(vertices.begin(), vertices.begin() + i, v) !=
                      vertices.begin() + i;
      if (state_[v] == State::Protected || repeated) {
        return StrategyViolation{StrategyViolation::Kind::AlreadyProtected,
                                 step, v};
      }
    }
    for (Vertex v : vertices) {
      state_[v] = State::Protected;
    }
    return std::nullopt;
  }

  /// Spreading phase: every unprotected neighbour of a burned vertex burns.
  VertexList spread() {
    VertexList newly;
    for (Vertex u : frontier_) {
      for (Vertex w : g_->neighbors(u)) {
        if (state_[w] == State::Unburned) {
          state_[w] = State::Burned;
          newly.push_back(w);
        }
      }
    }
    // Vertices burned before the previous spread cannot reach anything new:
    // their unburned neighbours were burned or protected back then.
    std::sort(newly.begin(), newly.end());
    burned_count_ += newly.size();
    frontier_ = newly;
    ++step_;
    if (newly.empty()) {
      stopped_ = true;
    }
    return newly;
  }

  VertexList collect(State which) const {
    VertexList out;
    for (Vertex v = 0; v < state_.size(); ++v) {
      if (state_[v] == which) {
        out.push_back(v);
      }
    }
    return out;
  }

private:
  const Graph *g_;
  std::vector<State> state_;
  VertexList frontier_;
  std::size_t burned_count_ = 0;
  int step_ = 0;
  bool stopped_ = false;
};

namespace detail {

template <typename BudgetAt>
std::variant<Trace, StrategyViolation>
run_strategy(const Graph &g, const VertexList &sources, BudgetAt budget_at,
             const Strategy &strategy) {
  Propagation fire(g, sources);
  Trace trace;
  const std::size_t planned = strategy.steps.size();
  while (true) {
    const std::size_t t = static_cast<std::size_t>(fire.next_step());
    static const VertexList kNothing;
    const VertexList &protect_now = t <= planned ? strategy.steps[t - 1]
                                                 : kNothing;
    if (auto v = fire.protect(protect_now, budget_at(t))) {
      return *v;
    }
    VertexList newly = fire.spread();
    if (!newly.empty() || t <= planned) {
      VertexList sorted_protect = protect_now;
      std::sort(sorted_protect.begin(), sorted_protect.end());
      trace.per_step.push_back({std::move(sorted_protect), std::move(newly)});
    }
    if (fire.stopped()) {
      if (planned > t) {
        return StrategyViolation{StrategyViolation::Kind::EntriesAfterStop,
                                 static_cast<int>(t + 1), std::nullopt};
      }
      break;
    }
  }
  trace.step_count = static_cast<int>(trace.per_step.size());
  trace.burned = fire.collect(Propagation::State::Burned);
  trace.protected_vertices = fire.collect(Propagation::State::Protected);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!fire.is_burned(v)) {
      trace.saved.push_back(v);
    }
  }
  auto &stats = simulation_stats();
  stats.runs.fetch_add(1, std::memory_order_relaxed);
  if (static_cast<std::size_t>(trace.step_count) > trace.burned.size()) {
    stats.step_bound_violations.fetch_add(1, std::memory_order_relaxed);
  }
  return trace;
}

} // namespace detail

/// Runs the strategy and returns the full history. Throws StrategyError on
/// the first invalid protection or on entries planned after the fire stops.
inline Trace simulate(const Instance &instance, const Strategy &strategy) {
  auto result = detail::run_strategy(
      instance.graph(), instance.sources(),
      [&](std::size_t t) { return instance.budget_at(t); }, strategy);
  if (auto *v = std::get_if<StrategyViolation>(&result)) {
    throw StrategyError(*v);
  }
  return std::get<Trace>(std::move(result));
}

inline Trace simulate_multi(const Graph &g, const VertexList &sources,
                            const std::vector<int> &budgets,
                            const Strategy &strategy) {
  return simulate(Instance::multi(g, sources, budgets), strategy);
}

inline std::optional<StrategyViolation>
validate_strategy(const Instance &instance, const Strategy &strategy) {
  auto result = detail::run_strategy(
      instance.graph(), instance.sources(),
      [&](std::size_t t) { return instance.budget_at(t); }, strategy);
  if (auto *v = std::get_if<StrategyViolation>(&result)) {
    return *v;
  }
  return std::nullopt;
}

} // namespace firefighter
