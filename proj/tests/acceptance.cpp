// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "firefighter/firefighter.hpp"

using namespace firefighter;

namespace {

// Corpus seeds and sizes are fixed so every run checks the same instances.
constexpr std::uint64_t kSeedFpt = 20240601;
constexpr std::uint64_t kSeedBubble = 20240602;
constexpr int kRandomFptGraphs = 500;
constexpr int kRandomBubbleGraphs = 200;
constexpr std::size_t kMaxTree = 10;
constexpr std::size_t kMaxFptOrder = 8;
constexpr std::size_t kMaxWidthOrder = 7;

const CubicMonotoneFormula kSix{
    6, {{0, 2, 5}, {0, 1, 2}, {2, 3, 4}, {1, 3, 4}, {0, 3, 5}, {1, 5, 4}}};
const CubicMonotoneFormula kThree{3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}};

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Checker {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void expect(bool ok, const std::function<std::string()> &what) {
    ++checks;
    if (!ok) {
      if (failures == 0) {
        first = what();
      }
      ++failures;
    }
  }

  Outcome outcome(const std::string &unit) const {
    std::ostringstream s;
    s << checks << " " << unit << ", " << failures << " mismatches";
    if (failures) {
      s << "; first: " << first;
    }
    return {failures == 0, s.str()};
  }
};

std::string describe(const Graph &g) {
  std::ostringstream s;
  s << "n=" << g.vertex_count() << " edges=[";
  for (auto [u, v] : g.edges()) {
    s << u << "-" << v << " ";
  }
  s << "]";
  return s.str();
}

// Burn count after the variable phase and after every clause.
std::vector<std::int64_t> checkpoints(const ReductionTree &tree,
                                      const Strategy &plan) {
  Propagation fire(tree.graph, {tree.source});
  const std::size_t n = static_cast<std::size_t>(tree.variable_count);
  std::vector<std::int64_t> out;
  std::size_t t = 0;
  static const VertexList kNone;
  while (!fire.stopped()) {
    const auto &step = t < plan.steps.size() ? plan.steps[t] : kNone;
    if (fire.protect(step, tree.budget)) {
      return {};
    }
    fire.spread();
    ++t;
    if (t == 2 * n || (t > 2 * n && (t - 2 * n) % 3 == 0 && t <= 5 * n)) {
      out.push_back(static_cast<std::int64_t>(fire.burned_count()));
    }
  }
  return out;
}

Outcome reduction_exactness() {
  Checker c;
  Assignment six_tau(6, false);
  six_tau[0] = six_tau[4] = true;
  struct Case {
    const CubicMonotoneFormula *f;
    std::int64_t k;
    std::int64_t phase1;
    std::vector<std::int64_t> per_clause;
  };
  std::ostringstream burned;
  for (const Case &cs : {Case{&kSix, 230, 65, {50, 41, 32, 23, 14, 5}},
                         Case{&kThree, 65, 23, {23, 14, 5}}}) {
    auto tree = build_reduction(*cs.f);
    auto ext = extend_formula(*cs.f);
    auto solved = solve_1in3(*cs.f);
    c.expect(solved.has_value(), [] { return "no assignment found"; });
    if (!solved) {
      continue;
    }
    // The brute-force assignment, and for n = 6 also {x1, x5}.
    std::vector<Assignment> taus{*solved};
    if (cs.f == &kSix) {
      taus.push_back(six_tau);
    }
    for (const auto &tau : taus) {
      auto plan = strategy_from_assignment(tree, ext, tau);
      auto trace = simulate(tree.instance(), plan);
      const auto total = static_cast<std::int64_t>(trace.burned.size());
      burned << total << " ";
      c.expect(tree.k == cs.k, [&] { return "k=" + std::to_string(tree.k); });
      c.expect(total == cs.k,
               [&] { return "burned " + std::to_string(total); });
      auto marks = checkpoints(tree, plan);
      std::vector<std::int64_t> increments;
      for (std::size_t j = 1; j < marks.size(); ++j) {
        increments.push_back(marks[j] - marks[j - 1]);
      }
      c.expect(!marks.empty() && marks[0] == cs.phase1, [&] {
        return "phase1 " + (marks.empty() ? "?" : std::to_string(marks[0]));
      });
      c.expect(increments == cs.per_clause,
               [] { return std::string("per-clause increments differ"); });
    }
  }
  auto o = c.outcome("checks");
  o.detail = "burned " + burned.str() + "(expected 230 230 65); " + o.detail;
  return o;
}

Outcome pathwidth_certificate() {
  Checker c;
  std::ostringstream widths;
  for (int b : {1, 2}) {
    for (const auto *f : {&kSix, &kThree}) {
      auto tree = build_reduction(*f, b);
      int w = -1;
      try {
        w = validate_path_decomposition(tree.graph,
                                        path_decomposition_pw3(tree));
      } catch (const std::exception &e) {
        c.expect(false, [&] { return std::string(e.what()); });
        continue;
      }
      widths << "n=" << f->variable_count << ",b=" << b << ":" << w << " ";
      c.expect(w <= 3, [&] { return "width " + std::to_string(w); });
    }
  }
  auto o = c.outcome("decompositions");
  o.detail = "widths " + widths.str() + "; " + o.detail;
  return o;
}

Outcome tree_oracle_equivalence() {
  Checker c;
  std::size_t trees = 0;
  for (std::size_t n = 1; n <= kMaxTree; ++n) {
    for (const auto &t : corpus::all_trees(n)) {
      ++trees;
      for (Vertex s = 0; s < n; ++s) {
        for (int b : {1, 2}) {
          auto instance = Instance::single(t, s, b);
          auto tree = tree_optimal(instance);
          auto ex = exhaustive_optimal(instance, kMaxTree);
          c.expect(tree.min_burned == ex.min_burned, [&] {
            return describe(t) + " s=" + std::to_string(s) +
                   " b=" + std::to_string(b);
          });
          c.expect(static_cast<int>(simulate(instance, tree.witness)
                                        .burned.size()) == tree.min_burned,
                   [&] { return "tree witness replay " + describe(t); });
        }
      }
    }
  }
  auto o = c.outcome("checks");
  o.detail = std::to_string(trees) + " trees; " + o.detail;
  return o;
}

std::vector<Graph> fpt_corpus() {
  std::vector<Graph> graphs;
  for (std::size_t n = 1; n <= kMaxFptOrder; ++n) {
    auto trees = corpus::all_trees(n);
    graphs.insert(graphs.end(), trees.begin(), trees.end());
  }
  // Every connected graph up to seven vertices as well.
  for (std::size_t n = 2; n <= kMaxWidthOrder; ++n) {
    for (auto &g : corpus::all_connected_graphs(n)) {
      if (!is_tree(g)) {
        graphs.push_back(std::move(g));
      }
    }
  }
  std::mt19937_64 rng(kSeedFpt);
  std::uniform_int_distribution<std::size_t> order(2, kMaxFptOrder);
  std::uniform_real_distribution<double> density(0.1, 0.6);
  for (int i = 0; i < kRandomFptGraphs; ++i) {
    graphs.push_back(corpus::random_connected_graph(order(rng), density(rng),
                                                    rng));
  }
  return graphs;
}

Outcome fpt_consistency(const std::vector<Graph> &graphs) {
  Checker c;
  for (const auto &g : graphs) {
    const int n = static_cast<int>(g.vertex_count());
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
      for (int b : {1, 2}) {
        auto instance = Instance::single(g, s, b);
        const int opt = exhaustive_optimal(instance).min_burned;
        auto where = [&] {
          return describe(g) + " s=" + std::to_string(s) +
                 " b=" + std::to_string(b);
        };
        for (int k = 1; k <= n; ++k) {
          auto d = fpt_decide_k_delta(instance.with_threshold(k));
          c.expect(d.yes == (opt <= k),
                   [&] { return where() + " k=" + std::to_string(k); });
          if (d.yes) {
            auto burned = simulate(instance, d.witness).burned.size();
            c.expect(static_cast<int>(burned) <= k,
                     [&] { return where() + " witness over k"; });
          }
        }
        auto fpt = fpt_pw_delta(instance);
        c.expect(fpt.min_burned == opt, [&] { return where() + " optimum"; });
      }
    }
  }
  auto o = c.outcome("checks");
  o.detail = std::to_string(graphs.size()) + " graphs; " + o.detail;
  return o;
}

Outcome width_inequalities() {
  Checker c;
  std::size_t graphs = 0;
  for (std::size_t n = 1; n <= kMaxWidthOrder; ++n) {
    for (const auto &g : corpus::all_connected_graphs(n)) {
      ++graphs;
      const int cw = exact_cutwidth(g).value;
      const int pw = exact_pathwidth(g).value;
      const int bw = exact_bandwidth(g).value;
      const int delta = static_cast<int>(g.max_degree());
      c.expect(pw <= cw, [&] { return "pw > cw " + describe(g); });
      c.expect(delta <= 2 * cw, [&] { return "D > 2cw " + describe(g); });
      c.expect(cw <= pw * delta, [&] { return "cw > pw*D " + describe(g); });
      c.expect(cw <= bw * (bw + 1) / 2,
               [&] { return "cw > bw(bw+1)/2 " + describe(g); });
    }
  }
  auto o = c.outcome("inequalities");
  o.detail = std::to_string(graphs) + " graphs; " + o.detail;
  return o;
}

Outcome bubble_soundness() {
  Checker c;
  std::mt19937_64 rng(kSeedBubble);
  std::uniform_int_distribution<std::size_t> order(2, kMaxFptOrder);
  std::uniform_real_distribution<double> density(0.1, 0.6);
  std::size_t runs = 0;
  std::size_t proper = 0; // runs where some bubble leaves vertices outside
  for (int i = 0; i < kRandomBubbleGraphs; ++i) {
    Graph g = corpus::random_connected_graph(order(rng), density(rng), rng);
    auto layout = exact_cutwidth(g).certificate;
    std::vector<VertexList> source_sets;
    for (Vertex a = 0; a < g.vertex_count(); ++a) {
      source_sets.push_back({a});
      for (Vertex b = a + 1; b < g.vertex_count(); ++b) {
        source_sets.push_back({a, b});
      }
    }
    for (const auto &sources : source_sets) {
      ++runs;
      auto r = isolation_strategy(g, layout, sources);
      const int last = static_cast<int>(g.vertex_count()) - 1;
      proper += std::any_of(r.bubbles.begin(), r.bubbles.end(),
                            [&](const Bubble &b) {
                              return b.left > 0 || b.right < last;
                            })
                    ? 1
                    : 0;
      auto where = [&] {
        std::string s = describe(g) + " layout=[";
        for (Vertex v : layout.order()) {
          s += std::to_string(v) + " ";
        }
        s += "] F={";
        for (Vertex v : sources) {
          s += std::to_string(v) + " ";
        }
        return s + "}";
      };
      c.expect(r.confined(), [&] {
        return "escaped " + std::to_string(r.escaped.size()) + " " + where();
      });
      c.expect(r.within_bound(), [&] { return "over bound " + where(); });
    }
  }
  auto o = c.outcome("checks");
  o.detail = std::to_string(kRandomBubbleGraphs) + " graphs, " +
             std::to_string(runs) + " source sets, " + std::to_string(proper) +
             " with a bubble smaller than the graph; " + o.detail;
  return o;
}

Outcome budget_covers_degree(const std::vector<Graph> &graphs) {
  Checker c;
  std::size_t instances = 0;
  for (const auto &g : graphs) {
    const int delta = std::max<int>(1, static_cast<int>(g.max_degree()));
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
      for (int b : {delta, delta + 1}) {
        ++instances;
        auto instance = Instance::single(g, s, b, 1);
        auto d = fpt_decide_k_delta(instance);
        c.expect(d.yes, [&] { return "no at k=1 " + describe(g); });
        if (d.yes) {
          c.expect(simulate(instance, d.witness).burned.size() == 1,
                   [&] { return "witness burns more " + describe(g); });
        }
      }
    }
  }
  auto o = c.outcome("checks");
  o.detail = std::to_string(instances) + " instances; " + o.detail;
  return o;
}

Outcome augmented_reduction() {
  Checker c;
  auto tree = build_reduction(kThree, 2);
  auto plan =
      strategy_from_assignment(tree, extend_formula(kThree), *solve_1in3(kThree));
  auto burned = simulate(tree.instance(), plan).burned.size();
  c.expect(tree.k == 80, [&] { return "k=" + std::to_string(tree.k); });
  c.expect(burned == 80, [&] { return "burned " + std::to_string(burned); });
  auto o = c.outcome("checks");
  o.detail = "k=" + std::to_string(tree.k) + " burned=" +
             std::to_string(burned) + "; " + o.detail;
  return o;
}

int report(int id, const char *name, const std::function<Outcome()> &run) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = run();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  std::printf("%s criterion %d: %s (%s) [%.1fs]\n", o.pass ? "PASS" : "FAIL",
              id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
  return o.pass ? 0 : 1;
}

} // namespace

int main() {
  int failed = 0;
  const auto graphs = fpt_corpus();
  failed += report(1, "reduction burns exactly k", reduction_exactness);
  failed += report(2, "width-3 path decomposition", pathwidth_certificate);
  failed += report(3, "tree solver equals exhaustive on all trees <= 10",
                   tree_oracle_equivalence);
  failed += report(4, "bounded search equals exhaustive",
                   [&] { return fpt_consistency(graphs); });
  failed += report(6, "width inequalities on connected graphs <= 7",
                   width_inequalities);
  failed += report(7, "isolation confines bubbles within the bound",
                   bubble_soundness);
  failed += report(8, "budget >= max degree holds the fire at one vertex",
                   [&] { return budget_covers_degree(graphs); });
  failed += report(9, "augmented reduction burns k + 5n",
                   augmented_reduction);
  // Last, so that it audits every simulation above.
  failed += report(5, "steps never exceed burned vertices", [] {
    auto &stats = simulation_stats();
    Outcome o;
    o.pass = stats.runs > 0 && stats.step_bound_violations == 0;
    o.detail = std::to_string(stats.runs.load()) + " simulations, " +
               std::to_string(stats.step_bound_violations.load()) +
               " violations";
    return o;
  });
  std::printf("%d of 9 criteria failed\n", failed);
  return failed;
}
