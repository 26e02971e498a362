#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "firefighter/firefighter.hpp"

namespace firefighter::cli {

enum ExitCode : int { kYes = 0, kNo = 1, kUsage = 2, kCapExceeded = 3 };

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw io::ParseError(0, "cannot read " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw io::ParseError(0, "cannot write " + path);
  }
}

struct InstanceArgs {
  std::string graph;
  std::vector<Vertex> sources;
  std::vector<int> budgets{1};

  void attach(CLI::App *cmd) {
    cmd->add_option("--graph", graph, "edge-list file")->required();
    cmd->add_option("--source,--sources", sources, "fire source(s)")
        ->required()
        ->delimiter(',');
    cmd->add_option("--budget,--budgets", budgets,
                    "firefighters per step (last value repeats)")
        ->delimiter(',');
  }

  Instance load(std::optional<int> k = std::nullopt) const {
    auto g = io::parse_edge_list(read_file(graph));
    return Instance::multi(std::move(g), sources, budgets, k);
  }
};

inline int cmd_simulate(const InstanceArgs &args, const std::string &strategy,
                        std::ostream &out) {
  auto instance = args.load();
  auto plan = io::parse_strategy(read_file(strategy));
  auto trace = simulate(instance, plan);
  out << io::trace_to_json(trace).dump(2) << '\n';
  return kYes;
}

inline int cmd_solve(const InstanceArgs &args, const std::string &algo,
                     std::size_t cap, std::ostream &out) {
  auto instance = args.load();
  SolveResult r;
  if (algo == "exhaustive") {
    r = exhaustive_optimal(instance, cap);
  } else if (algo == "tree") {
    r = tree_optimal(instance);
  } else if (algo == "fpt") {
    r = fpt_pw_delta(instance);
  } else {
    r = greedy_baseline(instance);
  }
  io::json j{{"algo", algo},
             {"minBurned", r.min_burned},
             {"nodesExplored", r.nodes_explored},
             {"strategy", io::strategy_to_json(r.witness)}};
  out << j.dump(2) << '\n';
  return kYes;
}

inline int cmd_decide(const InstanceArgs &args, int k, std::ostream &out) {
  auto d = fpt_decide_k_delta(args.load(k));
  io::json j{{"yes", d.yes}, {"k", k}, {"nodesExplored", d.nodes_explored}};
  if (d.yes) {
    j["witness"] = io::strategy_to_json(d.witness);
  }
  out << j.dump(2) << '\n';
  return d.yes ? kYes : kNo;
}

struct ReduceArgs {
  std::string cnf;
  int budget = 1;
  std::string out_graph;
  std::string out_labels;
  std::string assignment;
  std::string emit_strategy;
  std::string emit_decomposition;
};

inline int cmd_reduce(const ReduceArgs &a, std::ostream &out) {
  auto formula = io::parse_dimacs_cnf(read_file(a.cnf));
  if (auto problem = validate_cubic_monotone(formula)) {
    throw io::ParseError(0, "not a cubic monotone formula: " + *problem);
  }
  auto tree = build_reduction(formula, a.budget);
  write_file(a.out_graph, io::write_edge_list(tree.graph));
  write_file(a.out_labels, io::labels_to_json(tree).dump(2) + "\n");
  io::json summary{{"vertices", tree.graph.vertex_count()},
                   {"source", tree.source},
                   {"k", tree.k},
                   {"budget", tree.budget}};
  if (!a.emit_strategy.empty()) {
    auto ext = extend_formula(formula);
    std::optional<Assignment> tau;
    if (!a.assignment.empty()) {
      tau = io::parse_assignment(read_file(a.assignment),
                                 formula.variable_count);
    } else {
      tau = solve_1in3(formula);
    }
    if (!tau) {
      throw io::ParseError(0, "formula has no 1-in-3 satisfying assignment");
    }
    if (!is_satisfying(ext, *tau)) {
      throw io::ParseError(0, "assignment does not satisfy the formula");
    }
    auto plan = strategy_from_assignment(tree, ext, *tau);
    write_file(a.emit_strategy, io::strategy_to_json(plan).dump() + "\n");
    auto profile = expected_burn_profile(formula.variable_count);
    summary["expectedBurned"] =
        profile.total + (a.budget >= 2 ? 5 * formula.variable_count : 0);
  }
  if (!a.emit_decomposition.empty()) {
    write_file(a.emit_decomposition,
               io::write_decomposition(path_decomposition_pw3(tree)));
  }
  out << summary.dump(2) << '\n';
  return kYes;
}

inline int cmd_widths(const std::string &graph, const std::string &measure,
                      std::optional<std::size_t> cap, std::ostream &out) {
  auto g = io::parse_edge_list(read_file(graph));
  if (measure == "pw") {
    auto r = exact_pathwidth(g, cap.value_or(kDefaultPathwidthCap));
    out << "pw " << r.value << '\n' << io::write_decomposition(r.certificate);
  } else if (measure == "cw") {
    auto r = exact_cutwidth(g, cap.value_or(kDefaultLayoutCap));
    out << "cw " << r.value << '\n' << io::write_layout(r.certificate);
  } else {
    auto r = exact_bandwidth(g, cap.value_or(kDefaultLayoutCap));
    out << "bw " << r.value << '\n' << io::write_layout(r.certificate);
  }
  return kYes;
}

inline int cmd_bound(const std::string &graph, const std::string &layout_file,
                     const std::vector<Vertex> &sources,
                     const std::vector<int> &budgets, std::ostream &out) {
  auto g = io::parse_edge_list(read_file(graph));
  auto layout = io::parse_layout(read_file(layout_file));
  auto r = isolation_strategy(g, layout, sources, budgets);
  io::json bubbles = io::json::array();
  for (const auto &b : r.bubbles) {
    bubbles.push_back({{"sources", b.sources},
                       {"left", b.left},
                       {"right", b.right},
                       {"radius", b.radius}});
  }
  io::json j{{"cutwidth", r.cutwidth},
             {"burned", r.trace.burned.size()},
             {"bound", r.bound},
             {"confined", r.confined()},
             {"withinBound", r.within_bound()},
             {"escaped", r.escaped},
             {"bubbles", bubbles},
             {"strategy", io::strategy_to_json(r.strategy)},
             {"trace", io::trace_to_json(r.trace)}};
  out << j.dump(2) << '\n';
  return kYes;
}

struct BenchRow {
  std::string name;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t delta = 0;
  std::string cw = "-";
  std::string pw = "-";
  std::string bw = "-";
  std::size_t checks = 0;
  std::size_t mismatches = 0;
};

/// Oracle-equivalence and invariant sweep over one graph.
inline BenchRow bench_graph(const std::string &name, const Graph &g,
                            std::size_t cap) {
  BenchRow row{name, g.vertex_count(), g.edge_count(), g.max_degree()};
  auto check = [&row](bool ok) {
    ++row.checks;
    row.mismatches += ok ? 0 : 1;
  };
  const std::size_t n = g.vertex_count();
  std::optional<LinearLayout> cw_layout;
  if (n <= kDefaultLayoutCap) {
    auto cw = exact_cutwidth(g);
    auto bw = exact_bandwidth(g);
    auto pw = exact_pathwidth(g);
    cw_layout = cw.certificate;
    row.cw = std::to_string(cw.value);
    row.bw = std::to_string(bw.value);
    row.pw = std::to_string(pw.value);
    check(cutwidth_of_layout(g, cw.certificate) == cw.value);
    check(bandwidth_of_layout(g, bw.certificate) == bw.value);
    check(validate_path_decomposition(g, pw.certificate) == pw.value);
    if (is_connected(g) && n > 0) {
      auto delta = static_cast<int>(g.max_degree());
      check(pw.value <= cw.value);
      check(delta <= 2 * cw.value);
      check(cw.value <= pw.value * delta);
      check(cw.value <= bw.value * (bw.value + 1) / 2);
    }
  }
  for (Vertex s = 0; s < n; ++s) {
    for (int b : {1, 2}) {
      auto instance = Instance::single(g, s, b);
      std::optional<int> opt;
      if (n <= cap) {
        opt = exhaustive_optimal(instance, cap).min_burned;
      }
      auto fpt = fpt_pw_delta(instance);
      check(static_cast<int>(simulate(instance, fpt.witness).burned.size()) ==
            fpt.min_burned);
      if (opt) {
        check(fpt.min_burned == *opt);
      }
      if (is_tree(g)) {
        check(tree_optimal(instance).min_burned == fpt.min_burned);
      }
      check(greedy_baseline(instance).min_burned >= fpt.min_burned);
      if (fpt.min_burned > 1) {
        check(!fpt_decide_k_delta(instance.with_threshold(fpt.min_burned - 1))
                   .yes);
      }
    }
    if (cw_layout) {
      auto iso = isolation_strategy(g, *cw_layout, {s});
      check(iso.confined() && iso.within_bound());
    }
  }
  return row;
}

inline int cmd_bench(const std::string &dir, std::size_t cap,
                     std::ostream &out) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw io::ParseError(0, "not a directory: " + dir);
  }
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".graph") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  auto &stats = simulation_stats();
  const std::uint64_t runs_before = stats.runs;
  const std::uint64_t violations_before = stats.step_bound_violations;
  std::vector<BenchRow> rows;
  for (const auto &f : files) {
    rows.push_back(bench_graph(f.filename().string(),
                               io::parse_edge_list(read_file(f.string())),
                               cap));
  }

  out << std::left << std::setw(24) << "graph" << std::right << std::setw(5)
      << "n" << std::setw(5) << "m" << std::setw(4) << "D" << std::setw(4)
      << "cw" << std::setw(4) << "pw" << std::setw(4) << "bw" << std::setw(8)
      << "checks" << std::setw(8) << "fail" << '\n';
  std::size_t mismatches = 0;
  for (const auto &r : rows) {
    out << std::left << std::setw(24) << r.name << std::right << std::setw(5)
        << r.n << std::setw(5) << r.m << std::setw(4) << r.delta
        << std::setw(4) << r.cw << std::setw(4) << r.pw << std::setw(4)
        << r.bw << std::setw(8) << r.checks << std::setw(8) << r.mismatches
        << '\n';
    mismatches += r.mismatches;
  }
  const std::uint64_t runs = stats.runs - runs_before;
  const std::uint64_t violations =
      stats.step_bound_violations - violations_before;
  out << "graphs " << rows.size() << ", simulations " << runs
      << ", step-bound violations " << violations << ", mismatches "
      << mismatches << '\n';
  return mismatches == 0 && violations == 0 ? kYes : kNo;
}

/// Entry point shared by the binary and the tests.
inline int run_cli(int argc, const char *const *argv, std::ostream &out,
                   std::ostream &err) {
  CLI::App app{"Firefighter problem toolkit"};
  app.require_subcommand(1);

  InstanceArgs sim_args;
  std::string strategy;
  auto *sim = app.add_subcommand("simulate", "run a strategy, print the trace");
  sim_args.attach(sim);
  sim->add_option("--strategy", strategy, "strategy JSON file")->required();

  InstanceArgs solve_args;
  std::string algo = "exhaustive";
  std::size_t solve_cap = kDefaultExhaustiveCap;
  auto *solve = app.add_subcommand("solve", "minimise the burned count");
  solve_args.attach(solve);
  solve->add_option("--algo", algo)
      ->check(CLI::IsMember({"exhaustive", "tree", "fpt", "greedy"}));
  solve->add_option("--cap", solve_cap, "vertex cap for exhaustive search");

  InstanceArgs decide_args;
  int k = 0;
  auto *decide = app.add_subcommand("decide", "can the fire be held to k?");
  decide_args.attach(decide);
  decide->add_option("--k", k)->required()->check(CLI::PositiveNumber);

  ReduceArgs red;
  auto *reduce = app.add_subcommand("reduce", "build the reduction tree");
  reduce->add_option("--cnf", red.cnf)->required();
  reduce->add_option("--budget", red.budget)->check(CLI::PositiveNumber);
  reduce->add_option("--out-graph", red.out_graph)->required();
  reduce->add_option("--out-labels", red.out_labels)->required();
  reduce->add_option("--assignment", red.assignment,
                     "assignment file (signed literals); default: brute force");
  reduce->add_option("--emit-strategy", red.emit_strategy,
                     "write the assignment strategy JSON here");
  reduce->add_option("--emit-decomposition", red.emit_decomposition,
                     "write the width-3 path decomposition here");

  std::string widths_graph;
  std::string measure;
  std::optional<std::size_t> widths_cap;
  auto *widths = app.add_subcommand("widths", "exact width with certificate");
  widths->add_option("--graph", widths_graph)->required();
  widths->add_option("--measure", measure)
      ->required()
      ->check(CLI::IsMember({"cw", "bw", "pw"}));
  widths->add_option("--cap", widths_cap);

  std::string bound_graph;
  std::string bound_layout;
  std::vector<Vertex> bound_sources;
  std::vector<int> bound_budgets{1};
  auto *bound = app.add_subcommand("bound", "isolation strategy and bound");
  bound->add_option("--graph", bound_graph)->required();
  bound->add_option("--layout", bound_layout)->required();
  bound->add_option("--sources", bound_sources)->required()->delimiter(',');
  bound->add_option("--budgets", bound_budgets)->delimiter(',');

  std::string corpus;
  std::size_t bench_cap = kDefaultExhaustiveCap;
  auto *bench = app.add_subcommand("bench", "oracle-equivalence sweep");
  bench->add_option("--corpus", corpus)->required();
  bench->add_option("--cap", bench_cap, "vertex cap for exhaustive search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kYes : kUsage;
  }

  try {
    if (*sim) {
      return cmd_simulate(sim_args, strategy, out);
    }
    if (*solve) {
      return cmd_solve(solve_args, algo, solve_cap, out);
    }
    if (*decide) {
      return cmd_decide(decide_args, k, out);
    }
    if (*reduce) {
      return cmd_reduce(red, out);
    }
    if (*widths) {
      return cmd_widths(widths_graph, measure, widths_cap, out);
    }
    if (*bound) {
      return cmd_bound(bound_graph, bound_layout, bound_sources,
                       bound_budgets, out);
    }
    return cmd_bench(corpus, bench_cap, out);
  } catch (const SizeCapExceeded &e) {
    err << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

} // namespace firefighter::cli
