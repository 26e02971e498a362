#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "firefighter/graph.hpp"
#include "firefighter/layout.hpp"
#include "firefighter/propagation.hpp"

namespace firefighter {

/// Monotone CNF; variables and clauses are 0-based. Literals are variable
/// indices (all positive).
struct CubicMonotoneFormula {
  int variable_count = 0;
  std::vector<std::vector<int>> clauses;

  friend bool operator==(const CubicMonotoneFormula &,
                         const CubicMonotoneFormula &) = default;
};

/// The formula plus one complement clause per clause, over the negations of
/// the same variables. complement_clauses[j] lists the variables negated.
struct ExtendedFormula {
  CubicMonotoneFormula base;
  std::vector<std::vector<int>> complement_clauses;
};

using Assignment = std::vector<bool>;

/// Returns a description of the first violated requirement, or nullopt.
inline std::optional<std::string>
validate_cubic_monotone(const CubicMonotoneFormula &f) {
  if (f.variable_count < 1) {
    return "formula has no variables";
  }
  std::vector<int> occurrences(static_cast<std::size_t>(f.variable_count), 0);
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    auto clause = f.clauses[j];
    if (clause.size() != 3) {
      return "clause " + std::to_string(j + 1) + " has " +
             std::to_string(clause.size()) + " literals, expected 3";
    }
    for (int x : clause) {
      if (x < 0 || x >= f.variable_count) {
        return "clause " + std::to_string(j + 1) +
               " references an unknown variable";
      }
      occurrences[static_cast<std::size_t>(x)] += 1;
    }
    std::sort(clause.begin(), clause.end());
    if (std::adjacent_find(clause.begin(), clause.end()) != clause.end()) {
      return "clause " + std::to_string(j + 1) + " repeats a variable";
    }
  }
  for (int x = 0; x < f.variable_count; ++x) {
    if (occurrences[static_cast<std::size_t>(x)] != 3) {
      return "variable " + std::to_string(x + 1) + " occurs " +
             std::to_string(occurrences[static_cast<std::size_t>(x)]) +
             " times, expected 3";
    }
  }
  return std::nullopt;
}

inline ExtendedFormula extend_formula(const CubicMonotoneFormula &f) {
  return {f, f.clauses};
}

/// Every clause has exactly one true variable and every complement clause
/// exactly two true negated literals.
inline bool is_satisfying(const ExtendedFormula &ext, const Assignment &tau) {
  if (tau.size() != static_cast<std::size_t>(ext.base.variable_count)) {
    return false;
  }
  for (const auto &clause : ext.base.clauses) {
    int true_literals = 0;
    for (int x : clause) {
      true_literals += tau[static_cast<std::size_t>(x)] ? 1 : 0;
    }
    if (true_literals != 1) {
      return false;
    }
  }
  for (const auto &clause : ext.complement_clauses) {
    int true_literals = 0;
    for (int x : clause) {
      true_literals += tau[static_cast<std::size_t>(x)] ? 0 : 1;
    }
    if (true_literals != 2) {
      return false;
    }
  }
  return true;
}

/// Brute force over all 2^n assignments (bit i of the counter is x_{i+1});
/// returns the first with exactly one true variable per clause.
inline std::optional<Assignment> solve_1in3(const CubicMonotoneFormula &f) {
  if (f.variable_count > 30) {
    throw std::length_error("brute-force 1-in-3 solver limited to 30 "
                            "variables");
  }
  const std::uint64_t limit = std::uint64_t{1} << f.variable_count;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    bool ok = true;
    for (const auto &clause : f.clauses) {
      int count = 0;
      for (int x : clause) {
        count += static_cast<int>((mask >> x) & 1u);
      }
      if (count != 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      Assignment tau(static_cast<std::size_t>(f.variable_count));
      for (int x = 0; x < f.variable_count; ++x) {
        tau[static_cast<std::size_t>(x)] = ((mask >> x) & 1u) != 0;
      }
      return tau;
    }
  }
  return std::nullopt;
}

enum class Role : std::uint8_t {
  Spine,
  Variable,
  NegatedVariable,
  GuardCenter,
  GuardLeaf,
  PathInternal,
  Literal,
  ClausePathInternal,
  Dummy,
  WPath,
};

inline const char *role_name(Role r) {
  switch (r) {
  case Role::Spine:
    return "spine";
  case Role::Variable:
    return "variable";
  case Role::NegatedVariable:
    return "negatedVariable";
  case Role::GuardCenter:
    return "guardCenter";
  case Role::GuardLeaf:
    return "guardLeaf";
  case Role::PathInternal:
    return "pathInternal";
  case Role::Literal:
    return "literal";
  case Role::ClausePathInternal:
    return "clausePathInternal";
  case Role::Dummy:
    return "dummy";
  case Role::WPath:
    return "wPath";
  }
  return "unknown";
}

/// One literal vertex and the clause gadget hanging from it. For a positive
/// literal the guard sits at the end of the clause path; for a negated one
/// the end of the clause path carries a dummy leaf and a D-path whose last
/// vertex is the guard.
struct LiteralGadget {
  Vertex literal = 0;
  int variable = 0;
  int clause = 0;
  bool negated = false;
  VertexList clause_path; // vertices after the literal, literal excluded
  Vertex endpoint = 0;    // last vertex of the clause path (or the literal)
  std::optional<Vertex> dummy;
  VertexList d_path;      // negated only: the two vertices before the guard
  Vertex guard = 0;       // guard center
};

struct VariableGadget {
  Vertex root = 0;        // v_{x_i} or v_{~x_i}, adjacent to the spine
  Vertex guard = 0;       // guard center adjacent to root
  VertexList descent;     // path below root, root excluded
  Vertex endpoint = 0;    // carries the three literal vertices
  std::vector<std::size_t> literals; // indices into ReductionTree::literals
};

struct ReductionTree {
  Graph graph;
  Vertex source = 0;
  std::int64_t k = 0; // threshold; also the leaf count of every guard star
  int budget = 1;
  int variable_count = 0;
  std::vector<Role> roles;
  VertexList spine;                      // u_1 .. u_p, u_1 = source
  std::vector<VariableGadget> positive;  // per variable
  std::vector<VariableGadget> negative;  // per variable
  std::vector<LiteralGadget> literals;
  VertexList guard_centers;
  VertexList w_path;                     // w_1 = source .. w_{5n+1}; b >= 2
  std::vector<VertexList> w_guards;      // b-1 guard centers per w vertex

  /// Guard center -> its leaves, derived from the graph.
  VertexList guard_leaves(Vertex center) const {
    VertexList out;
    for (Vertex w : graph.neighbors(center)) {
      if (roles[w] == Role::GuardLeaf) {
        out.push_back(w);
      }
    }
    return out;
  }

  Instance instance() const {
    return Instance::single(graph, source, budget, static_cast<int>(k));
  }
};

/// Threshold of the budget-one tree: p + n(11n+7)/2 with p = 2n-1.
inline std::int64_t reduction_threshold(std::int64_t n) {
  return (2 * n - 1) + n * (11 * n + 7) / 2;
}

struct BurnProfile {
  std::int64_t phase1 = 0;
  std::vector<std::int64_t> per_clause;
  std::int64_t total = 0;
};

/// Burn counts of the assignment strategy on the budget-one tree: after the
/// variable phase (steps 1..p+1), then per clause (three steps each).
inline BurnProfile expected_burn_profile(std::int64_t n) {
  BurnProfile profile;
  profile.phase1 = (2 * n - 1) + 3 * n + n * n;
  profile.total = profile.phase1;
  for (std::int64_t j = 1; j <= n; ++j) {
    profile.per_clause.push_back(9 * (n - j + 1) - 4);
    profile.total += profile.per_clause.back();
  }
  return profile;
}

namespace detail {

class TreeBuilder {
public:
  Vertex add(Role role) {
    roles.push_back(role);
    return static_cast<Vertex>(roles.size() - 1);
  }

  void link(Vertex a, Vertex b) { edges.emplace_back(a, b); }

  /// Appends a path of `length` new vertices below `from`; returns them.
  VertexList path(Vertex from, std::int64_t length, Role role) {
    VertexList out;
    Vertex prev = from;
    for (std::int64_t i = 0; i < length; ++i) {
      Vertex v = add(role);
      link(prev, v);
      out.push_back(v);
      prev = v;
    }
    return out;
  }

  Vertex star(Vertex anchor, std::int64_t leaves) {
    Vertex center = add(Role::GuardCenter);
    link(anchor, center);
    for (std::int64_t i = 0; i < leaves; ++i) {
      link(center, add(Role::GuardLeaf));
    }
    return center;
  }

  std::vector<Role> roles;
  std::vector<Edge> edges;
};

} // namespace detail

/// Builds the gadget tree for a cubic monotone formula and budget b >= 1.
/// Numbering: spine, variable gadgets (x_i then ~x_i, by i), clause paths,
/// guard stars, then for b >= 2 the w-path and its guard stars.
inline ReductionTree build_reduction(const CubicMonotoneFormula &formula,
                                     int budget = 1) {
  if (auto problem = validate_cubic_monotone(formula)) {
    throw std::invalid_argument("not a cubic monotone formula: " + *problem);
  }
  if (budget < 1) {
    throw std::invalid_argument("budget must be >= 1");
  }
  const int n = formula.variable_count;
  const std::int64_t p = 2 * std::int64_t{n} - 1;

  ReductionTree tree;
  tree.variable_count = n;
  tree.budget = budget;
  tree.k = reduction_threshold(n) + (budget >= 2 ? 5 * std::int64_t{n} : 0);

  detail::TreeBuilder b;
  tree.spine.push_back(b.add(Role::Spine));
  auto rest = b.path(tree.spine.front(), p - 1, Role::Spine);
  tree.spine.insert(tree.spine.end(), rest.begin(), rest.end());
  tree.source = tree.spine.front();

  // Clauses containing each variable, in increasing clause order.
  std::vector<std::vector<int>> occurrences(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < formula.clauses.size(); ++j) {
    for (int x : formula.clauses[j]) {
      occurrences[static_cast<std::size_t>(x)].push_back(static_cast<int>(j));
    }
  }

  for (int i = 0; i < n; ++i) {
    for (bool negated : {false, true}) {
      VariableGadget gadget;
      gadget.root = b.add(negated ? Role::NegatedVariable : Role::Variable);
      b.link(tree.spine[static_cast<std::size_t>(2 * i)], gadget.root);
      gadget.descent = b.path(gadget.root, 2 * (n - 1 - i), Role::PathInternal);
      gadget.endpoint =
          gadget.descent.empty() ? gadget.root : gadget.descent.back();
      for (int clause : occurrences[static_cast<std::size_t>(i)]) {
        LiteralGadget lit;
        lit.literal = b.add(Role::Literal);
        b.link(gadget.endpoint, lit.literal);
        lit.variable = i;
        lit.clause = clause;
        lit.negated = negated;
        gadget.literals.push_back(tree.literals.size());
        tree.literals.push_back(lit);
      }
      (negated ? tree.negative : tree.positive).push_back(gadget);
    }
  }

  for (auto &lit : tree.literals) {
    lit.clause_path = b.path(lit.literal, 3 * std::int64_t{lit.clause},
                             Role::PathInternal);
    lit.endpoint =
        lit.clause_path.empty() ? lit.literal : lit.clause_path.back();
    if (lit.negated) {
      lit.dummy = b.add(Role::Dummy);
      b.link(lit.endpoint, *lit.dummy);
      lit.d_path = b.path(lit.endpoint, 2, Role::ClausePathInternal);
    }
  }

  for (int i = 0; i < n; ++i) {
    for (auto *side : {&tree.positive, &tree.negative}) {
      auto &gadget = (*side)[static_cast<std::size_t>(i)];
      gadget.guard = b.star(gadget.root, tree.k);
      tree.guard_centers.push_back(gadget.guard);
    }
  }
  for (auto &lit : tree.literals) {
    lit.guard = b.star(lit.negated ? lit.d_path.back() : lit.endpoint, tree.k);
    tree.guard_centers.push_back(lit.guard);
  }

  if (budget >= 2) {
    tree.w_path.push_back(tree.source);
    auto ws = b.path(tree.source, 5 * std::int64_t{n}, Role::WPath);
    tree.w_path.insert(tree.w_path.end(), ws.begin(), ws.end());
    for (Vertex w : tree.w_path) {
      VertexList guards;
      for (int g = 0; g < budget - 1; ++g) {
        guards.push_back(b.star(w, tree.k));
        tree.guard_centers.push_back(guards.back());
      }
      tree.w_guards.push_back(std::move(guards));
    }
  }

  tree.roles = std::move(b.roles);
  tree.graph = Graph(tree.roles.size(), b.edges);
  return tree;
}

/// The strategy induced by a satisfying assignment. Variable phase (steps
/// 1..2n): at odd steps protect the root of the false side of x_i, at even
/// steps the guard of the burning root. Clause phase (three steps per
/// clause, in clause order): the guard of the true variable's literal, then
/// the D-path of each false variable (lower index first), each time at the
/// D-path vertex next to the fire. For b >= 2 every step first protects the
/// b-1 guards on the w-path vertex that burned in the previous step.
inline Strategy strategy_from_assignment(const ReductionTree &tree,
                                         const ExtendedFormula &formula,
                                         const Assignment &tau) {
  if (!is_satisfying(formula, tau)) {
    throw std::invalid_argument("assignment does not satisfy the extended "
                                "formula");
  }
  const int n = tree.variable_count;
  if (formula.base.variable_count != n) {
    throw std::invalid_argument("formula does not match the tree");
  }

  std::vector<VertexList> free_moves;
  for (int i = 0; i < n; ++i) {
    const auto &pos = tree.positive[static_cast<std::size_t>(i)];
    const auto &neg = tree.negative[static_cast<std::size_t>(i)];
    bool value = tau[static_cast<std::size_t>(i)];
    free_moves.push_back({value ? neg.root : pos.root});
    free_moves.push_back({value ? pos.guard : neg.guard});
  }

  // Clause moves depend on where the fire stands, so run the process along.
  Propagation fire(tree.graph, {tree.source});
  Strategy plan;
  auto play = [&](VertexList move) {
    const std::size_t t = static_cast<std::size_t>(fire.next_step());
    if (tree.budget >= 2 && t <= tree.w_guards.size()) {
      const auto &forced = tree.w_guards[t - 1];
      move.insert(move.begin(), forced.begin(), forced.end());
    }
    if (auto v = fire.protect(move, tree.budget)) {
      throw std::logic_error("assignment strategy is invalid: " +
                             v->message());
    }
    plan.steps.push_back(move);
    fire.spread();
  };
  for (auto &move : free_moves) {
    play(move);
  }

  auto literal_of = [&](int variable, int clause, bool negated) {
    for (const auto &lit : tree.literals) {
      if (lit.variable == variable && lit.clause == clause &&
          lit.negated == negated) {
        return lit;
      }
    }
    throw std::logic_error("missing literal gadget");
  };
  auto next_to_fire = [&](const LiteralGadget &lit) {
    VertexList chain = lit.d_path;
    chain.push_back(lit.guard);
    for (Vertex v : chain) {
      if (fire.state(v) != Propagation::State::Unburned) {
        continue;
      }
      for (Vertex w : tree.graph.neighbors(v)) {
        if (fire.is_burned(w)) {
          return v;
        }
      }
    }
    throw std::logic_error("no D-path vertex is next to the fire");
  };

  for (std::size_t j = 0; j < formula.base.clauses.size(); ++j) {
    auto vars = formula.base.clauses[j];
    std::sort(vars.begin(), vars.end());
    auto true_var = *std::find_if(vars.begin(), vars.end(), [&](int x) {
      return tau[static_cast<std::size_t>(x)];
    });
    play({literal_of(true_var, static_cast<int>(j), false).guard});
    for (int x : vars) {
      if (x != true_var) {
        play({next_to_fire(literal_of(x, static_cast<int>(j), true))});
      }
    }
  }

  // Remaining forced guard protections along the w-path.
  while (tree.budget >= 2 &&
         static_cast<std::size_t>(fire.next_step()) <= tree.w_guards.size()) {
    play({});
  }
  return plan;
}

/// Width-2 path decomposition of the subtree hanging from one variable
/// vertex: its guard star, the descent path, then each literal branch with
/// the descent endpoint kept in every bag.
inline PathDecomposition side_decomposition(const ReductionTree &tree,
                                            int variable, bool negated) {
  const auto &gadget =
      (negated ? tree.negative : tree.positive).at(static_cast<std::size_t>(
          variable));
  PathDecomposition pd;
  auto star_bags = [&](VertexList prefix, Vertex center) {
    for (Vertex leaf : tree.guard_leaves(center)) {
      VertexList bag = prefix;
      bag.push_back(center);
      bag.push_back(leaf);
      pd.bags.push_back(std::move(bag));
    }
  };

  star_bags({gadget.root}, gadget.guard);
  Vertex prev = gadget.root;
  for (Vertex v : gadget.descent) {
    pd.bags.push_back({prev, v});
    prev = v;
  }
  const Vertex hub = gadget.endpoint;
  for (std::size_t idx : gadget.literals) {
    const auto &lit = tree.literals[idx];
    pd.bags.push_back({hub, lit.literal});
    Vertex last = lit.literal;
    for (Vertex v : lit.clause_path) {
      pd.bags.push_back({hub, last, v});
      last = v;
    }
    if (lit.negated) {
      pd.bags.push_back({hub, last, *lit.dummy});
      for (Vertex v : lit.d_path) {
        pd.bags.push_back({hub, last, v});
        last = v;
      }
    }
    pd.bags.push_back({hub, last, lit.guard});
    star_bags({hub}, lit.guard);
  }
  return pd;
}

/// Width-3 path decomposition of the whole tree: side decompositions with
/// their spine vertex u_{2i-1} added, joined through B_i = {u_{2i-1}, u_{2i},
/// u_{2i+1}}. For b >= 2 the w-path component is placed before, ending at s.
inline PathDecomposition path_decomposition_pw3(const ReductionTree &tree) {
  PathDecomposition pd;
  if (!tree.w_path.empty()) {
    for (std::size_t i = tree.w_path.size(); i-- > 0;) {
      Vertex w = tree.w_path[i];
      for (Vertex center : tree.w_guards[i]) {
        for (Vertex leaf : tree.guard_leaves(center)) {
          pd.bags.push_back({w, center, leaf});
        }
      }
      if (i > 0) {
        pd.bags.push_back({w, tree.w_path[i - 1]});
      }
    }
  }
  const int n = tree.variable_count;
  for (int i = 0; i < n; ++i) {
    Vertex u = tree.spine[static_cast<std::size_t>(2 * i)];
    for (bool negated : {false, true}) {
      for (auto bag : side_decomposition(tree, i, negated).bags) {
        bag.push_back(u);
        pd.bags.push_back(std::move(bag));
      }
    }
    if (i + 1 < n) {
      pd.bags.push_back({tree.spine[static_cast<std::size_t>(2 * i)],
                         tree.spine[static_cast<std::size_t>(2 * i + 1)],
                         tree.spine[static_cast<std::size_t>(2 * i + 2)]});
    }
  }
  for (auto &bag : pd.bags) {
    std::sort(bag.begin(), bag.end());
  }
  return pd;
}

} // namespace firefighter
