#include <gtest/gtest.h>

#include <map>

#include "firefighter/reduction.hpp"

using namespace firefighter;

namespace {

// (x1 x3 x6)(x1 x2 x3)(x3 x4 x5)(x2 x4 x5)(x1 x4 x6)(x2 x6 x5), 0-based.
const CubicMonotoneFormula kSix{
    6, {{0, 2, 5}, {0, 1, 2}, {2, 3, 4}, {1, 3, 4}, {0, 3, 5}, {1, 5, 4}}};
const CubicMonotoneFormula kThree{3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}};

Assignment six_tau() {
  Assignment tau(6, false);
  tau[0] = true;
  tau[4] = true;
  return tau;
}

// Burn counts after the variable phase and after every clause phase.
std::vector<std::size_t> burn_checkpoints(const ReductionTree &tree,
                                          const Strategy &plan) {
  Propagation fire(tree.graph, {tree.source});
  std::vector<std::size_t> out;
  const std::size_t n = static_cast<std::size_t>(tree.variable_count);
  std::size_t t = 0;
  while (!fire.stopped()) {
    const VertexList none;
    const auto &step = t < plan.steps.size() ? plan.steps[t] : none;
    EXPECT_FALSE(fire.protect(step, tree.budget));
    fire.spread();
    ++t;
    // The variable phase ends when the literal vertices burn, at step 2n;
    // each clause then takes three steps.
    if (t == 2 * n || (t > 2 * n && (t - 2 * n) % 3 == 0)) {
      out.push_back(fire.burned_count());
    }
  }
  return out;
}

} // namespace

TEST(Formula, Validation) {
  EXPECT_FALSE(validate_cubic_monotone(kSix));
  EXPECT_FALSE(validate_cubic_monotone(kThree));
  CubicMonotoneFormula twice{3, {{0, 1, 2}, {0, 1, 2}, {1, 2, 1}}};
  EXPECT_TRUE(validate_cubic_monotone(twice));
  CubicMonotoneFormula short_occ{3, {{0, 1, 2}, {0, 1, 2}}};
  EXPECT_TRUE(validate_cubic_monotone(short_occ));
  CubicMonotoneFormula pair{3, {{0, 1}, {0, 1, 2}, {0, 1, 2}}};
  EXPECT_TRUE(validate_cubic_monotone(pair));
  EXPECT_THROW(build_reduction(short_occ), std::invalid_argument);
}

TEST(Formula, Extension) {
  auto ext = extend_formula(kSix);
  EXPECT_EQ(ext.complement_clauses.size(), 6u);
  EXPECT_EQ(ext.complement_clauses, kSix.clauses);
  EXPECT_EQ(extend_formula(kThree).complement_clauses[0],
            (std::vector<int>{0, 1, 2}));
}

TEST(Formula, Satisfaction) {
  auto ext = extend_formula(kSix);
  EXPECT_TRUE(is_satisfying(ext, six_tau()));
  EXPECT_FALSE(is_satisfying(ext, Assignment(6, false)));
  EXPECT_FALSE(is_satisfying(ext, Assignment(6, true)));
  EXPECT_FALSE(is_satisfying(ext, Assignment(5, false)));
}

TEST(Formula, BruteForceSolver) {
  auto tau = solve_1in3(kThree);
  ASSERT_TRUE(tau);
  EXPECT_EQ(std::count(tau->begin(), tau->end(), true), 1);
  auto six = solve_1in3(kSix);
  ASSERT_TRUE(six);
  EXPECT_TRUE(is_satisfying(extend_formula(kSix), *six));
  // Clauses (x1 x2 x3) and (x1 x2 x4) with (x3 x4 x?) pattern forcing two
  // true variables in one clause: no 1-in-3 solution.
  CubicMonotoneFormula conflict{
      4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
  EXPECT_FALSE(validate_cubic_monotone(conflict));
  EXPECT_FALSE(solve_1in3(conflict));
}

// Every satisfying assignment of the base formula satisfies the extended one.
TEST(Formula, ExtensionPreservesSatisfiability) {
  for (const auto &f : {kSix, kThree}) {
    auto ext = extend_formula(f);
    for (std::uint32_t mask = 0; mask < (1u << f.variable_count); ++mask) {
      Assignment tau(static_cast<std::size_t>(f.variable_count));
      bool one_each = true;
      for (int x = 0; x < f.variable_count; ++x) {
        tau[static_cast<std::size_t>(x)] = (mask >> x) & 1u;
      }
      for (const auto &c : f.clauses) {
        int count = 0;
        for (int x : c) {
          count += tau[static_cast<std::size_t>(x)] ? 1 : 0;
        }
        one_each = one_each && count == 1;
      }
      EXPECT_EQ(is_satisfying(ext, tau), one_each);
    }
  }
}

TEST(Reduction, Threshold) {
  EXPECT_EQ(reduction_threshold(3), 65);
  EXPECT_EQ(reduction_threshold(6), 230);
  for (std::int64_t n = 1; n <= 200; ++n) {
    EXPECT_EQ((n * (11 * n + 7)) % 2, 0);
    EXPECT_EQ(expected_burn_profile(n).total, reduction_threshold(n));
  }
}

TEST(Reduction, BurnProfile) {
  auto six = expected_burn_profile(6);
  EXPECT_EQ(six.phase1, 65);
  EXPECT_EQ(six.per_clause, (std::vector<std::int64_t>{50, 41, 32, 23, 14, 5}));
  EXPECT_EQ(six.total, 230);
  auto three = expected_burn_profile(3);
  EXPECT_EQ(three.phase1, 23);
  EXPECT_EQ(three.per_clause, (std::vector<std::int64_t>{23, 14, 5}));
}

TEST(Reduction, TreeInvariants) {
  for (int b : {1, 2, 3}) {
    for (const auto &f : {kThree, kSix}) {
      auto tree = build_reduction(f, b);
      const int n = f.variable_count;
      EXPECT_TRUE(is_tree(tree.graph));
      EXPECT_EQ(tree.spine.size(), static_cast<std::size_t>(2 * n - 1));
      EXPECT_EQ(tree.k, reduction_threshold(n) + (b >= 2 ? 5 * n : 0));
      for (Vertex c : tree.guard_centers) {
        EXPECT_EQ(tree.roles[c], Role::GuardCenter);
        EXPECT_EQ(tree.guard_leaves(c).size(), static_cast<std::size_t>(tree.k));
      }
      auto dist = bfs_distances(tree.graph, {tree.source});
      for (const auto &lit : tree.literals) {
        EXPECT_EQ(dist[lit.literal], 2 * n);
        EXPECT_EQ(tree.roles[lit.literal], Role::Literal);
        EXPECT_EQ(lit.clause_path.size(), static_cast<std::size_t>(3 * lit.clause));
        EXPECT_EQ(lit.dummy.has_value(), lit.negated);
      }
      EXPECT_EQ(tree.literals.size(), static_cast<std::size_t>(6 * n));
      if (b >= 2) {
        EXPECT_EQ(tree.w_path.size(), static_cast<std::size_t>(5 * n + 1));
        EXPECT_EQ(tree.w_path.front(), tree.source);
        for (const auto &guards : tree.w_guards) {
          EXPECT_EQ(guards.size(), static_cast<std::size_t>(b - 1));
        }
      } else {
        EXPECT_TRUE(tree.w_path.empty());
      }
    }
  }
}

TEST(Reduction, RoleCounts) {
  auto tree = build_reduction(kThree, 2);
  std::map<Role, int> count;
  for (Role r : tree.roles) {
    ++count[r];
  }
  EXPECT_EQ(count[Role::Spine], 5);
  EXPECT_EQ(count[Role::Variable], 3);
  EXPECT_EQ(count[Role::NegatedVariable], 3);
  EXPECT_EQ(count[Role::Literal], 18);
  EXPECT_EQ(count[Role::Dummy], 9);
  EXPECT_EQ(count[Role::ClausePathInternal], 18);
  EXPECT_EQ(count[Role::WPath], 15);
  // 6 variable guards, 18 literal guards, 16 w-path guards.
  EXPECT_EQ(count[Role::GuardCenter], 40);
}

TEST(Reduction, AssignmentStrategyBurnsExactlyK) {
  auto ext = extend_formula(kSix);
  auto tree = build_reduction(kSix);
  auto plan = strategy_from_assignment(tree, ext, six_tau());
  auto trace = simulate(tree.instance(), plan);
  EXPECT_EQ(static_cast<std::int64_t>(trace.burned.size()), tree.k);

  auto profile = expected_burn_profile(6);
  auto checkpoints = burn_checkpoints(tree, plan);
  ASSERT_GE(checkpoints.size(), 7u);
  EXPECT_EQ(static_cast<std::int64_t>(checkpoints[0]), profile.phase1);
  for (std::size_t j = 0; j < 6; ++j) {
    EXPECT_EQ(static_cast<std::int64_t>(checkpoints[j + 1] - checkpoints[j]),
              profile.per_clause[j]);
  }
}

TEST(Reduction, AssignmentStrategyDegenerateFormula) {
  auto ext = extend_formula(kThree);
  auto tree = build_reduction(kThree);
  auto plan = strategy_from_assignment(tree, ext, *solve_1in3(kThree));
  auto trace = simulate(tree.instance(), plan);
  EXPECT_EQ(trace.burned.size(), 65u);
}

TEST(Reduction, EveryAssignmentOfDegenerateFormula) {
  auto ext = extend_formula(kThree);
  for (int b : {1, 2}) {
    auto tree = build_reduction(kThree, b);
    for (int x = 0; x < 3; ++x) {
      Assignment tau(3, false);
      tau[static_cast<std::size_t>(x)] = true;
      auto trace = simulate(tree.instance(),
                            strategy_from_assignment(tree, ext, tau));
      EXPECT_EQ(static_cast<std::int64_t>(trace.burned.size()), tree.k);
    }
  }
}

TEST(Reduction, RejectsNonSatisfyingAssignment) {
  auto tree = build_reduction(kSix);
  EXPECT_THROW(strategy_from_assignment(tree, extend_formula(kSix),
                                        Assignment(6, false)),
               std::invalid_argument);
}

TEST(Reduction, PathDecompositionWidthThree) {
  for (int b : {1, 2}) {
    for (const auto &f : {kThree, kSix}) {
      auto tree = build_reduction(f, b);
      EXPECT_LE(validate_path_decomposition(tree.graph,
                                            path_decomposition_pw3(tree)),
                3);
    }
  }
}

TEST(Reduction, SideDecompositionWidthTwo) {
  auto tree = build_reduction(kSix);
  for (int i = 0; i < 6; ++i) {
    for (bool negated : {false, true}) {
      auto pd = side_decomposition(tree, i, negated);
      // Validate on the subtree induced by the bags.
      VertexList keep;
      for (const auto &bag : pd.bags) {
        keep.insert(keep.end(), bag.begin(), bag.end());
      }
      std::sort(keep.begin(), keep.end());
      keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
      auto sub = induced_subgraph(tree.graph, keep);
      PathDecomposition local;
      for (const auto &bag : pd.bags) {
        VertexList mapped;
        for (Vertex v : bag) {
          mapped.push_back(static_cast<Vertex>(sub.relabel[v]));
        }
        local.bags.push_back(mapped);
      }
      EXPECT_LE(validate_path_decomposition(sub.graph, local), 2);
      // The subtree below the variable vertex is exactly what the bags cover.
      const auto &gadget = negated ? tree.negative[i] : tree.positive[i];
      auto dist_from_spine = bfs_distances(tree.graph, {tree.source});
      for (Vertex v : keep) {
        EXPECT_GE(dist_from_spine[v], dist_from_spine[gadget.root]);
      }
    }
  }
}
