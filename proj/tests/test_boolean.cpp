#include <gtest/gtest.h>

#include <random>

#include "pamincsp/boolean.hpp"
#include "pamincsp/instance_io.hpp"
#include "pamincsp/oracle.hpp"
#include "pamincsp/pipeline.hpp"
#include "pamincsp/random.hpp"

using namespace pamincsp;

namespace {

Clause random_clause(std::mt19937_64 &rng, int num_vars) {
  std::uniform_int_distribution<int> var(0, num_vars - 1), shape(0, 4);
  const int a = var(rng), b = var(rng);
  switch (shape(rng)) {
  case 0:
    return Clause::force_true(a);
  case 1:
    return Clause::force_false(a);
  case 2:
    return Clause::implies(a, b);
  case 3:
    return Clause::either(a, b);
  default:
    return Clause::nand(a, b);
  }
}

/// Truth-table oracle: tries every assignment.
bool satisfiable_by_truth_table(int num_vars, const std::vector<Clause> &clauses) {
  std::vector<char> value(static_cast<std::size_t>(num_vars));
  for (unsigned mask = 0; mask < (1u << num_vars); ++mask) {
    for (int v = 0; v < num_vars; ++v)
      value[static_cast<std::size_t>(v)] = static_cast<char>(mask >> v & 1u);
    bool ok = true;
    for (const auto &c : clauses)
      ok = ok && c.holds(value);
    if (ok)
      return true;
  }
  return false;
}

BooleanInstance random_boolean_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BooleanInstance bi;
  const int n = std::uniform_int_distribution<int>(1, 5)(rng);
  for (int v = 0; v < n; ++v)
    bi.add_variable({BoolVarKind::C, v, 1});
  const int m = std::uniform_int_distribution<int>(1, 9)(rng);
  for (int i = 0; i < m; ++i) {
    std::vector<Clause> clauses;
    const int len = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int j = 0; j < len; ++j)
      clauses.push_back(random_clause(rng, n));
    const bool crisp = std::uniform_int_distribution<int>(0, 4)(rng) == 0;
    bi.add_constraint(clauses, crisp ? Softness::Crisp : Softness::Soft,
                      std::uniform_int_distribution<Weight>(1, 4)(rng), std::nullopt);
  }
  bi.cost_budget = std::uniform_int_distribution<int>(0, 4)(rng);
  if (std::uniform_int_distribution<int>(0, 1)(rng))
    bi.weight_budget = std::uniform_int_distribution<Weight>(1, 8)(rng);
  return bi;
}

std::pair<std::int64_t, Weight> cost_weight_of(const BooleanInstance &bi, const std::vector<int> &ids) {
  Weight w = 0;
  for (int id : ids)
    w += bi.constraints[static_cast<std::size_t>(id)].weight;
  return {static_cast<std::int64_t>(ids.size()), w};
}

} // namespace

TEST(TwoSat, AgreesWithTruthTable) {
  std::mt19937_64 rng(7);
  int sat = 0;
  for (int sample = 0; sample < 1000; ++sample) {
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    const int m = std::uniform_int_distribution<int>(0, 6)(rng);
    std::vector<Clause> clauses;
    for (int i = 0; i < m; ++i)
      clauses.push_back(random_clause(rng, n));
    const bool expected = satisfiable_by_truth_table(n, clauses);
    auto w = two_sat_satisfiable(n, clauses);
    ASSERT_EQ(static_cast<bool>(w), expected) << "sample " << sample;
    if (w) {
      ++sat;
      for (const auto &c : clauses)
        EXPECT_TRUE(c.holds(*w)) << "sample " << sample;
    }
  }
  EXPECT_GT(sat, 100);
  EXPECT_LT(sat, 1000);
}

TEST(BooleanMinCsp, AgreesWithSubsetEnumeration) {
  int feasible = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    BooleanInstance bi = random_boolean_instance(seed);
    auto expected = brute_force_boolean_mincsp(bi);
    auto got = solve_boolean_mincsp(bi);
    ASSERT_EQ(static_cast<bool>(got), static_cast<bool>(expected)) << "seed " << seed;
    if (!got)
      continue;
    ++feasible;
    EXPECT_EQ(std::make_pair(got->cost, got->weight), cost_weight_of(bi, *expected)) << "seed " << seed;
    std::vector<char> removed(bi.constraints.size(), 0);
    for (int id : got->deleted) {
      EXPECT_TRUE(bi.constraints[static_cast<std::size_t>(id)].soft());
      removed[static_cast<std::size_t>(id)] = 1;
    }
    for (const auto &bc : bi.constraints)
      if (!removed[static_cast<std::size_t>(bc.id)]) {
        for (const auto &c : bc.clauses)
          EXPECT_TRUE(c.holds(got->assignment)) << "seed " << seed;
      }
  }
  EXPECT_GT(feasible, 50);
}

TEST(Bijunctive2K2, DetectsInducedMatching) {
  BooleanInstance bi;
  for (int v = 0; v < 4; ++v)
    bi.add_variable({BoolVarKind::C, v, 1});
  // a-b and c-d with nothing between them: an induced 2K2.
  bi.add_constraint({Clause::implies(0, 1), Clause::either(2, 3)}, Softness::Soft, 1, std::nullopt);
  // Adding b-c joins the two edges: a path, 2K2-free.
  bi.add_constraint({Clause::implies(0, 1), Clause::either(2, 3), Clause::nand(1, 2)}, Softness::Soft, 1,
                    std::nullopt);
  // A star is 2K2-free; unary clauses add no edges.
  bi.add_constraint({Clause::implies(0, 1), Clause::implies(0, 2), Clause::implies(0, 3), Clause::force_true(3)},
                    Softness::Soft, 1, std::nullopt);
  EXPECT_FALSE(check_bijunctive_2k2_free(bi.constraints[0]));
  EXPECT_TRUE(check_bijunctive_2k2_free(bi.constraints[1]));
  EXPECT_TRUE(check_bijunctive_2k2_free(bi.constraints[2]));
  EXPECT_EQ(bi.constraints[2].arity(), 4u);
}

TEST(Booleanize, VariableLayout) {
  CompressedInstance ci;
  ci.base = parse_instance("k 1\nlt x y soft\neq y z soft\n");
  ci.anchors = {{0}, {2}};
  ci.cost_budget = 1;
  Booleanized b = booleanize(ci);
  // l = 2: l c-variables and 2l+1 p-variables per source variable.
  EXPECT_EQ(b.instance.variables.size(), 21u);
  EXPECT_EQ(b.encoding.c(1, 1), 7);
  EXPECT_EQ(b.encoding.p(1, 1), 9);
  EXPECT_EQ(b.instance.variables[9].kind, BoolVarKind::P);
  EXPECT_EQ(b.instance.variables[9].v, 1);
  EXPECT_EQ(b.instance.variables[9].index, 1);
  for (ConstraintId id = 0; id < 2; ++id) {
    const int bid = b.encoding.of_source[static_cast<std::size_t>(id)];
    EXPECT_EQ(b.encoding.source[static_cast<std::size_t>(bid)], id);
    EXPECT_TRUE(b.instance.constraints[static_cast<std::size_t>(bid)].soft());
  }
  ci.base.add(0, 1, Relation::LEQ);
  EXPECT_THROW(booleanize(ci), PreconditionError);
}

TEST(Booleanize, ProfilesMatchCompressedOracle) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    CompressedInstance ci = gen_random_compressed_instance(seed, 5, 6, 3, 3, 3);
    Booleanized b = booleanize(ci);
    // Exact-cost profiles may differ (a Boolean deletion set may include satisfied
    // constraints); the yes/no answer at every budget pair may not.
    const std::int64_t max_cost = static_cast<std::int64_t>(ci.base.num_constraints());
    auto bool_side = boolean_min_weight_profile(b.instance, max_cost);
    auto csp_side = compressed_min_weight_profile(ci, max_cost);
    for (std::int64_t k = 0; k <= max_cost; ++k)
      for (Weight w = 0; w <= 3 * max_cost; ++w)
        EXPECT_EQ(profile_accepts(bool_side, k, w), profile_accepts(csp_side, k, w))
            << "seed " << seed << " k=" << k << " w=" << w << "\n"
            << serialize_instance(ci.base);
  }
}

TEST(Lift, WitnessRespectsAnchorsAndDeletions) {
  int lifted = 0;
  for (std::uint64_t seed = 100; seed < 200; ++seed) {
    CompressedInstance ci = gen_random_compressed_instance(seed, 5, 6, 3, 3, 3);
    Booleanized b = booleanize(ci);
    auto r = solve_boolean_mincsp(b.instance);
    if (!r)
      continue;
    PipelineResult p = lift_solution(b, r->assignment, r->deleted, ci);
    ++lifted;
    EXPECT_EQ(p.solution.cost, r->cost);
    EXPECT_EQ(p.solution.weight, r->weight);
    EXPECT_TRUE(witnesses(ci.base, p.assignment, p.solution.deleted));
    // The rationals realise the same order as the ranks.
    for (std::size_t u = 0; u < p.values.size(); ++u)
      for (std::size_t v = 0; v < p.values.size(); ++v) {
        const auto lhs = p.values[u].numerator * p.values[v].denominator;
        const auto rhs = p.values[v].numerator * p.values[u].denominator;
        EXPECT_EQ(lhs < rhs, p.assignment.rank[u] < p.assignment.rank[v]);
      }
  }
  EXPECT_GT(lifted, 20);
}

TEST(Lift, AnchorValuesAreIntegers) {
  CompressedInstance ci;
  ci.base = parse_instance("k 0\nlt a m crisp\nlt m b crisp\n");
  ci.anchors = {{0}, {2}};
  Booleanized b = booleanize(ci);
  auto r = solve_boolean_mincsp(b.instance);
  ASSERT_TRUE(r);
  PipelineResult p = lift_solution(b, r->assignment, r->deleted, ci);
  EXPECT_EQ(p.values[0].to_string(), "1/1");
  EXPECT_EQ(p.values[2].to_string(), "2/1");
  EXPECT_LT(p.assignment.rank[0], p.assignment.rank[1]);
  EXPECT_LT(p.assignment.rank[1], p.assignment.rank[2]);
}

// A soft equality x = y reads every c- and p-variable of both endpoints, so its
// scope is counted directly from the layout rather than taken from the encoder.
TEST(Booleanize, EqualityScopeCoversBothEndpoints) {
  for (int ell = 1; ell <= 4; ++ell) {
    CompressedInstance ci;
    for (int v = 0; v < ell + 2; ++v)
      ci.base.variables.push_back("v" + std::to_string(v));
    const ConstraintId eq = ci.base.add(ell, ell + 1, Relation::EQ);
    for (int i = 0; i < ell; ++i)
      ci.anchors.push_back({i});
    Booleanized b = booleanize(ci);
    const auto &bc = b.instance.constraints[static_cast<std::size_t>(b.encoding.of_source[static_cast<std::size_t>(eq)])];
    std::vector<int> expected;
    for (VarId v : {static_cast<VarId>(ell), static_cast<VarId>(ell + 1)}) {
      for (int i = 1; i <= ell; ++i)
        expected.push_back(b.encoding.c(v, i));
      for (int j = 1; j <= 2 * ell + 1; ++j)
        expected.push_back(b.encoding.p(v, j));
    }
    std::vector<int> scope = bc.scope;
    std::sort(scope.begin(), scope.end());
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(scope, expected) << "l=" << ell;
    EXPECT_EQ(bc.arity(), static_cast<std::size_t>(6 * ell + 2));
    EXPECT_TRUE(check_bijunctive_2k2_free(bc));
  }
}
