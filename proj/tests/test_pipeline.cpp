#include <gtest/gtest.h>

#include "pamincsp/instance_io.hpp"
#include "pamincsp/oracle.hpp"
#include "pamincsp/pipeline.hpp"
#include "pamincsp/random.hpp"

using namespace pamincsp;

namespace {

std::optional<std::pair<std::int64_t, Weight>> optimum_of(const std::optional<PipelineResult> &r) {
  if (!r)
    return std::nullopt;
  return std::make_pair(r->solution.cost, r->solution.weight);
}

std::optional<std::pair<std::int64_t, Weight>>
optimum_of(const std::optional<std::pair<Solution, Assignment>> &r) {
  if (!r)
    return std::nullopt;
  return std::make_pair(r->first.cost, r->first.weight);
}

} // namespace

TEST(PipelineSolve, TwoCycleCostsOne) {
  auto inst = parse_instance("k 1\nlt x y soft\nlt y x soft\n");
  auto r = solve(inst);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->solution.cost, 1);
  EXPECT_TRUE(witnesses(inst, r->assignment, r->solution.deleted));
}

TEST(PipelineSolve, RandomAgreesWithOracle) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    RandomInstanceParams p;
    p.num_variables = 2 + static_cast<int>(seed % 5);
    p.num_constraints = 3 + static_cast<int>(seed % 9);
    p.crisp_probability = 0.2;
    p.max_crisp = 3;
    p.max_weight = 1 + static_cast<Weight>(seed % 4);
    p.cost_budget = static_cast<std::int64_t>(seed % 4);
    if (seed % 2)
      p.weight_budget = 1 + static_cast<Weight>(seed % 12);
    Instance inst = normalize(gen_random_instance(seed, p));
    auto expected = brute_force_mincsp(inst);
    auto got = solve(inst);
    ASSERT_EQ(optimum_of(got), optimum_of(expected)) << serialize_instance(inst);
    if (got) {
      EXPECT_TRUE(witnesses(inst, got->assignment, got->solution.deleted));
    }
  }
}

TEST(CompressStep, ShrinksAnOversizedSolution) {
  // Deleting {0,2} leaves a satisfiable instance; deleting {0} alone already does.
  auto inst = parse_instance("k 1\nlt a b soft\nlt b a soft\neq a c soft\n");
  auto r = compress_step(inst, {0, 2});
  auto expected = brute_force_mincsp(inst);
  ASSERT_TRUE(r);
  ASSERT_TRUE(expected);
  EXPECT_EQ(r->solution.cost, 1);
  EXPECT_EQ(r->solution, expected->first);
  EXPECT_TRUE(witnesses(inst, r->assignment, r->solution.deleted));
  inst.cost_budget = 0;
  EXPECT_THROW(compress_step(inst, {0, 1}), PreconditionError);
}

TEST(CompressStep, ReportsInfeasibility) {
  // Two disjoint strict cycles need two deletions; the budget allows one.
  auto inst = parse_instance("k 1\nlt a b soft\nlt b a soft\nlt c d soft\nlt d c soft\n");
  EXPECT_FALSE(compress_step(inst, {0, 2}));
}

TEST(CompressionDriver, NoCompressionWhenSatisfiable) {
  auto inst = parse_instance("k 0\nlt a b soft\neq b c soft\nneq a c soft\n");
  PipelineStats stats;
  auto r = solve(inst, &stats);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->solution.cost, 0);
  EXPECT_EQ(stats.compress_calls, 0);
  EXPECT_EQ(r->values.size(), 3u);
}

TEST(CompressionDriver, CrispConflictAndLeqAreRejected) {
  EXPECT_FALSE(solve(parse_instance("k 3\nlt a b crisp\nlt b a crisp\nlt a c soft\n")));
  EXPECT_THROW(solve(parse_instance("k 1\nleq a b soft\n")), PreconditionError);
}

TEST(CompressionDriver, WeightBreaksCostTies) {
  auto inst = parse_instance("k 1\nlt a b soft 4\nlt b a soft 2\n");
  PipelineStats stats;
  auto r = solve(inst, &stats);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->solution.deleted, (std::vector<ConstraintId>{1}));
  EXPECT_EQ(r->solution.weight, 2);
  EXPECT_GT(stats.compress_calls, 0);
}
