#include <gtest/gtest.h>

#include "pamincsp/instance_io.hpp"
#include "pamincsp/random.hpp"
#include "pamincsp/weak_order.hpp"

using namespace pamincsp;

TEST(InstanceIo, ParsesBudgetsAndConstraints) {
  auto inst = parse_instance("# sample\nk 2\nw 5\nlt x y soft 3\nneq y z crisp\nleq z x soft\n");
  EXPECT_EQ(inst.cost_budget, 2);
  ASSERT_TRUE(inst.weight_budget);
  EXPECT_EQ(*inst.weight_budget, 5);
  ASSERT_EQ(inst.num_variables(), 3u);
  ASSERT_EQ(inst.num_constraints(), 3u);
  EXPECT_EQ(inst.constraints[0].rel, Relation::LT);
  EXPECT_EQ(inst.constraints[0].weight, 3);
  EXPECT_TRUE(inst.constraints[1].crisp());
  EXPECT_EQ(inst.constraints[2].id, 2);
  EXPECT_EQ(inst.constraints[2].weight, 1);
}

TEST(InstanceIo, InfiniteWeightBudget) {
  auto inst = parse_instance("k 0\nw inf\neq a b soft\n");
  EXPECT_FALSE(inst.weight_budget);
}

TEST(InstanceIo, RejectsMalformedInput) {
  EXPECT_THROW(parse_instance("lt x y soft\n"), ParseError);
  EXPECT_THROW(parse_instance("k 1\nk 2\n"), ParseError);
  EXPECT_THROW(parse_instance("k -1\n"), ParseError);
  EXPECT_THROW(parse_instance("k 1\ngt x y soft\n"), ParseError);
  EXPECT_THROW(parse_instance("k 1\nlt x y maybe\n"), ParseError);
  EXPECT_THROW(parse_instance("k 1\nlt x soft\n"), ParseError);
  EXPECT_THROW(parse_instance("k 1\nlt x y soft 0\n"), ParseError);
  EXPECT_THROW(parse_instance("k 1\nw 0\n"), ParseError);
}

TEST(InstanceIo, RoundTripCorpus) {
  const RelationSet all{Relation::LT, Relation::LEQ, Relation::EQ, Relation::NEQ};
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomInstanceParams p;
    p.num_variables = 1 + static_cast<int>(seed % 7);
    p.num_constraints = static_cast<int>(seed % 11);
    p.relations = all;
    p.crisp_probability = 0.3;
    p.max_weight = 9;
    p.cost_budget = static_cast<std::int64_t>(seed % 4);
    if (seed % 3 == 0)
      p.weight_budget = 7;
    p.allow_self_loops = p.num_variables == 1 || seed % 2 == 0;
    Instance inst = gen_random_instance(seed, p);
    const std::string text = serialize_instance(inst);
    Instance back = parse_instance(text);
    // Parsing interns variables in order of first mention, so compare the text.
    EXPECT_EQ(serialize_instance(back), text) << "seed " << seed;
    EXPECT_EQ(parse_instance(serialize_instance(back)), back) << "seed " << seed;
  }
}

TEST(Evaluate, CountsSoftViolationsAndFlagsCrisp) {
  auto inst = parse_instance("k 3\nlt x y soft 2\neq x y soft 5\nneq y z crisp\n");
  Assignment a{{0, 1, 1}}; // x < y = z
  auto r = evaluate(inst, a);
  EXPECT_EQ(r.violated, (std::vector<ConstraintId>{1, 2}));
  EXPECT_EQ(r.cost, 1);
  EXPECT_EQ(r.weight, 5);
  EXPECT_TRUE(r.crisp_violation);
  EXPECT_FALSE(witnesses(inst, a, {1}));
  Assignment b{{0, 1, 2}};
  EXPECT_TRUE(witnesses(inst, b, {1}));
  EXPECT_FALSE(witnesses(inst, b, {}));
  EXPECT_THROW(evaluate(inst, Assignment{{0}}), PreconditionError);
}

TEST(Normalize, OverweightSoftBecomesCrisp) {
  auto inst = parse_instance("k 2\nw 4\nlt x y soft 5\nlt y x soft 4\n");
  auto n = normalize(inst);
  EXPECT_TRUE(n.constraints[0].crisp());
  EXPECT_TRUE(n.constraints[1].soft());
}

TEST(MakeSolution, RejectsCrispIds) {
  auto inst = parse_instance("k 2\nlt x y soft 2\nlt y x crisp\n");
  auto s = make_solution(inst, {0, 0});
  EXPECT_EQ(s.deleted, (std::vector<ConstraintId>{0}));
  EXPECT_EQ(s.weight, 2);
  EXPECT_THROW(make_solution(inst, {1}), PreconditionError);
}

TEST(Classifier, KnownFragments) {
  EXPECT_EQ(classify_language({}), LanguageClass::PolyTime);
  EXPECT_EQ(classify_language({Relation::EQ, Relation::LEQ}), LanguageClass::PolyTime);
  EXPECT_EQ(classify_language({Relation::NEQ}), LanguageClass::PolyTime);
  EXPECT_EQ(classify_language({Relation::LT}), LanguageClass::FPT);
  EXPECT_EQ(classify_language({Relation::EQ, Relation::NEQ}), LanguageClass::FPT);
  EXPECT_EQ(classify_language({Relation::LT, Relation::EQ, Relation::NEQ}), LanguageClass::FPT);
  EXPECT_EQ(classify_language({Relation::LT, Relation::LEQ, Relation::EQ}), LanguageClass::FPT);
  EXPECT_EQ(classify_language({Relation::LEQ, Relation::NEQ}), LanguageClass::W1Hard);
  EXPECT_EQ(classify_language({Relation::LT, Relation::LEQ, Relation::EQ, Relation::NEQ}),
            LanguageClass::W1Hard);
}

// Ordered Bell (Fubini) numbers from a(n) = sum_{i=1..n} C(n,i) a(n-i).
TEST(WeakOrders, CountsMatchFubiniRecurrence) {
  std::vector<long> fubini{1};
  for (int n = 1; n <= 7; ++n) {
    long total = 0, binom = 1;
    for (int i = 1; i <= n; ++i) {
      binom = binom * (n - i + 1) / i;
      total += binom * fubini[static_cast<std::size_t>(n - i)];
    }
    fubini.push_back(total);
  }
  for (int n = 0; n <= 7; ++n) {
    auto orders = all_weak_orders(n);
    EXPECT_EQ(static_cast<long>(orders.size()), fubini[static_cast<std::size_t>(n)]) << "n=" << n;
    std::sort(orders.begin(), orders.end());
    EXPECT_EQ(std::adjacent_find(orders.begin(), orders.end()), orders.end()) << "duplicates, n=" << n;
    for (const auto &r : orders) {
      // Dense: the ranks used are exactly 0..max.
      std::vector<std::int64_t> used(r.begin(), r.end());
      std::sort(used.begin(), used.end());
      used.erase(std::unique(used.begin(), used.end()), used.end());
      for (std::size_t i = 0; i < used.size(); ++i)
        EXPECT_EQ(used[i], static_cast<std::int64_t>(i));
    }
  }
  EXPECT_THROW(all_weak_orders(kMaxWeakOrderElements + 1), GuardExceeded);
}
