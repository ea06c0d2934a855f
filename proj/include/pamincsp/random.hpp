#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pamincsp/clique.hpp"
#include "pamincsp/model.hpp"
#include "pamincsp/pipeline.hpp"
#include "pamincsp/satisfiability.hpp"

// Seeded generators for tests, the bench harness and the `gen` command.

namespace pamincsp {

struct RandomInstanceParams {
  int num_variables = 4;
  int num_constraints = 6;
  RelationSet relations = {Relation::LT, Relation::EQ, Relation::NEQ};
  double crisp_probability = 0.0;
  /// Crisp draws beyond this many become soft. Negative means no cap.
  int max_crisp = -1;
  Weight max_weight = 1;
  std::int64_t cost_budget = 1;
  std::optional<Weight> weight_budget;
  bool allow_self_loops = false;
};

namespace detail {

inline std::vector<Relation> relation_list(RelationSet s) {
  std::vector<Relation> out;
  for (Relation r : kAllRelations)
    if (s.contains(r))
      out.push_back(r);
  return out;
}

inline std::int64_t uniform(std::mt19937_64 &rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

} // namespace detail

/// Deterministic for a fixed seed: variables x0..x{n-1}, uniform endpoints
/// (distinct unless self-loops are allowed), uniform relation from the set.
inline Instance gen_random_instance(std::uint64_t seed, const RandomInstanceParams &p) {
  if (p.num_variables < 1 || p.num_constraints < 0 || p.relations.empty() || p.max_weight < 1)
    throw PreconditionError("random instance parameters must be positive");
  if (p.num_variables < 2 && !p.allow_self_loops && p.num_constraints > 0)
    throw PreconditionError("two variables are needed without self-loops");
  std::mt19937_64 rng(seed);
  const auto rels = detail::relation_list(p.relations);
  Instance inst;
  for (int v = 0; v < p.num_variables; ++v)
    inst.variables.push_back("x" + std::to_string(v));
  inst.cost_budget = p.cost_budget;
  inst.weight_budget = p.weight_budget;
  std::bernoulli_distribution crisp(p.crisp_probability);
  int crisp_count = 0;
  for (int c = 0; c < p.num_constraints; ++c) {
    auto x = static_cast<VarId>(detail::uniform(rng, 0, p.num_variables - 1));
    auto y = static_cast<VarId>(detail::uniform(rng, 0, p.num_variables - 1));
    while (!p.allow_self_loops && y == x)
      y = static_cast<VarId>(detail::uniform(rng, 0, p.num_variables - 1));
    Relation rel = rels[static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<std::int64_t>(rels.size()) - 1))];
    bool is_crisp = crisp(rng) && (p.max_crisp < 0 || crisp_count < p.max_crisp);
    Weight w = detail::uniform(rng, 1, p.max_weight);
    if (is_crisp) {
      ++crisp_count;
      inst.add(x, y, rel, Softness::Crisp, 1);
    } else {
      inst.add(x, y, rel, Softness::Soft, w);
    }
  }
  return inst;
}

/// k parts of n vertices; each cross-part pair is an edge with the given probability.
inline CliqueInstance gen_random_clique_instance(std::uint64_t seed, int k, int n,
                                                 double edge_probability) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(edge_probability);
  CliqueInstance g = CliqueInstance::with_parts(k, n);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (edge(rng))
            g.add_edge(g.parts[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)],
                       g.parts[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)]);
  return g;
}

/// A compressed instance over {<,=,!=}: satisfiable base (redrawn until it is),
/// up to `max_ell` anchor classes of one or two distinct variables each.
inline CompressedInstance gen_random_compressed_instance(std::uint64_t seed, int max_vars,
                                                         int max_constraints, int max_ell,
                                                         std::int64_t max_k, Weight max_weight) {
  std::mt19937_64 rng(seed);
  CompressedInstance ci;
  while (true) {
    RandomInstanceParams p;
    p.num_variables = static_cast<int>(detail::uniform(rng, 2, max_vars));
    p.num_constraints = static_cast<int>(detail::uniform(rng, 1, max_constraints));
    p.crisp_probability = 0.2;
    p.max_weight = max_weight;
    p.cost_budget = detail::uniform(rng, 0, max_k);
    if (detail::uniform(rng, 0, 1))
      p.weight_budget = detail::uniform(rng, 1, 2 * max_weight);
    ci.base = gen_random_instance(rng(), p);
    if (check_satisfiable(ci.base))
      break;
  }
  ci.cost_budget = ci.base.cost_budget;
  ci.weight_budget = ci.base.weight_budget;
  std::vector<VarId> pool(ci.base.num_variables());
  for (std::size_t v = 0; v < pool.size(); ++v)
    pool[v] = static_cast<VarId>(v);
  std::shuffle(pool.begin(), pool.end(), rng);
  const int ell = static_cast<int>(detail::uniform(rng, 0, std::min<std::int64_t>(max_ell, static_cast<std::int64_t>(pool.size()))));
  std::size_t next = 0;
  for (int i = 0; i < ell; ++i) {
    std::vector<VarId> cls{pool[next++]};
    const std::size_t remaining = pool.size() - next;
    if (remaining > static_cast<std::size_t>(ell - i - 1) && detail::uniform(rng, 0, 2) == 0)
      cls.push_back(pool[next++]);
    std::sort(cls.begin(), cls.end());
    ci.anchors.push_back(std::move(cls));
  }
  return ci;
}

} // namespace pamincsp
