#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pamincsp/model.hpp"
#include "pamincsp/scc.hpp"

namespace pamincsp {

/// Ordering digraph of an instance: x->y for x<y and x<=y, both ways for x=y.
inline Csr ordering_graph(const Instance &inst) {
  std::vector<std::pair<int, int>> arcs;
  for (const auto &c : inst.constraints) {
    switch (c.rel) {
    case Relation::LT:
    case Relation::LEQ:
      arcs.emplace_back(c.x, c.y);
      break;
    case Relation::EQ:
      arcs.emplace_back(c.x, c.y);
      arcs.emplace_back(c.y, c.x);
      break;
    case Relation::NEQ:
      break;
    }
  }
  return Csr::build(static_cast<int>(inst.num_variables()), arcs);
}

/// Decides CSP(<,<=,=,!=) treating every constraint as mandatory. The instance
/// is unsatisfiable iff a < or != constraint has both endpoints in one strongly
/// connected component of the ordering graph. The witness ranks components by
/// their topological position, so variables of one component share a rank.
inline std::optional<Assignment> check_satisfiable(const Instance &inst) {
  Csr g = ordering_graph(inst);
  SccFinder scc;
  int nc = scc.run(g);
  for (const auto &c : inst.constraints) {
    if (c.rel != Relation::LT && c.rel != Relation::NEQ)
      continue;
    if (scc.component(c.x) == scc.component(c.y))
      return std::nullopt;
  }
  std::vector<int> pos = condensation_positions(g, scc.component(), nc);
  Assignment a;
  a.rank.resize(inst.num_variables());
  for (std::size_t v = 0; v < inst.num_variables(); ++v)
    a.rank[v] = pos[static_cast<std::size_t>(scc.component()[v])];
  return a;
}

/// Optimum for the zero-cost fragments: relations within {=,<=} are satisfied
/// by a constant assignment, relations within {!=} by an injective one. Only
/// != self-loops can be broken; they are deleted if the budgets allow.
inline std::optional<std::pair<Solution, Assignment>>
trivial_solve(const Instance &inst) {
  RelationSet rels = inst.relations();
  const bool constant = rels.subset_of({Relation::EQ, Relation::LEQ});
  const bool injective = rels.subset_of({Relation::NEQ});
  if (!constant && !injective)
    throw PreconditionError("trivial_solve needs relations within {eq,leq} or {neq}, got " +
                            rels.to_string());
  Assignment a;
  a.rank.assign(inst.num_variables(), 0);
  if (constant)
    return std::make_pair(Solution{}, a);

  for (std::size_t v = 0; v < a.rank.size(); ++v)
    a.rank[v] = static_cast<std::int64_t>(v);
  std::vector<ConstraintId> forced;
  for (const auto &c : inst.constraints) {
    if (!c.self_loop())
      continue;
    if (c.crisp())
      return std::nullopt;
    forced.push_back(c.id);
  }
  Solution s = make_solution(inst, forced);
  if (s.cost > inst.cost_budget || !inst.within_weight_budget(s.weight))
    return std::nullopt;
  return std::make_pair(s, a);
}

struct DisequalityDrop {
  Instance instance;                 // only the < constraints
  std::vector<ConstraintId> source;  // new id -> original id
  std::vector<ConstraintId> forced;  // != self-loops, must be deleted
};

/// For instances over {<,!=}: non-loop disequalities can always be satisfied by
/// perturbing a solution of the < part, so they are dropped.
inline DisequalityDrop drop_disequalities(const Instance &inst) {
  if (!inst.relations().subset_of({Relation::LT, Relation::NEQ}))
    throw PreconditionError("drop_disequalities needs relations within {lt,neq}, got " +
                            inst.relations().to_string());
  DisequalityDrop out;
  std::vector<bool> keep(inst.num_constraints(), false);
  for (const auto &c : inst.constraints) {
    if (c.rel == Relation::LT)
      keep[static_cast<std::size_t>(c.id)] = true;
    else if (c.self_loop())
      out.forced.push_back(c.id);
  }
  out.instance = restrict_constraints(inst, keep, &out.source);
  return out;
}

/// Refines a weak order into a linear order, breaking ties by variable id.
/// Every strict inequality of the input stays strict.
inline Assignment linearize(const Assignment &a) {
  std::vector<std::size_t> order(a.rank.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return a.rank[l] != a.rank[r] ? a.rank[l] < a.rank[r] : l < r;
  });
  Assignment out;
  out.rank.resize(a.rank.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    out.rank[order[pos]] = static_cast<std::int64_t>(pos);
  return out;
}

} // namespace pamincsp
