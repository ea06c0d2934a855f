#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "pamincsp/graph_problem.hpp"
#include "pamincsp/model.hpp"

namespace pamincsp {

/// Maps every output constraint (or graph object) id to the input id it came from.
struct BackMap {
  std::vector<int> source;

  /// Sorted, duplicate-free images of `ids`.
  std::vector<int> pull(const std::vector<int> &ids) const {
    std::vector<int> out;
    out.reserve(ids.size());
    for (int id : ids)
      out.push_back(source.at(static_cast<std::size_t>(id)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

struct Rewrite {
  Instance instance;
  BackMap back;
};

struct GraphEncoding {
  GraphProblemInstance graph;
  BackMap back; // object id -> constraint id
};

namespace detail {

inline Instance empty_like(const Instance &inst) {
  Instance out;
  out.variables = inst.variables;
  out.cost_budget = inst.cost_budget;
  out.weight_budget = inst.weight_budget;
  return out;
}

inline void require_relations(const Instance &inst, RelationSet allowed, const char *who) {
  if (!inst.relations().subset_of(allowed))
    throw PreconditionError(std::string(who) + " needs relations within " +
                            allowed.to_string() + ", got " + inst.relations().to_string());
}

inline GraphProblemInstance empty_graph(const Instance &inst, GraphProblemKind kind) {
  GraphProblemInstance g;
  g.kind = kind;
  g.vertices = inst.variables;
  g.cost_budget = inst.cost_budget;
  g.weight_budget = inst.weight_budget;
  return g;
}

} // namespace detail

/// x = y becomes the twins x <= y and y <= x, both with the source's softness and weight.
inline Rewrite rewrite_eq_as_leq(const Instance &inst) {
  Rewrite out{detail::empty_like(inst), {}};
  for (const auto &c : inst.constraints) {
    if (c.rel == Relation::EQ) {
      out.instance.add(c.x, c.y, Relation::LEQ, c.softness, c.weight);
      out.instance.add(c.y, c.x, Relation::LEQ, c.softness, c.weight);
      out.back.source.insert(out.back.source.end(), {c.id, c.id});
    } else {
      out.instance.add(c.x, c.y, c.rel, c.softness, c.weight);
      out.back.source.push_back(c.id);
    }
  }
  return out;
}

/// x < y becomes the twins x <= y and x != y.
inline Rewrite rewrite_lt_as_leq_neq(const Instance &inst) {
  Rewrite out{detail::empty_like(inst), {}};
  for (const auto &c : inst.constraints) {
    if (c.rel == Relation::LT) {
      out.instance.add(c.x, c.y, Relation::LEQ, c.softness, c.weight);
      out.instance.add(c.x, c.y, Relation::NEQ, c.softness, c.weight);
      out.back.source.insert(out.back.source.end(), {c.id, c.id});
    } else {
      out.instance.add(c.x, c.y, c.rel, c.softness, c.weight);
      out.back.source.push_back(c.id);
    }
  }
  return out;
}

/// Drops deleted constraints that the witness does not actually break. After a
/// twin rewrite at most one twin of each source is broken, so the result never
/// deletes both twins.
inline Solution canonicalize_deletions(const Instance &inst, const Solution &s,
                                       const Assignment &witness) {
  ViolationReport r = evaluate(inst, witness);
  if (r.crisp_violation ||
      !std::includes(s.deleted.begin(), s.deleted.end(), r.violated.begin(), r.violated.end()))
    throw PreconditionError("witness breaks constraints outside the solution");
  return make_solution(inst, r.violated);
}

/// Pulls a rewritten instance's solution back to the source instance. The
/// witness carries over unchanged because rewrites keep the variables.
inline Solution pull_back_rewrite(const Instance &source, const Rewrite &rw,
                                  const Solution &s, const Assignment &witness) {
  Solution canonical = canonicalize_deletions(rw.instance, s, witness);
  Solution out = make_solution(source, rw.back.pull(canonical.deleted));
  if (!witnesses(source, witness, out.deleted))
    throw Error("pulled-back solution is not witnessed");
  return out;
}

/// MinCSP(<) as directed feedback arc set: one arc per constraint.
inline GraphEncoding to_dfas(const Instance &inst) {
  detail::require_relations(inst, {Relation::LT}, "to_dfas");
  GraphEncoding out{detail::empty_graph(inst, GraphProblemKind::DFAS), {}};
  for (const auto &c : inst.constraints) {
    if (c.self_loop())
      throw PreconditionError("to_dfas rejects self-loop constraint " + std::to_string(c.id));
    out.graph.add_arc(c.x, c.y, c.softness, c.weight);
    out.back.source.push_back(c.id);
  }
  return out;
}

/// MinCSP(=,!=) as edge multicut: equalities are edges, disequalities are requests.
inline GraphEncoding to_edge_multicut(const Instance &inst) {
  detail::require_relations(inst, {Relation::EQ, Relation::NEQ}, "to_edge_multicut");
  GraphEncoding out{detail::empty_graph(inst, GraphProblemKind::EdgeMulticut), {}};
  std::vector<int> requests;
  for (const auto &c : inst.constraints) {
    if (c.rel == Relation::EQ) {
      out.graph.add_arc(c.x, c.y, c.softness, c.weight);
      out.back.source.push_back(c.id);
    } else {
      requests.push_back(c.id);
    }
  }
  for (int id : requests) {
    const auto &c = inst.constraints[static_cast<std::size_t>(id)];
    out.graph.add_request(c.x, c.y, c.softness, c.weight);
    out.back.source.push_back(id);
  }
  return out;
}

/// MinCSP(<,<=) as subset-DFAS: < constraints are special arcs.
inline GraphEncoding to_subset_dfas(const Instance &inst) {
  detail::require_relations(inst, {Relation::LT, Relation::LEQ}, "to_subset_dfas");
  GraphEncoding out{detail::empty_graph(inst, GraphProblemKind::SubsetDFAS), {}};
  for (const auto &c : inst.constraints) {
    out.graph.add_arc(c.x, c.y, c.softness, c.weight, c.rel == Relation::LT);
    out.back.source.push_back(c.id);
  }
  return out;
}

/// MinCSP(<=,!=) as directed symmetric multicut: <= are arcs, != are requests.
inline GraphEncoding to_dsmc(const Instance &inst) {
  detail::require_relations(inst, {Relation::LEQ, Relation::NEQ}, "to_dsmc");
  GraphEncoding out{detail::empty_graph(inst, GraphProblemKind::DSMC), {}};
  std::vector<int> requests;
  for (const auto &c : inst.constraints) {
    if (c.rel == Relation::LEQ) {
      out.graph.add_arc(c.x, c.y, c.softness, c.weight);
      out.back.source.push_back(c.id);
    } else {
      requests.push_back(c.id);
    }
  }
  for (int id : requests) {
    const auto &c = inst.constraints[static_cast<std::size_t>(id)];
    out.graph.add_request(c.x, c.y, c.softness, c.weight);
    out.back.source.push_back(id);
  }
  return out;
}

/// Inverse of the four encodings. The back map sends constraint ids to object ids.
inline Rewrite graph_to_mincsp(const GraphProblemInstance &g) {
  Rewrite out;
  out.instance.variables = g.vertices;
  out.instance.cost_budget = g.cost_budget;
  out.instance.weight_budget = g.weight_budget;
  for (std::size_t a = 0; a < g.arcs.size(); ++a) {
    const auto &arc = g.arcs[a];
    Relation rel = Relation::LEQ;
    switch (g.kind) {
    case GraphProblemKind::DFAS:
      rel = Relation::LT;
      break;
    case GraphProblemKind::EdgeMulticut:
      rel = Relation::EQ;
      break;
    case GraphProblemKind::SubsetDFAS:
      rel = arc.special ? Relation::LT : Relation::LEQ;
      break;
    case GraphProblemKind::DSMC:
      rel = Relation::LEQ;
      break;
    }
    out.instance.add(arc.from, arc.to, rel, arc.softness, arc.weight);
    out.back.source.push_back(static_cast<int>(a));
  }
  for (std::size_t r = 0; r < g.requests.size(); ++r) {
    const auto &q = g.requests[r];
    out.instance.add(q.s, q.t, Relation::NEQ, q.softness, q.weight);
    out.back.source.push_back(static_cast<int>(g.arcs.size() + r));
  }
  return out;
}

inline Rewrite dsmc_to_mincsp(const GraphProblemInstance &g) {
  if (g.kind != GraphProblemKind::DSMC)
    throw PreconditionError("dsmc_to_mincsp expects a dsmc instance");
  return graph_to_mincsp(g);
}

} // namespace pamincsp
