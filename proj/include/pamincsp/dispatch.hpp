#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pamincsp/model.hpp"
#include "pamincsp/oracle.hpp"
#include "pamincsp/pipeline.hpp"
#include "pamincsp/reductions.hpp"
#include "pamincsp/satisfiability.hpp"

// Routes an instance to an exact engine according to the language it uses.

namespace pamincsp {

enum class Engine { Auto, Pipeline, Oracle };

inline std::optional<Engine> engine_from_token(std::string_view tok) {
  if (tok == "auto")
    return Engine::Auto;
  if (tok == "pipeline")
    return Engine::Pipeline;
  if (tok == "oracle")
    return Engine::Oracle;
  return std::nullopt;
}

enum class SolveStatus { Yes, No, UnsatCrisp };

struct DispatchResult {
  SolveStatus status = SolveStatus::No;
  Solution solution;
  Assignment assignment;
  std::vector<RationalValue> values;
  LanguageClass language = LanguageClass::PolyTime;
  std::string route;
  std::vector<std::string> notices;
};

namespace detail {

inline void accept(DispatchResult &r, const Instance &inst, Solution s, Assignment a,
                   std::vector<RationalValue> values = {}) {
  if (!witnesses(inst, a, s.deleted))
    throw std::logic_error("engine returned an unwitnessed solution on route " + r.route);
  if (values.empty())
    values = integer_values(a);
  r.status = SolveStatus::Yes;
  r.solution = std::move(s);
  r.assignment = std::move(a);
  r.values = std::move(values);
}

inline void run_oracle(DispatchResult &r, const Instance &inst) {
  if (auto o = brute_force_mincsp(inst))
    accept(r, inst, o->first, o->second);
}

inline void run_pipeline(DispatchResult &r, const Instance &inst) {
  if (auto p = solve(inst))
    accept(r, inst, p->solution, p->assignment, p->values);
}

/// {<,!=}: drop disequalities, solve the < part, then make the witness injective.
inline void run_lt_neq(DispatchResult &r, const Instance &inst) {
  DisequalityDrop drop = drop_disequalities(inst);
  Solution forced = make_solution(inst, drop.forced);
  Instance rest = drop.instance;
  rest.cost_budget -= forced.cost;
  if (rest.weight_budget)
    *rest.weight_budget -= forced.weight;
  if (rest.cost_budget < 0 || (rest.weight_budget && *rest.weight_budget < 0))
    return;
  auto p = solve(rest);
  if (!p)
    return;
  std::vector<ConstraintId> ids = drop.forced;
  for (ConstraintId id : p->solution.deleted)
    ids.push_back(drop.source[static_cast<std::size_t>(id)]);
  accept(r, inst, make_solution(inst, ids), linearize(p->assignment));
}

} // namespace detail

/// Exact solve. Crisp-unsatisfiable instances are reported as such before any
/// engine runs. Auto routing by the relations present:
///   within {=,<=} or {!=}       zero-cost assignment
///   {<,!=} with both present    drop != and run the pipeline on <
///   within {<,=,!=}             pipeline
///   within {<,<=,=}             = rewritten as two <=, exhaustive oracle
///   containing <= and !=        exhaustive oracle (the language is W[1]-hard)
inline DispatchResult dispatch_solve(const Instance &input, Engine engine = Engine::Auto) {
  const Instance inst = normalize(input);
  DispatchResult r;
  const RelationSet rels = inst.relations();
  r.language = classify_language(rels);

  std::vector<bool> crisp(inst.num_constraints());
  for (const auto &c : inst.constraints)
    crisp[static_cast<std::size_t>(c.id)] = c.crisp();
  if (!check_satisfiable(restrict_constraints(inst, crisp))) {
    r.route = "crisp-check";
    r.status = SolveStatus::UnsatCrisp;
    return r;
  }

  const RelationSet fpt_core{Relation::LT, Relation::EQ, Relation::NEQ};
  if (engine == Engine::Oracle) {
    r.route = "oracle";
    detail::run_oracle(r, inst);
    return r;
  }
  if (engine == Engine::Pipeline) {
    if (!rels.subset_of(fpt_core))
      throw PreconditionError("the pipeline engine handles relations within {lt,eq,neq}, got " +
                              rels.to_string());
    r.route = "pipeline";
    detail::run_pipeline(r, inst);
    return r;
  }

  if (r.language == LanguageClass::PolyTime) {
    r.route = "polytime";
    if (auto t = trivial_solve(inst))
      detail::accept(r, inst, t->first, t->second);
  } else if (rels.contains(Relation::LT) && rels.contains(Relation::NEQ) &&
             rels.subset_of({Relation::LT, Relation::NEQ})) {
    r.route = "drop-neq+pipeline";
    detail::run_lt_neq(r, inst);
  } else if (rels.subset_of(fpt_core)) {
    r.route = "pipeline";
    detail::run_pipeline(r, inst);
  } else if (rels.subset_of({Relation::LT, Relation::LEQ, Relation::EQ})) {
    r.route = "eq-as-leq+oracle";
    r.notices.push_back("exact, non-FPT engine");
    Rewrite rw = rewrite_eq_as_leq(inst);
    if (auto o = brute_force_mincsp(rw.instance))
      detail::accept(r, inst, pull_back_rewrite(inst, rw, o->first, o->second), o->second);
  } else {
    r.route = "oracle";
    r.notices.push_back("MinCSP over a language containing <= and != is W[1]-hard; "
                        "using the exhaustive oracle");
    detail::run_oracle(r, inst);
  }
  return r;
}

} // namespace pamincsp
