#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pamincsp/gadgets.hpp"
#include "pamincsp/oracle.hpp"
#include "pamincsp/parallel.hpp"
#include "pamincsp/pipeline.hpp"
#include "pamincsp/random.hpp"
#include "pamincsp/reductions.hpp"
#include "pamincsp/instance_io.hpp"

// Seeded randomized suites comparing each engine against the exhaustive
// oracles. Shared by the bench command and the acceptance binary.

namespace pamincsp {

struct CaseResult {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::vector<CaseResult> cases;
  double seconds = 0;

  std::size_t passed() const {
    std::size_t n = 0;
    for (const auto &c : cases)
      n += c.pass ? 1 : 0;
    return n;
  }
  bool all_passed() const { return passed() == cases.size(); }
};

namespace detail {

inline std::uint64_t case_seed(std::uint64_t seed, std::size_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

template <class Case>
SuiteReport run_suite(std::string name, std::size_t count, unsigned workers, Case &&one) {
  SuiteReport report;
  report.name = std::move(name);
  report.cases.resize(count);
  const auto start = std::chrono::steady_clock::now();
  parallel_for(count, workers, [&](std::size_t i) {
    CaseResult &r = report.cases[i];
    try {
      r = one(i);
    } catch (const std::exception &e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    if (r.label.empty())
      r.label = "case " + std::to_string(i);
  });
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

inline std::string cost_weight(std::optional<std::pair<std::int64_t, Weight>> v) {
  if (!v)
    return "none";
  return "(" + std::to_string(v->first) + "," + std::to_string(v->second) + ")";
}

inline std::optional<std::pair<std::int64_t, Weight>>
optimum(const std::optional<std::pair<Solution, Assignment>> &r) {
  if (!r)
    return std::nullopt;
  return std::make_pair(r->first.cost, r->first.weight);
}

/// Soft and crisp constraints drawn separately and interleaved at random.
inline Instance mixed_instance(std::uint64_t seed, int nvars, int nsoft, int ncrisp,
                               RelationSet rels, Weight max_weight, std::int64_t k,
                               std::optional<Weight> w) {
  std::mt19937_64 rng(seed);
  RandomInstanceParams p;
  p.num_variables = nvars;
  p.relations = rels;
  p.max_weight = max_weight;
  p.num_constraints = nsoft;
  Instance soft = gen_random_instance(rng(), p);
  p.num_constraints = ncrisp;
  p.crisp_probability = 1.0;
  Instance crisp = gen_random_instance(rng(), p);
  Instance out;
  out.variables = soft.variables;
  out.cost_budget = k;
  out.weight_budget = w;
  std::size_t a = 0, b = 0;
  while (a < soft.constraints.size() || b < crisp.constraints.size()) {
    const std::size_t left_a = soft.constraints.size() - a, left_b = crisp.constraints.size() - b;
    const bool take_soft = std::uniform_int_distribution<std::size_t>(0, left_a + left_b - 1)(rng) < left_a;
    const Constraint &c = take_soft ? soft.constraints[a++] : crisp.constraints[b++];
    out.add(c.x, c.y, c.rel, c.softness, c.weight);
  }
  return out;
}

inline int uniform_int(std::mt19937_64 &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

} // namespace detail

/// Pipeline vs weak-order oracle on instances over {<,=,!=}: at most 6
/// variables, 10 soft and 3 crisp constraints, k <= 3, W infinite or <= 12.
inline SuiteReport suite_pipeline_vs_oracle(std::uint64_t seed, std::size_t count, unsigned workers) {
  return detail::run_suite("pipeline-vs-oracle", count, workers, [&](std::size_t i) {
    std::mt19937_64 rng(detail::case_seed(seed, i));
    const int nvars = detail::uniform_int(rng, 2, 6);
    const int nsoft = detail::uniform_int(rng, 1, 10);
    const int ncrisp = detail::uniform_int(rng, 0, 3);
    const Weight max_w = detail::uniform_int(rng, 1, 5);
    const std::int64_t k = detail::uniform_int(rng, 0, 3);
    std::optional<Weight> w;
    if (detail::uniform_int(rng, 0, 1))
      w = detail::uniform_int(rng, 1, 12);
    Instance inst = detail::mixed_instance(rng(), nvars, nsoft, ncrisp,
                                           {Relation::LT, Relation::EQ, Relation::NEQ}, max_w, k, w);
    auto expected = brute_force_mincsp(inst);
    auto got = solve(inst);
    CaseResult r;
    r.label = "case " + std::to_string(i);
    std::optional<std::pair<std::int64_t, Weight>> got_opt;
    if (got)
      got_opt = std::make_pair(got->solution.cost, got->solution.weight);
    r.pass = got_opt == detail::optimum(expected);
    if (got && !witnesses(inst, got->assignment, got->solution.deleted)) {
      r.pass = false;
      r.detail = "witness breaks a kept constraint; ";
    }
    r.detail += "pipeline " + detail::cost_weight(got_opt) + " oracle " +
                detail::cost_weight(detail::optimum(expected));
    if (!r.pass)
      r.detail += "\n" + serialize_instance(inst);
    return r;
  });
}

/// Compressed instances (<= 4 base variables, l <= 2, k <= 2): the oracle over
/// weak orders agreeing with the anchors and subset enumeration with 2-SAT on
/// the Boolean encoding accept exactly the same budget pairs. The branch and
/// bound Boolean solver is compared with subset enumeration on the same encoding.
inline SuiteReport suite_boolean_vs_subsets(std::uint64_t seed, std::size_t count, unsigned workers) {
  return detail::run_suite("boolean-vs-subsets", count, workers, [&](std::size_t i) {
    CompressedInstance ci = gen_random_compressed_instance(detail::case_seed(seed, i), 4, 6, 2, 2, 4);
    Booleanized b = booleanize(ci);
    const std::int64_t k = ci.cost_budget;
    MinWeightProfile lhs = compressed_min_weight_profile(ci, k);
    MinWeightProfile rhs = boolean_min_weight_profile(b.instance, k);
    CaseResult r;
    r.label = "case " + std::to_string(i);
    r.pass = true;
    Weight total = 1;
    for (const auto &c : ci.base.constraints)
      total += c.weight;
    for (std::int64_t kk = 0; kk <= k && r.pass; ++kk)
      for (Weight ww = 0; ww <= total && r.pass; ++ww)
        if (profile_accepts(lhs, kk, ww) != profile_accepts(rhs, kk, ww)) {
          r.pass = false;
          r.detail = "budget pair (" + std::to_string(kk) + "," + std::to_string(ww) + ") differs";
        }
    auto fast = solve_boolean_mincsp(b.instance);
    auto slow = brute_force_boolean_mincsp(b.instance);
    if (static_cast<bool>(fast) != static_cast<bool>(slow)) {
      r.pass = false;
      r.detail += " solver feasibility differs from subset enumeration";
    } else if (fast) {
      Weight slow_w = 0;
      for (int id : *slow)
        slow_w += b.instance.constraints[static_cast<std::size_t>(id)].weight;
      if (fast->cost != static_cast<std::int64_t>(slow->size()) || fast->weight != slow_w) {
        r.pass = false;
        r.detail += " solver optimum differs from subset enumeration";
      }
    }
    if (r.detail.empty())
      r.detail = "l=" + std::to_string(ci.ell()) + " k=" + std::to_string(k) + " agree";
    return r;
  });
}

/// Checks one graph encoding against the weak-order oracle and pulls the graph
/// optimum back into a witnessed CSP solution.
inline CaseResult check_graph_encoding(const Instance &inst, const GraphEncoding &enc) {
  CaseResult r;
  auto csp = brute_force_mincsp(inst);
  auto graph = brute_force_graph_problem(enc.graph);
  std::optional<std::pair<std::int64_t, Weight>> graph_opt;
  if (graph)
    graph_opt = std::make_pair(graph->cost, graph->weight);
  r.pass = graph_opt == detail::optimum(csp);
  r.detail = "csp " + detail::cost_weight(detail::optimum(csp)) + " graph " + detail::cost_weight(graph_opt);
  if (graph) {
    Solution back = make_solution(inst, enc.back.pull(graph->deleted));
    std::vector<bool> keep(inst.num_constraints(), true);
    for (ConstraintId id : back.deleted)
      keep[static_cast<std::size_t>(id)] = false;
    auto witness = check_satisfiable(restrict_constraints(inst, keep));
    if (!witness || !witnesses(inst, *witness, back.deleted) || back.cost != graph->cost ||
        back.weight != graph->weight) {
      r.pass = false;
      r.detail += "; pulled-back solution fails evaluation";
    }
  }
  Rewrite inverse = graph_to_mincsp(enc.graph);
  if (detail::optimum(brute_force_mincsp(inverse.instance)) != detail::optimum(csp)) {
    r.pass = false;
    r.detail += "; inverse encoding changes the optimum";
  }
  return r;
}

inline CaseResult check_rewrite(const Instance &inst, const Rewrite &rw) {
  CaseResult r;
  auto before = brute_force_mincsp(inst);
  auto after = brute_force_mincsp(rw.instance);
  r.pass = detail::optimum(before) == detail::optimum(after);
  r.detail = "before " + detail::cost_weight(detail::optimum(before)) + " after " +
             detail::cost_weight(detail::optimum(after));
  if (after) {
    Solution back = pull_back_rewrite(inst, rw, after->first, after->second);
    if (back.cost != after->first.cost || back.weight != after->first.weight ||
        !witnesses(inst, after->second, back.deleted)) {
      r.pass = false;
      r.detail += "; pulled-back solution fails evaluation";
    }
  }
  return r;
}

/// The six reductions (two rewrites, four graph encodings), `per_reduction`
/// seeded in-scope instances each.
inline SuiteReport suite_reductions_roundtrip(std::uint64_t seed, std::size_t per_reduction,
                                              unsigned workers) {
  static const char *names[] = {"eq-as-leq", "lt-as-leq-neq", "dfas", "multicut", "subset-dfas", "dsmc"};
  return detail::run_suite("reductions-roundtrip", 6 * per_reduction, workers, [&](std::size_t idx) {
    const std::size_t which = idx / per_reduction;
    std::mt19937_64 rng(detail::case_seed(seed, idx));
    RelationSet rels;
    RelationSet required;
    switch (which) {
    case 0:
      required = {Relation::EQ};
      rels = RelationSet::from_mask(static_cast<unsigned>(detail::uniform_int(rng, 0, 15)));
      break;
    case 1:
      required = {Relation::LT};
      rels = RelationSet::from_mask(static_cast<unsigned>(detail::uniform_int(rng, 0, 15)));
      break;
    case 2:
      rels = {Relation::LT};
      break;
    case 3:
      rels = {Relation::EQ, Relation::NEQ};
      break;
    case 4:
      rels = {Relation::LT, Relation::LEQ};
      break;
    default:
      rels = {Relation::LEQ, Relation::NEQ};
      break;
    }
    for (Relation rel : kAllRelations)
      if (required.contains(rel))
        rels.insert(rel);
    RandomInstanceParams p;
    p.num_variables = detail::uniform_int(rng, 2, 6);
    p.num_constraints = detail::uniform_int(rng, 1, 8);
    p.relations = rels;
    p.crisp_probability = 0.2;
    p.max_weight = detail::uniform_int(rng, 1, 4);
    p.cost_budget = detail::uniform_int(rng, 0, 3);
    if (detail::uniform_int(rng, 0, 1))
      p.weight_budget = detail::uniform_int(rng, 1, 10);
    Instance inst = gen_random_instance(rng(), p);
    CaseResult r;
    switch (which) {
    case 0:
      r = check_rewrite(inst, rewrite_eq_as_leq(inst));
      break;
    case 1:
      r = check_rewrite(inst, rewrite_lt_as_leq_neq(inst));
      break;
    case 2:
      r = check_graph_encoding(inst, to_dfas(inst));
      break;
    case 3:
      r = check_graph_encoding(inst, to_edge_multicut(inst));
      break;
    case 4:
      r = check_graph_encoding(inst, to_subset_dfas(inst));
      break;
    default:
      r = check_graph_encoding(inst, to_dsmc(inst));
      break;
    }
    r.label = std::string(names[which]) + " case " + std::to_string(idx % per_reduction);
    if (!r.pass)
      r.detail += "\n" + serialize_instance(inst);
    return r;
  });
}

/// The 16 clique instances with k = 2, n = 2, one per subset of the four cross
/// pairs; bit 2a+b of the mask adds the edge v1_{a+1} v2_{b+1}.
inline CliqueInstance k2n2_corpus_graph(unsigned mask) {
  CliqueInstance g = CliqueInstance::with_parts(2, 2);
  for (int bit = 0; bit < 4; ++bit)
    if (mask >> bit & 1u)
      g.add_edge(g.parts[0][static_cast<std::size_t>(bit / 2)], g.parts[1][static_cast<std::size_t>(bit % 2)]);
  return g;
}

/// Clique existence vs DSMC solvability at budget 12, both by exhaustive search.
/// A DSMC solution found must also be verified and map to a clique.
inline SuiteReport suite_gadget_k2n2(unsigned workers) {
  return detail::run_suite("gadget-k2n2", 16, workers, [&](std::size_t mask) {
    CliqueInstance g = k2n2_corpus_graph(static_cast<unsigned>(mask));
    DsmcGadget gadget = build_dsmc_from_clique(g);
    auto clique = brute_force_multicolored_clique(g);
    auto cut = brute_force_dsmc(gadget.dsmc);
    CaseResult r;
    r.label = "edges mask " + std::to_string(mask);
    r.pass = static_cast<bool>(clique) == static_cast<bool>(cut);
    r.detail = std::string("clique ") + (clique ? "yes" : "no") + ", cut " +
               (cut ? "size " + std::to_string(cut->size()) : std::string("none"));
    if (cut) {
      if (!verify_dsmc_solution(gadget.dsmc, *cut)) {
        r.pass = false;
        r.detail += "; cut fails verification";
      }
      auto z = cut_to_clique(gadget.map, *cut);
      bool adjacent = static_cast<bool>(z);
      if (z)
        for (std::size_t a = 0; a < z->size(); ++a)
          for (std::size_t b = a + 1; b < z->size(); ++b)
            adjacent = adjacent && g.adjacent((*z)[a], (*z)[b]);
      if (!adjacent) {
        r.pass = false;
        r.detail += "; cut does not map to a clique";
      } else {
        r.detail += "; maps to a clique";
      }
    }
    return r;
  });
}

/// Random clique instances with k in {2,3}, n in {2,3,4}: every multicolored
/// clique maps to a verified cut of size 3k^2 whose runs are separated.
inline SuiteReport suite_gadget_forward(std::uint64_t seed, std::size_t count, unsigned workers) {
  return detail::run_suite("gadget-forward", count, workers, [&](std::size_t i) {
    std::mt19937_64 rng(detail::case_seed(seed, i));
    const int k = detail::uniform_int(rng, 2, 3);
    const int n = detail::uniform_int(rng, 2, 4);
    CliqueInstance g = gen_random_clique_instance(rng(), k, n, 0.75);
    DsmcGadget gadget = build_dsmc_from_clique(g);
    CaseResult r;
    r.label = "case " + std::to_string(i) + " k=" + std::to_string(k) + " n=" + std::to_string(n);
    r.pass = true;
    auto cliques = all_multicolored_cliques(g);
    for (const auto &z : cliques) {
      auto cut = clique_to_cut(gadget.map, z);
      if (static_cast<std::int64_t>(cut.size()) != 3LL * k * k ||
          !verify_dsmc_solution(gadget.dsmc, cut)) {
        r.pass = false;
        r.detail = "a clique maps to an invalid cut";
        break;
      }
      RunReport runs = analyze_runs(gadget.map, gadget.dsmc, cut);
      if (!runs.neighbours_separated || !runs.incidence_matches_types) {
        r.pass = false;
        r.detail = "run analysis failed";
        break;
      }
      if (cut_to_clique(gadget.map, cut) != z) {
        r.pass = false;
        r.detail = "round trip through the cut changes the clique";
        break;
      }
    }
    if (r.pass)
      r.detail = std::to_string(cliques.size()) + " cliques verified";
    return r;
  });
}

} // namespace pamincsp
