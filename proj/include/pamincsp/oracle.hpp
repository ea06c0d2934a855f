#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pamincsp/boolean.hpp"
#include "pamincsp/clique.hpp"
#include "pamincsp/graph_problem.hpp"
#include "pamincsp/model.hpp"
#include "pamincsp/pipeline.hpp"
#include "pamincsp/weak_order.hpp"

// Assumption-free exhaustive solvers. Everything else in the library is checked
// against these, so they only enumerate and never prune on structure.

namespace pamincsp {

inline constexpr int kMaxOracleVariables = 9;
inline constexpr int kMaxOracleObjects = 26;
inline constexpr int kMaxOracleBudget = 13;
inline constexpr double kMaxCliqueSelections = 1e6;

/// Exact (cost, weight, lexicographic)-minimal solution by enumerating every
/// weak order of the variables.
inline std::optional<std::pair<Solution, Assignment>>
brute_force_mincsp(const Instance &inst) {
  const int n = static_cast<int>(inst.num_variables());
  if (n > kMaxOracleVariables)
    throw GuardExceeded("brute_force_mincsp limited to " +
                        std::to_string(kMaxOracleVariables) + " variables, got " +
                        std::to_string(n));
  std::optional<std::pair<Solution, Assignment>> best;
  Solution current;
  enumerate_weak_orders(n, [&](std::span<const std::int64_t> rank) {
    current.deleted.clear();
    current.cost = 0;
    current.weight = 0;
    for (const auto &c : inst.constraints) {
      if (satisfied_by_ranks(c.rel, rank[static_cast<std::size_t>(c.x)],
                             rank[static_cast<std::size_t>(c.y)]))
        continue;
      if (c.crisp())
        return;
      current.deleted.push_back(c.id);
      current.cost += 1;
      current.weight += c.weight;
      if (current.cost > inst.cost_budget)
        return;
    }
    if (!inst.within_weight_budget(current.weight))
      return;
    if (!best || solution_less(current, best->first))
      best = std::make_pair(current, Assignment{{rank.begin(), rank.end()}});
  });
  return best;
}

/// Optimal solution of a graph problem: a set of deletable object ids.
struct GraphSolution {
  std::vector<int> deleted;
  std::int64_t cost = 0;
  Weight weight = 0;

  bool operator==(const GraphSolution &) const = default;
};

namespace detail {

inline void check_graph_guard(const GraphProblemInstance &g, std::size_t deletable,
                              const char *who) {
  const auto budget = std::min<std::int64_t>(g.cost_budget,
                                             static_cast<std::int64_t>(deletable));
  if (deletable > static_cast<std::size_t>(kMaxOracleObjects) || budget > kMaxOracleBudget)
    throw GuardExceeded(std::string(who) + " limited to " +
                        std::to_string(kMaxOracleObjects) + " deletable objects and budget " +
                        std::to_string(kMaxOracleBudget) + ", got " +
                        std::to_string(deletable) + " and " + std::to_string(budget));
}

/// Visits all size-s index combinations of 0..m-1 in lexicographic order.
/// Stops when `visit` returns true.
template <class Visit>
bool for_each_combination(int m, int s, Visit &&visit) {
  std::vector<int> idx(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i)
    idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (visit(std::span<const int>(idx)))
      return true;
    int i = s - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - s + i)
      --i;
    if (i < 0)
      return false;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < s; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

} // namespace detail

/// Exact (cost, weight, lexicographic)-minimal solution of any of the four
/// graph problems by subset enumeration in increasing size.
inline std::optional<GraphSolution> brute_force_graph_problem(const GraphProblemInstance &g) {
  const std::vector<int> deletable = g.deletable_objects();
  detail::check_graph_guard(g, deletable.size(), "brute_force_graph_problem");
  const int m = static_cast<int>(deletable.size());
  const int max_size = static_cast<int>(std::min<std::int64_t>(g.cost_budget, m));
  GraphSolutionChecker checker(g);
  std::vector<int> chosen;
  for (int s = 0; s <= max_size; ++s) {
    std::optional<GraphSolution> best;
    detail::for_each_combination(m, s, [&](std::span<const int> idx) {
      Weight w = 0;
      chosen.clear();
      for (int i : idx) {
        chosen.push_back(deletable[static_cast<std::size_t>(i)]);
        w += g.object_weight(chosen.back());
      }
      if ((g.weight_budget && w > *g.weight_budget) || (best && w >= best->weight))
        return false;
      if (checker.accepts(chosen))
        best = GraphSolution{chosen, s, w};
      return false;
    });
    if (best)
      return best;
  }
  return std::nullopt;
}

/// Minimum-cardinality DSMC solution: the first subset, by increasing size and
/// then lexicographically, whose removal separates every surviving request.
inline std::optional<std::vector<int>> brute_force_dsmc(const GraphProblemInstance &g) {
  if (g.kind != GraphProblemKind::DSMC)
    throw PreconditionError("brute_force_dsmc expects a dsmc instance");
  const std::vector<int> deletable = g.deletable_objects();
  detail::check_graph_guard(g, deletable.size(), "brute_force_dsmc");
  const int m = static_cast<int>(deletable.size());
  const int max_size = static_cast<int>(std::min<std::int64_t>(g.cost_budget, m));
  GraphSolutionChecker checker(g);
  std::vector<int> chosen;
  std::optional<std::vector<int>> found;
  for (int s = 0; s <= max_size && !found; ++s) {
    detail::for_each_combination(m, s, [&](std::span<const int> idx) {
      chosen.clear();
      Weight w = 0;
      for (int i : idx) {
        chosen.push_back(deletable[static_cast<std::size_t>(i)]);
        w += g.object_weight(chosen.back());
      }
      if (g.weight_budget && w > *g.weight_budget)
        return false;
      if (!checker.accepts(chosen))
        return false;
      found = chosen;
      return true;
    });
  }
  return found;
}

namespace detail {

inline void check_clique_guard(const CliqueInstance &g) {
  double selections = std::pow(static_cast<double>(g.n()), g.k());
  if (selections > kMaxCliqueSelections)
    throw GuardExceeded("multicolored clique enumeration limited to 10^6 selections");
}

template <class Visit>
void for_each_multicolored_clique(const CliqueInstance &g, Visit &&visit) {
  const int k = g.k();
  const int n = g.n();
  std::vector<int> pick(static_cast<std::size_t>(k), 0);
  if (k == 0 || n == 0)
    return;
  while (true) {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i)
      for (int j = i + 1; j < k && ok; ++j)
        ok = g.adjacent(g.parts[static_cast<std::size_t>(i)][static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])],
                        g.parts[static_cast<std::size_t>(j)][static_cast<std::size_t>(pick[static_cast<std::size_t>(j)])]);
    if (ok) {
      std::vector<int> z;
      for (int i = 0; i < k; ++i)
        z.push_back(g.parts[static_cast<std::size_t>(i)][static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])]);
      if (visit(z))
        return;
    }
    int i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - 1)
      pick[static_cast<std::size_t>(i--)] = 0;
    if (i < 0)
      return;
    ++pick[static_cast<std::size_t>(i)];
  }
}

} // namespace detail

/// First pairwise-adjacent selection of one vertex per part, in odometer order.
inline std::optional<std::vector<int>> brute_force_multicolored_clique(const CliqueInstance &g) {
  detail::check_clique_guard(g);
  std::optional<std::vector<int>> found;
  detail::for_each_multicolored_clique(g, [&](const std::vector<int> &z) {
    found = z;
    return true;
  });
  return found;
}

inline std::vector<std::vector<int>> all_multicolored_cliques(const CliqueInstance &g) {
  detail::check_clique_guard(g);
  std::vector<std::vector<int>> out;
  detail::for_each_multicolored_clique(g, [&](const std::vector<int> &z) {
    out.push_back(z);
    return false;
  });
  return out;
}

/// min_weight[c] is the least weight of a feasible deletion set of cost exactly
/// c (c = 0..max_cost), or nullopt. Budgets stored in the instances are ignored.
using MinWeightProfile = std::vector<std::optional<Weight>>;

/// Yes/no at budget pair (k', W'): some cost c <= k' has min_weight[c] <= W'.
inline bool profile_accepts(const MinWeightProfile &p, std::int64_t k, Weight w) {
  for (std::int64_t c = 0; c <= k && c < static_cast<std::int64_t>(p.size()); ++c)
    if (p[static_cast<std::size_t>(c)] && *p[static_cast<std::size_t>(c)] <= w)
      return true;
  return false;
}

/// Compressed side: every weak order of the base variables that agrees with the
/// anchor classes (equal inside a class, classes strictly increasing).
inline MinWeightProfile compressed_min_weight_profile(const CompressedInstance &ci,
                                                      std::int64_t max_cost) {
  const int n = static_cast<int>(ci.base.num_variables());
  if (n > kMaxOracleVariables)
    throw GuardExceeded("compressed oracle limited to " + std::to_string(kMaxOracleVariables) +
                        " variables");
  MinWeightProfile out(static_cast<std::size_t>(max_cost + 1));
  enumerate_weak_orders(n, [&](std::span<const std::int64_t> rank) {
    std::int64_t prev = -1;
    for (const auto &cls : ci.anchors) {
      const auto r = rank[static_cast<std::size_t>(cls.front())];
      for (VarId v : cls)
        if (rank[static_cast<std::size_t>(v)] != r)
          return;
      if (r <= prev)
        return;
      prev = r;
    }
    std::int64_t cost = 0;
    Weight weight = 0;
    for (const auto &c : ci.base.constraints) {
      if (satisfied_by_ranks(c.rel, rank[static_cast<std::size_t>(c.x)], rank[static_cast<std::size_t>(c.y)]))
        continue;
      if (c.crisp())
        return;
      ++cost;
      weight += c.weight;
    }
    if (cost > max_cost)
      return;
    auto &slot = out[static_cast<std::size_t>(cost)];
    if (!slot || weight < *slot)
      slot = weight;
  });
  return out;
}

/// Boolean side: every set of at most max_cost soft constraints, checking the
/// remaining clauses with 2-SAT.
inline MinWeightProfile boolean_min_weight_profile(const BooleanInstance &bi, std::int64_t max_cost) {
  std::vector<int> soft;
  for (const auto &bc : bi.constraints)
    if (bc.soft())
      soft.push_back(bc.id);
  if (soft.size() > static_cast<std::size_t>(kMaxOracleObjects))
    throw GuardExceeded("Boolean subset oracle limited to " + std::to_string(kMaxOracleObjects) +
                        " soft constraints");
  MinWeightProfile out(static_cast<std::size_t>(max_cost + 1));
  const int m = static_cast<int>(soft.size());
  std::vector<char> removed(bi.constraints.size(), 0);
  std::vector<Clause> clauses;
  for (int s = 0; s <= std::min<std::int64_t>(max_cost, m); ++s)
    detail::for_each_combination(m, s, [&](std::span<const int> idx) {
      std::fill(removed.begin(), removed.end(), 0);
      Weight w = 0;
      for (int i : idx) {
        const int id = soft[static_cast<std::size_t>(i)];
        removed[static_cast<std::size_t>(id)] = 1;
        w += bi.constraints[static_cast<std::size_t>(id)].weight;
      }
      auto &slot = out[static_cast<std::size_t>(s)];
      if (slot && *slot <= w)
        return false;
      clauses.clear();
      for (const auto &bc : bi.constraints)
        if (!removed[static_cast<std::size_t>(bc.id)])
          clauses.insert(clauses.end(), bc.clauses.begin(), bc.clauses.end());
      if (two_sat_satisfiable(static_cast<int>(bi.variables.size()), clauses))
        slot = w;
      return false;
    });
  return out;
}

/// Exact Boolean MinCSP by subset enumeration: (cost, weight, ids)-minimal
/// deletion set within the instance's budgets.
inline std::optional<std::vector<int>> brute_force_boolean_mincsp(const BooleanInstance &bi) {
  std::vector<int> soft;
  for (const auto &bc : bi.constraints)
    if (bc.soft())
      soft.push_back(bc.id);
  if (soft.size() > static_cast<std::size_t>(kMaxOracleObjects))
    throw GuardExceeded("Boolean subset oracle limited to " + std::to_string(kMaxOracleObjects) +
                        " soft constraints");
  const int m = static_cast<int>(soft.size());
  std::vector<char> removed(bi.constraints.size(), 0);
  std::vector<Clause> clauses;
  for (int s = 0; s <= std::min<std::int64_t>(bi.cost_budget, m); ++s) {
    std::optional<std::pair<Weight, std::vector<int>>> best;
    detail::for_each_combination(m, s, [&](std::span<const int> idx) {
      std::fill(removed.begin(), removed.end(), 0);
      Weight w = 0;
      std::vector<int> ids;
      for (int i : idx) {
        const int id = soft[static_cast<std::size_t>(i)];
        removed[static_cast<std::size_t>(id)] = 1;
        ids.push_back(id);
        w += bi.constraints[static_cast<std::size_t>(id)].weight;
      }
      if ((bi.weight_budget && w > *bi.weight_budget) || (best && best->first <= w))
        return false;
      clauses.clear();
      for (const auto &bc : bi.constraints)
        if (!removed[static_cast<std::size_t>(bc.id)])
          clauses.insert(clauses.end(), bc.clauses.begin(), bc.clauses.end());
      if (two_sat_satisfiable(static_cast<int>(bi.variables.size()), clauses))
        best = std::make_pair(w, ids);
      return false;
    });
    if (best)
      return best->second;
  }
  return std::nullopt;
}

} // namespace pamincsp
