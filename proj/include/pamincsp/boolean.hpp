#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pamincsp/model.hpp"
#include "pamincsp/scc.hpp"

namespace pamincsp {

enum class BoolVarKind : std::uint8_t { C, P };

/// c_{v,i} (i in 1..l) or p_{v,j} (j in 1..2l+1) for source variable v.
struct BooleanVarId {
  BoolVarKind kind = BoolVarKind::C;
  VarId v = 0;
  int index = 1;

  bool operator==(const BooleanVarId &) const = default;
};

/// The five bijunctive clause shapes.
enum class ClauseShape : std::uint8_t {
  ForceTrue,  // (1 -> a)
  ForceFalse, // (a -> 0)
  Implies,    // (a -> b)
  Or,         // (a | b)
  Nand,       // (!a | !b)
};

struct Clause {
  ClauseShape shape = ClauseShape::ForceTrue;
  int a = 0;
  int b = -1; // unused for the unary shapes

  static Clause force_true(int a) { return {ClauseShape::ForceTrue, a, -1}; }
  static Clause force_false(int a) { return {ClauseShape::ForceFalse, a, -1}; }
  static Clause implies(int a, int b) { return {ClauseShape::Implies, a, b}; }
  static Clause either(int a, int b) { return {ClauseShape::Or, a, b}; }
  static Clause nand(int a, int b) { return {ClauseShape::Nand, a, b}; }

  bool binary() const { return shape != ClauseShape::ForceTrue && shape != ClauseShape::ForceFalse; }

  bool holds(std::span<const char> value) const {
    const bool x = value[static_cast<std::size_t>(a)] != 0;
    switch (shape) {
    case ClauseShape::ForceTrue:
      return x;
    case ClauseShape::ForceFalse:
      return !x;
    case ClauseShape::Implies:
      return !x || value[static_cast<std::size_t>(b)] != 0;
    case ClauseShape::Or:
      return x || value[static_cast<std::size_t>(b)] != 0;
    case ClauseShape::Nand:
      return !x || value[static_cast<std::size_t>(b)] == 0;
    }
    return false;
  }

  /// Canonical key: symmetric shapes get ordered operands.
  std::tuple<int, int, int> key() const {
    int x = a, y = b;
    if ((shape == ClauseShape::Or || shape == ClauseShape::Nand) && x > y)
      std::swap(x, y);
    return {static_cast<int>(shape), x, y};
  }

  bool operator==(const Clause &) const = default;
};

struct BooleanConstraint {
  int id = 0;
  std::vector<int> scope; // Boolean variable indices in first-use order
  std::vector<Clause> clauses;
  Softness softness = Softness::Crisp;
  Weight weight = 1;
  std::optional<ConstraintId> source;

  bool soft() const { return softness == Softness::Soft; }
  std::size_t arity() const { return scope.size(); }

  /// Recomputes the scope from the clauses.
  void rebuild_scope() {
    scope.clear();
    auto touch = [&](int x) {
      if (std::find(scope.begin(), scope.end(), x) == scope.end())
        scope.push_back(x);
    };
    for (const auto &cl : clauses) {
      touch(cl.a);
      if (cl.binary())
        touch(cl.b);
    }
  }
};

struct BooleanInstance {
  std::vector<BooleanVarId> variables;
  std::vector<BooleanConstraint> constraints;
  std::int64_t cost_budget = 0;
  std::optional<Weight> weight_budget;

  int add_variable(BooleanVarId id) {
    variables.push_back(id);
    return static_cast<int>(variables.size() - 1);
  }

  int add_constraint(std::vector<Clause> clauses, Softness softness, Weight weight,
                     std::optional<ConstraintId> source) {
    BooleanConstraint bc;
    bc.id = static_cast<int>(constraints.size());
    bc.clauses = std::move(clauses);
    bc.softness = softness;
    bc.weight = weight;
    bc.source = source;
    bc.rebuild_scope();
    constraints.push_back(std::move(bc));
    return constraints.back().id;
  }
};

namespace detail {

inline int pos_lit(int v) { return 2 * v; }
inline int neg_lit(int v) { return 2 * v + 1; }

/// The two implication arcs of a clause (one for unary shapes, duplicated).
inline std::pair<std::pair<int, int>, std::pair<int, int>> implication_arcs(const Clause &c) {
  switch (c.shape) {
  case ClauseShape::ForceTrue:
    return {{neg_lit(c.a), pos_lit(c.a)}, {neg_lit(c.a), pos_lit(c.a)}};
  case ClauseShape::ForceFalse:
    return {{pos_lit(c.a), neg_lit(c.a)}, {pos_lit(c.a), neg_lit(c.a)}};
  case ClauseShape::Implies:
    return {{pos_lit(c.a), pos_lit(c.b)}, {neg_lit(c.b), neg_lit(c.a)}};
  case ClauseShape::Or:
    return {{neg_lit(c.a), pos_lit(c.b)}, {neg_lit(c.b), pos_lit(c.a)}};
  case ClauseShape::Nand:
    return {{pos_lit(c.a), neg_lit(c.b)}, {pos_lit(c.b), neg_lit(c.a)}};
  }
  return {};
}

/// Reads a 2-SAT witness off a finished SCC run, or nullopt if some variable
/// shares a component with its negation.
inline std::optional<std::vector<char>> two_sat_witness(const SccFinder &scc, int num_vars) {
  std::vector<char> value(static_cast<std::size_t>(num_vars), 0);
  for (int v = 0; v < num_vars; ++v) {
    int cp = scc.component(pos_lit(v));
    int cn = scc.component(neg_lit(v));
    if (cp == cn)
      return std::nullopt;
    // Tarjan numbers sink components first.
    value[static_cast<std::size_t>(v)] = cp < cn ? 1 : 0;
  }
  return value;
}

} // namespace detail

/// Implication-graph 2-SAT over variables 0..num_vars-1.
inline std::optional<std::vector<char>> two_sat_satisfiable(int num_vars,
                                                            std::span<const Clause> clauses) {
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(clauses.size() * 2);
  for (const auto &c : clauses) {
    auto [first, second] = detail::implication_arcs(c);
    arcs.push_back(first);
    arcs.push_back(second);
  }
  Csr g = Csr::build(2 * num_vars, arcs);
  SccFinder scc;
  scc.run(g);
  return detail::two_sat_witness(scc, num_vars);
}

/// True iff the Gaifman graph of the constraint's formula has no induced 2K2:
/// every two vertex-disjoint edges are joined by some edge.
inline bool check_bijunctive_2k2_free(const BooleanConstraint &bc) {
  const std::size_t r = bc.scope.size();
  auto local = [&](int var) {
    return static_cast<std::size_t>(std::find(bc.scope.begin(), bc.scope.end(), var) -
                                    bc.scope.begin());
  };
  std::vector<std::vector<char>> adj(r, std::vector<char>(r, 0));
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto &cl : bc.clauses) {
    if (!cl.binary() || cl.a == cl.b)
      continue;
    std::size_t i = local(cl.a), j = local(cl.b);
    if (i >= r || j >= r)
      return false; // clause mentions a variable outside the scope
    if (adj[i][j])
      continue;
    adj[i][j] = adj[j][i] = 1;
    edges.emplace_back(i, j);
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (std::size_t f = e + 1; f < edges.size(); ++f) {
      auto [a, b] = edges[e];
      auto [c, d] = edges[f];
      if (a == c || a == d || b == c || b == d)
        continue;
      if (!(adj[a][c] || adj[a][d] || adj[b][c] || adj[b][d]))
        return false;
    }
  }
  return true;
}

struct BooleanSolveResult {
  std::vector<int> deleted; // soft Boolean constraint ids, sorted
  std::int64_t cost = 0;
  Weight weight = 0;
  std::vector<char> assignment;
};

struct BooleanSolveOptions {
  /// Only solutions lexicographically no worse than this (cost, weight) are wanted.
  std::optional<std::pair<std::int64_t, Weight>> bound;
  /// Conflict sets larger than this switch the node to plain subset enumeration.
  std::size_t exhaustive_threshold = 48;
};

namespace detail {

/// Branch and bound for weighted Boolean MinCSP over bijunctive constraints.
/// A node runs 2-SAT on crisp clauses plus the clauses of undeleted soft
/// constraints. On a contradiction x => !x => x it collects the soft
/// constraints labelling the two paths (0-1 BFS keeps that set small); any
/// solution must delete one of them, so the node branches on each, keeping the
/// earlier ones to avoid revisiting the same deletion set.
class BooleanMinCspSearch {
public:
  BooleanMinCspSearch(const BooleanInstance &bi, const BooleanSolveOptions &opts)
      : bi_(bi), opts_(opts), num_vars_(static_cast<int>(bi.variables.size())) {
    std::set<std::tuple<int, int, int>> crisp_keys;
    for (const auto &bc : bi.constraints)
      if (!bc.soft())
        for (const auto &cl : bc.clauses)
          crisp_keys.insert(cl.key());
    std::vector<std::pair<int, int>> arcs;
    for (const auto &bc : bi.constraints) {
      for (const auto &cl : bc.clauses) {
        // A soft clause already present as a crisp clause can never matter.
        if (bc.soft() && crisp_keys.count(cl.key()))
          continue;
        auto [first, second] = implication_arcs(cl);
        arcs.push_back(first);
        label_.push_back(bc.id);
        arcs.push_back(second);
        label_.push_back(bc.id);
      }
    }
    graph_ = Csr::build(2 * num_vars_, arcs);
    arc_on_.assign(arcs.size(), 1);
    state_.assign(bi.constraints.size(), State::Free);
    for (const auto &bc : bi.constraints)
      if (!bc.soft())
        state_[static_cast<std::size_t>(bc.id)] = State::Kept;
  }

  std::optional<BooleanSolveResult> run() {
    search(0, 0);
    return best_;
  }

private:
  enum class State : std::uint8_t { Free, Kept, Deleted };

  bool within_budgets(std::int64_t cost, Weight weight) const {
    if (cost > bi_.cost_budget)
      return false;
    if (bi_.weight_budget && weight > *bi_.weight_budget)
      return false;
    if (opts_.bound && std::make_pair(cost, weight) > *opts_.bound)
      return false;
    if (best_ && std::make_pair(cost, weight) > std::make_pair(best_->cost, best_->weight))
      return false;
    return true;
  }

  void set_deleted(int id, bool deleted) {
    state_[static_cast<std::size_t>(id)] = deleted ? State::Deleted : State::Free;
    for (std::size_t a = 0; a < label_.size(); ++a)
      if (label_[a] == id)
        arc_on_[a] = deleted ? 0 : 1;
  }

  std::optional<int> find_conflict() {
    scc_.run(graph_, arc_on_);
    for (int v = 0; v < num_vars_; ++v)
      if (scc_.component(pos_lit(v)) == scc_.component(neg_lit(v)))
        return v;
    return std::nullopt;
  }

  void record(std::int64_t cost, Weight weight) {
    auto value = two_sat_witness(scc_, num_vars_);
    BooleanSolveResult r;
    r.cost = cost;
    r.weight = weight;
    for (std::size_t id = 0; id < state_.size(); ++id)
      if (state_[id] == State::Deleted)
        r.deleted.push_back(static_cast<int>(id));
    r.assignment = std::move(*value);
    if (!best_ || std::tie(r.cost, r.weight, r.deleted) <
                      std::tie(best_->cost, best_->weight, best_->deleted))
      best_ = std::move(r);
  }

  /// Free soft constraints on a path from literal `from` to `to` that uses as
  /// few of them as possible (0-1 BFS: free labels cost 1, the rest 0).
  void collect_path_labels(int from, int to, std::vector<int> &out) {
    const auto n = static_cast<std::size_t>(2 * num_vars_);
    dist_.assign(n, std::numeric_limits<int>::max());
    via_.assign(n, -1);
    std::deque<int> queue;
    dist_[static_cast<std::size_t>(from)] = 0;
    queue.push_back(from);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      const auto ui = static_cast<std::size_t>(u);
      for (int e = graph_.offset[ui]; e < graph_.offset[ui + 1]; ++e) {
        const auto ei = static_cast<std::size_t>(e);
        const auto arc = static_cast<std::size_t>(graph_.arc_id[ei]);
        if (!arc_on_[arc])
          continue;
        const int cost = state_[static_cast<std::size_t>(label_[arc])] == State::Free ? 1 : 0;
        const auto wi = static_cast<std::size_t>(graph_.target[ei]);
        if (dist_[ui] + cost < dist_[wi]) {
          dist_[wi] = dist_[ui] + cost;
          via_[wi] = static_cast<int>(arc);
          if (cost == 0)
            queue.push_front(graph_.target[ei]);
          else
            queue.push_back(graph_.target[ei]);
        }
      }
    }
    int cur = to;
    while (cur != from) {
      const int arc = via_[static_cast<std::size_t>(cur)];
      if (arc < 0)
        throw Error("conflict path reconstruction failed");
      const int lab = label_[static_cast<std::size_t>(arc)];
      if (state_[static_cast<std::size_t>(lab)] == State::Free)
        out.push_back(lab);
      cur = source_of_arc(arc);
    }
  }

  int source_of_arc(int arc) {
    if (arc_source_.empty()) {
      arc_source_.assign(label_.size(), -1);
      for (int u = 0; u < graph_.num_vertices; ++u)
        for (int e = graph_.offset[static_cast<std::size_t>(u)];
             e < graph_.offset[static_cast<std::size_t>(u) + 1]; ++e)
          arc_source_[static_cast<std::size_t>(graph_.arc_id[static_cast<std::size_t>(e)])] = u;
    }
    return arc_source_[static_cast<std::size_t>(arc)];
  }

  void search(std::int64_t cost, Weight weight) {
    auto conflict = find_conflict();
    if (!conflict) {
      record(cost, weight);
      return;
    }
    if (!within_budgets(cost + 1, weight + 1))
      return;
    std::vector<int> culprits;
    collect_path_labels(pos_lit(*conflict), neg_lit(*conflict), culprits);
    collect_path_labels(neg_lit(*conflict), pos_lit(*conflict), culprits);
    std::sort(culprits.begin(), culprits.end());
    culprits.erase(std::unique(culprits.begin(), culprits.end()), culprits.end());
    if (culprits.empty())
      return; // contradiction among crisp and kept constraints
    if (culprits.size() > opts_.exhaustive_threshold) {
      enumerate_free_subsets(cost, weight);
      return;
    }
    std::vector<int> kept_here;
    for (int id : culprits) {
      const Weight w = bi_.constraints[static_cast<std::size_t>(id)].weight;
      if (within_budgets(cost + 1, weight + w)) {
        set_deleted(id, true);
        search(cost + 1, weight + w);
        set_deleted(id, false);
      }
      state_[static_cast<std::size_t>(id)] = State::Kept;
      kept_here.push_back(id);
    }
    for (int id : kept_here)
      state_[static_cast<std::size_t>(id)] = State::Free;
  }

  /// Fallback: try every subset of the free soft constraints within budget.
  void enumerate_free_subsets(std::int64_t cost, Weight weight) {
    std::vector<int> free;
    for (std::size_t id = 0; id < state_.size(); ++id)
      if (state_[id] == State::Free)
        free.push_back(static_cast<int>(id));
    const std::int64_t room = bi_.cost_budget - cost;
    std::vector<int> chosen;
    auto rec = [&](auto &&self, std::size_t next, std::int64_t c, Weight w) -> void {
      if (!find_conflict()) {
        record(c, w);
        return;
      }
      if (c - cost >= room)
        return;
      for (std::size_t i = next; i < free.size(); ++i) {
        const int id = free[i];
        const Weight wi = bi_.constraints[static_cast<std::size_t>(id)].weight;
        if (!within_budgets(c + 1, w + wi))
          continue;
        set_deleted(id, true);
        self(self, i + 1, c + 1, w + wi);
        set_deleted(id, false);
      }
    };
    rec(rec, 0, cost, weight);
  }

  const BooleanInstance &bi_;
  BooleanSolveOptions opts_;
  int num_vars_;
  Csr graph_;
  std::vector<int> label_;
  std::vector<char> arc_on_;
  std::vector<State> state_;
  SccFinder scc_;
  std::vector<int> dist_;
  std::vector<int> via_;
  std::vector<int> arc_source_;
  std::optional<BooleanSolveResult> best_;
};

} // namespace detail

/// Minimum (cost, weight, lexicographic ids) set of soft constraints whose
/// removal leaves the remaining clauses satisfiable, within both budgets.
inline std::optional<BooleanSolveResult> solve_boolean_mincsp(const BooleanInstance &bi,
                                                              const BooleanSolveOptions &opts = {}) {
  detail::BooleanMinCspSearch search(bi, opts);
  return search.run();
}

inline std::string boolean_var_name(const BooleanVarId &id,
                                    const std::vector<std::string> &source_names) {
  return std::string(id.kind == BoolVarKind::C ? "c." : "p.") +
         source_names[static_cast<std::size_t>(id.v)] + "." + std::to_string(id.index);
}

/// Line format: `bvar <c|p> <v> <idx>` per variable, then
/// `bcons <soft|crisp> <weight> <source|-> : <clause>*` with clauses
/// `T>x`, `x>F`, `x>y`, `x|y`, `!x|!y`.
inline std::string serialize_boolean_instance(const BooleanInstance &bi,
                                              const std::vector<std::string> &source_names) {
  std::string out = "k " + std::to_string(bi.cost_budget) + "\n";
  if (bi.weight_budget)
    out += "w " + std::to_string(*bi.weight_budget) + "\n";
  std::vector<std::string> names;
  for (const auto &v : bi.variables) {
    names.push_back(boolean_var_name(v, source_names));
    out += std::string("bvar ") + (v.kind == BoolVarKind::C ? "c " : "p ") +
           source_names[static_cast<std::size_t>(v.v)] + " " + std::to_string(v.index) + "\n";
  }
  for (const auto &bc : bi.constraints) {
    out += std::string("bcons ") + (bc.soft() ? "soft " : "crisp ") + std::to_string(bc.weight) +
           " " + (bc.source ? std::to_string(*bc.source) : std::string("-")) + " :";
    for (const auto &cl : bc.clauses) {
      const std::string &a = names[static_cast<std::size_t>(cl.a)];
      out += ' ';
      switch (cl.shape) {
      case ClauseShape::ForceTrue:
        out += "T>" + a;
        break;
      case ClauseShape::ForceFalse:
        out += a + ">F";
        break;
      case ClauseShape::Implies:
        out += a + ">" + names[static_cast<std::size_t>(cl.b)];
        break;
      case ClauseShape::Or:
        out += a + "|" + names[static_cast<std::size_t>(cl.b)];
        break;
      case ClauseShape::Nand:
        out += "!" + a + "|!" + names[static_cast<std::size_t>(cl.b)];
        break;
      }
    }
    out += '\n';
  }
  return out;
}

} // namespace pamincsp
