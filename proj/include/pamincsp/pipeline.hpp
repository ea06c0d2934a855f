#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pamincsp/boolean.hpp"
#include "pamincsp/model.hpp"
#include "pamincsp/satisfiability.hpp"
#include "pamincsp/weak_order.hpp"

// Exact solver for weighted MinCSP(<,=,!=) by iterative compression. Each
// compression step guesses which constraints of the current solution to keep
// and how their variables are ordered, then hands the rest to a Boolean MinCSP
// over 2K2-free bijunctive constraints.

namespace pamincsp {

/// An exact rational, kept in lowest terms with a positive denominator.
struct RationalValue {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  static RationalValue make(std::int64_t num, std::int64_t den) {
    if (den == 0)
      throw std::invalid_argument("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    return {num, den};
  }

  std::string to_string() const {
    return std::to_string(numerator) + "/" + std::to_string(denominator);
  }
  bool operator==(const RationalValue &) const = default;
};

/// Compressed instance: a satisfiable base over {<,=,!=} plus anchor classes
/// u_1..u_l whose values must be strictly increasing in list order. Every
/// member of class i takes the value of u_i.
struct CompressedInstance {
  Instance base;
  std::vector<std::vector<VarId>> anchors;
  std::int64_t cost_budget = 0;
  std::optional<Weight> weight_budget;

  int ell() const { return static_cast<int>(anchors.size()); }

  /// Class index (0-based) of each variable, or -1.
  std::vector<int> anchor_class() const {
    std::vector<int> out(base.num_variables(), -1);
    for (std::size_t i = 0; i < anchors.size(); ++i)
      for (VarId v : anchors[i])
        out[static_cast<std::size_t>(v)] = static_cast<int>(i);
    return out;
  }
};

/// Where each Boolean variable of the encoding lives, and which Boolean
/// constraint stands for which base constraint.
struct BooleanEncoding {
  int ell = 0;
  int num_source_vars = 0;
  std::vector<int> of_source;       // base constraint id -> Boolean constraint id
  std::vector<ConstraintId> source; // Boolean constraint id -> base id, or -1

  int block() const { return 3 * ell + 1; }
  /// c_{v,i}, i in 1..ell
  int c(VarId v, int i) const { return v * block() + (i - 1); }
  /// p_{v,j}, j in 1..2ell+1
  int p(VarId v, int j) const { return v * block() + ell + (j - 1); }
};

struct Booleanized {
  BooleanInstance instance;
  BooleanEncoding encoding;
};

namespace detail {

inline void append_at_most_one(std::vector<Clause> &out, const BooleanEncoding &e, VarId v) {
  for (int i = 1; i <= e.ell; ++i)
    for (int i2 = i + 1; i2 <= e.ell; ++i2)
      out.push_back(Clause::nand(e.c(v, i), e.c(v, i2)));
}

inline void append_chain(std::vector<Clause> &out, const BooleanEncoding &e, VarId v) {
  const int top = 2 * e.ell + 1;
  for (int j = 1; j <= top; ++j)
    for (int j2 = j + 1; j2 <= top; ++j2)
      out.push_back(Clause::implies(e.p(v, j2), e.p(v, j)));
}

inline void append_c_to_p(std::vector<Clause> &out, const BooleanEncoding &e, VarId v) {
  const int top = 2 * e.ell + 1;
  for (int i = 1; i <= e.ell; ++i) {
    for (int j = 1; j <= 2 * i; ++j)
      out.push_back(Clause::implies(e.c(v, i), e.p(v, j)));
    for (int j = 2 * i + 1; j <= top; ++j)
      out.push_back(Clause::nand(e.c(v, i), e.p(v, j)));
  }
}

} // namespace detail

/// Builds the Boolean MinCSP instance. Per variable v there are c_{v,1..l}
/// ("v equals u_i") and p_{v,1..2l+1} (p_{v,2i}: v >= u_i, p_{v,2i+1}: v > u_i).
/// Crisp families, one constraint per clause:
///   (!c_{v,i} | !c_{v,i'})                   at most one anchor match
///   (1 -> c_{u,i})                           anchors and their class members
///   (1 -> p_{v,1}), (p_{v,j'} -> p_{v,j})    monotone p-vector
///   (1 -> p_{u,2i}), (p_{u,2i+1} -> 0)       anchors and their class members
///   (c_{v,i} -> p_{v,j}) for j <= 2i, (c_{v,i} -> !p_{v,j}) for j > 2i
/// Each base constraint becomes one Boolean constraint with the same softness
/// and weight; the clauses implied by the crisp families are repeated inside it
/// so that its Gaifman graph is a clique plus pendant edges.
inline Booleanized booleanize(const CompressedInstance &ci) {
  Booleanized out;
  BooleanEncoding &e = out.encoding;
  BooleanInstance &bi = out.instance;
  const int ell = ci.ell();
  const auto n = static_cast<VarId>(ci.base.num_variables());
  e.ell = ell;
  e.num_source_vars = n;
  bi.cost_budget = ci.cost_budget;
  bi.weight_budget = ci.weight_budget;

  for (VarId v = 0; v < n; ++v) {
    for (int i = 1; i <= ell; ++i)
      bi.add_variable({BoolVarKind::C, v, i});
    for (int j = 1; j <= 2 * ell + 1; ++j)
      bi.add_variable({BoolVarKind::P, v, j});
  }

  auto crisp = [&](Clause cl) {
    bi.add_constraint({cl}, Softness::Crisp, 1, std::nullopt);
    e.source.push_back(-1);
  };
  for (VarId v = 0; v < n; ++v) {
    std::vector<Clause> cls;
    detail::append_at_most_one(cls, e, v);
    for (const auto &cl : cls)
      crisp(cl);
  }
  for (int i = 1; i <= ell; ++i)
    for (VarId u : ci.anchors[static_cast<std::size_t>(i - 1)])
      crisp(Clause::force_true(e.c(u, i)));
  for (VarId v = 0; v < n; ++v) {
    crisp(Clause::force_true(e.p(v, 1)));
    std::vector<Clause> cls;
    detail::append_chain(cls, e, v);
    for (const auto &cl : cls)
      crisp(cl);
  }
  for (int i = 1; i <= ell; ++i)
    for (VarId u : ci.anchors[static_cast<std::size_t>(i - 1)]) {
      crisp(Clause::force_true(e.p(u, 2 * i)));
      crisp(Clause::force_false(e.p(u, 2 * i + 1)));
    }
  for (VarId v = 0; v < n; ++v) {
    std::vector<Clause> cls;
    detail::append_c_to_p(cls, e, v);
    for (const auto &cl : cls)
      crisp(cl);
  }

  e.of_source.assign(ci.base.num_constraints(), -1);
  for (const auto &c : ci.base.constraints) {
    std::vector<Clause> cls;
    const VarId v = c.x, w = c.y;
    switch (c.rel) {
    case Relation::EQ:
      for (int i = 1; i <= ell; ++i) {
        cls.push_back(Clause::implies(e.c(v, i), e.c(w, i)));
        cls.push_back(Clause::implies(e.c(w, i), e.c(v, i)));
      }
      detail::append_at_most_one(cls, e, v);
      for (int j = 1; j <= 2 * ell + 1; ++j) {
        cls.push_back(Clause::implies(e.p(v, j), e.p(w, j)));
        cls.push_back(Clause::implies(e.p(w, j), e.p(v, j)));
      }
      detail::append_chain(cls, e, v);
      detail::append_c_to_p(cls, e, v);
      break;
    case Relation::NEQ:
      for (int i = 1; i <= ell; ++i)
        cls.push_back(Clause::nand(e.c(v, i), e.c(w, i)));
      detail::append_at_most_one(cls, e, v);
      break;
    case Relation::LT:
      for (int i = 1; i <= ell; ++i)
        cls.push_back(Clause::implies(e.p(v, 2 * i - 1), e.p(w, 2 * i - 1)));
      for (int i = 1; i <= ell; ++i)
        cls.push_back(Clause::implies(e.p(v, 2 * i), e.p(w, 2 * i + 1)));
      detail::append_chain(cls, e, v);
      break;
    case Relation::LEQ:
      throw PreconditionError("booleanize handles only <, = and !=");
    }
    e.of_source[static_cast<std::size_t>(c.id)] =
        bi.add_constraint(std::move(cls), c.softness, c.weight, c.id);
    e.source.push_back(c.id);
  }
  return out;
}

/// A solution of the compressed (or full) instance with its witness. `values`
/// are exact rationals realising the witness's weak order.
struct PipelineResult {
  Solution solution;
  Assignment assignment;
  std::vector<RationalValue> values;
};

namespace detail {

inline std::vector<RationalValue> integer_values(const Assignment &a) {
  std::vector<RationalValue> out;
  for (auto r : a.rank)
    out.push_back({r, 1});
  return out;
}

inline Assignment dense_ranks(const std::vector<std::int64_t> &keys) {
  std::vector<std::int64_t> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Assignment a;
  for (auto key : keys)
    a.rank.push_back(std::lower_bound(sorted.begin(), sorted.end(), key) - sorted.begin());
  return a;
}

} // namespace detail

/// Turns a Boolean solution back into a solution of the compressed instance.
/// gamma is a satisfying assignment of the whole base squeezed into (0,1) as
/// (r+1)/(R+1); a variable matching anchor i gets value i, any other variable
/// gets iota(v) + gamma(v) with iota(v) = max{i : p_{v,2i} = 1} (0 if none).
/// The witness is checked before returning: it breaks only deleted constraints
/// and agrees with the anchor order.
inline PipelineResult lift_solution(const Booleanized &b, const std::vector<char> &value,
                                    const std::vector<int> &deleted,
                                    const CompressedInstance &ci) {
  const BooleanEncoding &e = b.encoding;
  std::vector<ConstraintId> ids;
  for (int id : deleted) {
    ConstraintId src = e.source.at(static_cast<std::size_t>(id));
    if (src < 0)
      throw std::logic_error("Boolean solution deletes a crisp family constraint");
    ids.push_back(src);
  }
  PipelineResult out;
  out.solution = make_solution(ci.base, ids);

  auto gamma = check_satisfiable(ci.base);
  if (!gamma)
    throw PreconditionError("compressed base instance is not satisfiable");
  std::int64_t num_ranks = 0;
  for (auto r : gamma->rank)
    num_ranks = std::max(num_ranks, r + 1);
  const std::int64_t scale = num_ranks + 1;

  const auto n = static_cast<VarId>(ci.base.num_variables());
  std::vector<std::int64_t> scaled(static_cast<std::size_t>(n));
  for (VarId v = 0; v < n; ++v) {
    const auto vi = static_cast<std::size_t>(v);
    int matched = 0;
    for (int i = 1; i <= e.ell; ++i)
      if (value[static_cast<std::size_t>(e.c(v, i))]) {
        matched = i;
        break;
      }
    if (matched) {
      scaled[vi] = matched * scale;
      continue;
    }
    int iota = 0;
    for (int i = 1; i <= e.ell; ++i)
      if (value[static_cast<std::size_t>(e.p(v, 2 * i))])
        iota = i;
    scaled[vi] = iota * scale + gamma->rank[vi] + 1;
  }
  out.assignment = detail::dense_ranks(scaled);
  for (auto s : scaled)
    out.values.push_back(RationalValue::make(s, scale));

  if (!witnesses(ci.base, out.assignment, out.solution.deleted))
    throw std::logic_error("lifted assignment breaks a constraint outside the solution");
  std::int64_t prev = -1;
  for (const auto &cls : ci.anchors) {
    const auto r = out.assignment.rank[static_cast<std::size_t>(cls.front())];
    for (VarId v : cls)
      if (out.assignment.rank[static_cast<std::size_t>(v)] != r)
        throw std::logic_error("lifted assignment splits an anchor class");
    if (r <= prev)
      throw std::logic_error("lifted assignment disagrees with the anchor order");
    prev = r;
  }
  return out;
}

struct PipelineStats {
  long compress_calls = 0;
  long branches = 0;
  long boolean_solves = 0;
};

namespace detail {

inline bool better(const PipelineResult &a, const std::optional<PipelineResult> &best) {
  return !best || solution_less(a.solution, best->solution);
}

inline void check_pipeline_relations(const Instance &inst) {
  if (!inst.relations().subset_of({Relation::LT, Relation::EQ, Relation::NEQ}))
    throw PreconditionError("pipeline handles relations within {lt,eq,neq}, got " +
                            inst.relations().to_string());
}

} // namespace detail

/// One compression step. `x_in` (at most k+1 soft constraints) must leave a
/// satisfiable instance when removed. For every subset Y of x_in deleted
/// outright, smallest first, and every weak order of the variables of x_in \ Y
/// that satisfies x_in \ Y, the remaining constraints form a compressed
/// instance whose anchor classes are the blocks of the order. Returns the best
/// solution over all branches under (cost, weight, ids).
inline std::optional<PipelineResult> compress_step(const Instance &inst,
                                                   const std::vector<ConstraintId> &x_in,
                                                   PipelineStats *stats = nullptr) {
  detail::check_pipeline_relations(inst);
  if (static_cast<std::int64_t>(x_in.size()) > inst.cost_budget + 1)
    throw PreconditionError("compress_step needs |X_in| <= k+1");
  std::vector<bool> in_x(inst.num_constraints(), false);
  for (ConstraintId id : x_in) {
    if (!inst.constraints.at(static_cast<std::size_t>(id)).soft())
      throw PreconditionError("compress_step: X_in contains a crisp constraint");
    in_x[static_cast<std::size_t>(id)] = true;
  }
  std::vector<bool> keep(inst.num_constraints());
  for (std::size_t i = 0; i < keep.size(); ++i)
    keep[i] = !in_x[i];
  std::vector<ConstraintId> base_source;
  Instance base = restrict_constraints(inst, keep, &base_source);
  auto base_witness = check_satisfiable(base);
  if (!base_witness)
    throw PreconditionError("compress_step: removing X_in must leave a satisfiable instance");
  if (stats)
    ++stats->compress_calls;

  std::vector<ConstraintId> xs = x_in;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const int m = static_cast<int>(xs.size());

  std::optional<PipelineResult> best;
  for (int size = 0; size <= m; ++size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      std::vector<ConstraintId> deleted_y;
      std::vector<bool> in_y(static_cast<std::size_t>(m), false);
      for (int i : pick) {
        deleted_y.push_back(xs[static_cast<std::size_t>(i)]);
        in_y[static_cast<std::size_t>(i)] = true;
      }
      Solution ys = make_solution(inst, deleted_y);
      const bool affordable = ys.cost <= inst.cost_budget &&
                              inst.within_weight_budget(ys.weight) &&
                              (!best || std::make_pair(ys.cost, ys.weight) <=
                                            std::make_pair(best->solution.cost,
                                                           best->solution.weight));
      if (affordable) {
        std::vector<ConstraintId> kept;
        std::vector<VarId> kvars;
        for (int i = 0; i < m; ++i) {
          if (in_y[static_cast<std::size_t>(i)])
            continue;
          const auto &c = inst.constraints[static_cast<std::size_t>(xs[static_cast<std::size_t>(i)])];
          kept.push_back(c.id);
          kvars.push_back(c.x);
          kvars.push_back(c.y);
        }
        std::sort(kvars.begin(), kvars.end());
        kvars.erase(std::unique(kvars.begin(), kvars.end()), kvars.end());
        std::vector<int> local(inst.num_variables(), -1);
        for (std::size_t i = 0; i < kvars.size(); ++i)
          local[static_cast<std::size_t>(kvars[i])] = static_cast<int>(i);

        if (kvars.empty()) {
          if (stats)
            ++stats->branches;
          PipelineResult r{ys, *base_witness, detail::integer_values(*base_witness)};
          if (detail::better(r, best))
            best = std::move(r);
        } else {
          enumerate_weak_orders(static_cast<int>(kvars.size()), [&](std::span<const std::int64_t> rank) {
            for (ConstraintId id : kept) {
              const auto &c = inst.constraints[static_cast<std::size_t>(id)];
              if (!satisfied_by_ranks(c.rel, rank[static_cast<std::size_t>(local[static_cast<std::size_t>(c.x)])],
                                      rank[static_cast<std::size_t>(local[static_cast<std::size_t>(c.y)])]))
                return;
            }
            if (stats)
              ++stats->branches;
            CompressedInstance ci;
            ci.base = base;
            std::int64_t blocks = 0;
            for (auto r : rank)
              blocks = std::max(blocks, r + 1);
            ci.anchors.resize(static_cast<std::size_t>(blocks));
            for (std::size_t i = 0; i < kvars.size(); ++i)
              ci.anchors[static_cast<std::size_t>(rank[i])].push_back(kvars[i]);
            ci.cost_budget = inst.cost_budget - ys.cost;
            if (inst.weight_budget)
              ci.weight_budget = *inst.weight_budget - ys.weight;
            Booleanized b = booleanize(ci);
            BooleanSolveOptions opts;
            if (best)
              opts.bound = std::make_pair(best->solution.cost - ys.cost,
                                          best->solution.weight - ys.weight);
            if (stats)
              ++stats->boolean_solves;
            auto res = solve_boolean_mincsp(b.instance, opts);
            if (!res)
              return;
            PipelineResult lifted = lift_solution(b, res->assignment, res->deleted, ci);
            std::vector<ConstraintId> all = deleted_y;
            for (ConstraintId id : lifted.solution.deleted)
              all.push_back(base_source[static_cast<std::size_t>(id)]);
            PipelineResult r{make_solution(inst, all), lifted.assignment, lifted.values};
            if (!witnesses(inst, r.assignment, r.solution.deleted))
              throw std::logic_error("compress_step produced an unwitnessed solution");
            if (detail::better(r, best))
              best = std::move(r);
          });
        }
      }
      int i = size - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - size + i)
        --i;
      if (i < 0)
        break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j)
        pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return best;
}

/// Iterative compression over the soft constraints in id order. Keeps a
/// solution X of the prefix; when the next constraint conflicts and X plus it
/// exceeds a budget, compresses X plus it. A last compression of the final X
/// makes the result weight-optimal.
inline std::optional<PipelineResult> compression_driver(const Instance &inst,
                                                        PipelineStats *stats = nullptr) {
  detail::check_pipeline_relations(inst);
  std::vector<bool> prefix(inst.num_constraints(), false);
  for (const auto &c : inst.constraints)
    if (c.crisp())
      prefix[static_cast<std::size_t>(c.id)] = true;
  if (!check_satisfiable(restrict_constraints(inst, prefix)))
    return std::nullopt;

  std::vector<ConstraintId> x; // ids of inst, sorted
  auto active_without = [&](const std::vector<ConstraintId> &del) {
    std::vector<bool> m = prefix;
    for (ConstraintId id : del)
      m[static_cast<std::size_t>(id)] = false;
    return m;
  };
  auto compress_prefix = [&](const std::vector<ConstraintId> &x_in)
      -> std::optional<PipelineResult> {
    std::vector<ConstraintId> source;
    Instance sub = restrict_constraints(inst, prefix, &source);
    std::vector<ConstraintId> local;
    for (ConstraintId id : x_in)
      local.push_back(static_cast<ConstraintId>(
          std::lower_bound(source.begin(), source.end(), id) - source.begin()));
    auto r = compress_step(sub, local, stats);
    if (!r)
      return std::nullopt;
    std::vector<ConstraintId> global;
    for (ConstraintId id : r->solution.deleted)
      global.push_back(source[static_cast<std::size_t>(id)]);
    r->solution = make_solution(inst, global);
    return r;
  };

  for (const auto &c : inst.constraints) {
    if (c.crisp())
      continue;
    prefix[static_cast<std::size_t>(c.id)] = true;
    if (check_satisfiable(restrict_constraints(inst, active_without(x))))
      continue;
    std::vector<ConstraintId> grown = x;
    grown.push_back(c.id);
    std::sort(grown.begin(), grown.end());
    Solution gs = make_solution(inst, grown);
    if (gs.cost <= inst.cost_budget && inst.within_weight_budget(gs.weight)) {
      x = grown;
      continue;
    }
    auto r = compress_prefix(grown);
    if (!r)
      return std::nullopt;
    x = r->solution.deleted;
  }

  if (x.empty()) {
    auto witness = check_satisfiable(inst);
    return PipelineResult{Solution{}, *witness, detail::integer_values(*witness)};
  }
  auto r = compress_prefix(x);
  if (!r)
    throw std::logic_error("final compression lost a feasible solution");
  return r;
}

/// Exact weighted MinCSP(<,=,!=): minimum (cost, weight, ids) solution within
/// both budgets, or nullopt.
inline std::optional<PipelineResult> solve(const Instance &inst, PipelineStats *stats = nullptr) {
  return compression_driver(normalize(inst), stats);
}

} // namespace pamincsp
