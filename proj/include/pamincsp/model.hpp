#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pamincsp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number of the offending line.
class ParseError : public Error {
public:
  ParseError(int line, const std::string &what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

/// A brute-force routine was asked to enumerate more than its hard limit allows.
class GuardExceeded : public Error {
public:
  using Error::Error;
};

/// An operation was called on an input outside its documented domain.
class PreconditionError : public Error {
public:
  using Error::Error;
};

using VarId = int;
using ConstraintId = int;
using Weight = std::int64_t;

enum class Relation : std::uint8_t { LT, LEQ, EQ, NEQ };

inline constexpr Relation kAllRelations[] = {Relation::LT, Relation::LEQ,
                                             Relation::EQ, Relation::NEQ};

inline std::string_view relation_token(Relation r) {
  switch (r) {
  case Relation::LT:
    return "lt";
  case Relation::LEQ:
    return "leq";
  case Relation::EQ:
    return "eq";
  case Relation::NEQ:
    return "neq";
  }
  return "?";
}

inline std::optional<Relation> relation_from_token(std::string_view tok) {
  for (Relation r : kAllRelations)
    if (relation_token(r) == tok)
      return r;
  return std::nullopt;
}

/// Small bit set over the four relations.
class RelationSet {
public:
  constexpr RelationSet() = default;
  constexpr RelationSet(std::initializer_list<Relation> rels) {
    for (Relation r : rels)
      insert(r);
  }
  static constexpr RelationSet from_mask(unsigned mask) {
    RelationSet s;
    s.bits_ = static_cast<std::uint8_t>(mask & 0xFu);
    return s;
  }

  constexpr void insert(Relation r) { bits_ |= bit(r); }
  constexpr bool contains(Relation r) const { return (bits_ & bit(r)) != 0; }
  constexpr bool subset_of(RelationSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr unsigned mask() const { return bits_; }
  constexpr bool operator==(const RelationSet &) const = default;

  std::string to_string() const {
    std::string out = "{";
    for (Relation r : kAllRelations) {
      if (!contains(r))
        continue;
      if (out.size() > 1)
        out += ",";
      out += relation_token(r);
    }
    return out + "}";
  }

private:
  static constexpr std::uint8_t bit(Relation r) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(r));
  }
  std::uint8_t bits_ = 0;
};

enum class Softness : std::uint8_t { Soft, Crisp };

struct Constraint {
  ConstraintId id = 0;
  VarId x = 0;
  VarId y = 0;
  Relation rel = Relation::EQ;
  Softness softness = Softness::Soft;
  Weight weight = 1;

  bool soft() const { return softness == Softness::Soft; }
  bool crisp() const { return softness == Softness::Crisp; }
  bool self_loop() const { return x == y; }

  bool operator==(const Constraint &) const = default;
};

/// Variables plus binary Point Algebra constraints and the two budgets.
/// Constraint ids are 0..m-1 in list order; a missing weight budget means infinity.
struct Instance {
  std::vector<std::string> variables;
  std::vector<Constraint> constraints;
  std::int64_t cost_budget = 0;
  std::optional<Weight> weight_budget;

  std::size_t num_variables() const { return variables.size(); }
  std::size_t num_constraints() const { return constraints.size(); }

  RelationSet relations() const {
    RelationSet s;
    for (const auto &c : constraints)
      s.insert(c.rel);
    return s;
  }

  /// Returns the id of `name`, declaring it if it is new.
  VarId intern(const std::string &name) {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i] == name)
        return static_cast<VarId>(i);
    variables.push_back(name);
    return static_cast<VarId>(variables.size() - 1);
  }

  /// Appends a constraint and assigns it the next id.
  ConstraintId add(VarId x, VarId y, Relation rel,
                   Softness softness = Softness::Soft, Weight weight = 1) {
    Constraint c{static_cast<ConstraintId>(constraints.size()), x, y, rel,
                 softness, weight};
    constraints.push_back(c);
    return c.id;
  }

  ConstraintId add(const std::string &x, const std::string &y, Relation rel,
                   Softness softness = Softness::Soft, Weight weight = 1) {
    VarId vx = intern(x);
    VarId vy = intern(y);
    return add(vx, vy, rel, softness, weight);
  }

  bool within_weight_budget(Weight w) const {
    return !weight_budget || w <= *weight_budget;
  }

  bool operator==(const Instance &) const = default;
};

/// A weak order on the variables, stored as integer ranks.
struct Assignment {
  std::vector<std::int64_t> rank;

  bool operator==(const Assignment &) const = default;
};

/// A deletion set. `deleted` is kept sorted.
struct Solution {
  std::vector<ConstraintId> deleted;
  std::int64_t cost = 0;
  Weight weight = 0;

  bool operator==(const Solution &) const = default;
};

/// Builds a Solution from constraint ids of `inst`. Crisp ids are rejected.
inline Solution make_solution(const Instance &inst,
                              std::vector<ConstraintId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  Solution s;
  for (ConstraintId id : ids) {
    const Constraint &c = inst.constraints.at(static_cast<std::size_t>(id));
    if (!c.soft())
      throw PreconditionError("solution deletes crisp constraint " +
                              std::to_string(id));
    s.cost += 1;
    s.weight += c.weight;
  }
  s.deleted = std::move(ids);
  return s;
}

/// Tie-break order on solutions: cost, then weight, then lexicographic ids.
inline bool solution_less(const Solution &a, const Solution &b) {
  if (a.cost != b.cost)
    return a.cost < b.cost;
  if (a.weight != b.weight)
    return a.weight < b.weight;
  return a.deleted < b.deleted;
}

enum class LanguageClass : std::uint8_t { PolyTime, FPT, W1Hard };

inline std::string_view language_class_name(LanguageClass c) {
  switch (c) {
  case LanguageClass::PolyTime:
    return "polytime";
  case LanguageClass::FPT:
    return "fpt";
  case LanguageClass::W1Hard:
    return "w1-hard";
  }
  return "?";
}

/// Complexity of MinCSP over the given fragment of the Point Algebra.
inline LanguageClass classify_language(RelationSet rels) {
  if (rels.subset_of({Relation::EQ, Relation::LEQ}) ||
      rels.subset_of({Relation::NEQ}))
    return LanguageClass::PolyTime;
  if (rels.contains(Relation::LEQ) && rels.contains(Relation::NEQ))
    return LanguageClass::W1Hard;
  return LanguageClass::FPT;
}

inline bool satisfied_by_ranks(Relation rel, std::int64_t rx, std::int64_t ry) {
  switch (rel) {
  case Relation::LT:
    return rx < ry;
  case Relation::LEQ:
    return rx <= ry;
  case Relation::EQ:
    return rx == ry;
  case Relation::NEQ:
    return rx != ry;
  }
  return false;
}

struct ViolationReport {
  std::vector<ConstraintId> violated;
  std::int64_t cost = 0;
  Weight weight = 0;
  bool crisp_violation = false;

  bool operator==(const ViolationReport &) const = default;
};

inline ViolationReport evaluate(const Instance &inst, const Assignment &a) {
  if (a.rank.size() != inst.num_variables())
    throw PreconditionError("assignment is not total: " +
                            std::to_string(a.rank.size()) + " ranks for " +
                            std::to_string(inst.num_variables()) +
                            " variables");
  ViolationReport report;
  for (const auto &c : inst.constraints) {
    if (satisfied_by_ranks(c.rel, a.rank[static_cast<std::size_t>(c.x)],
                           a.rank[static_cast<std::size_t>(c.y)]))
      continue;
    report.violated.push_back(c.id);
    if (c.soft()) {
      report.cost += 1;
      report.weight += c.weight;
    } else {
      report.crisp_violation = true;
    }
  }
  return report;
}

/// True iff `a` breaks no crisp constraint and only constraints listed in `deleted`.
inline bool witnesses(const Instance &inst, const Assignment &a,
                      const std::vector<ConstraintId> &deleted) {
  ViolationReport r = evaluate(inst, a);
  if (r.crisp_violation)
    return false;
  return std::includes(deleted.begin(), deleted.end(), r.violated.begin(),
                       r.violated.end());
}

/// Soft constraints heavier than the weight budget can never be deleted.
inline Instance normalize(const Instance &inst) {
  Instance out = inst;
  if (!inst.weight_budget)
    return out;
  for (auto &c : out.constraints)
    if (c.soft() && c.weight > *inst.weight_budget)
      c.softness = Softness::Crisp;
  return out;
}

/// Sub-instance over the same variables keeping the listed constraints, renumbered.
/// `source[i]` receives the original id of new constraint i.
inline Instance restrict_constraints(const Instance &inst,
                                     const std::vector<bool> &keep,
                                     std::vector<ConstraintId> *source = nullptr) {
  Instance out;
  out.variables = inst.variables;
  out.cost_budget = inst.cost_budget;
  out.weight_budget = inst.weight_budget;
  if (source)
    source->clear();
  for (const auto &c : inst.constraints) {
    if (!keep[static_cast<std::size_t>(c.id)])
      continue;
    out.add(c.x, c.y, c.rel, c.softness, c.weight);
    if (source)
      source->push_back(c.id);
  }
  return out;
}

} // namespace pamincsp
