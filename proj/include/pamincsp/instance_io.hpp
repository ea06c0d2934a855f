#pragma once

#include <string>
#include <string_view>

#include "pamincsp/model.hpp"
#include "pamincsp/text.hpp"

namespace pamincsp {

/// Reads instance format v1:
///
///     k <int>                      required, once
///     w <int|inf>                  optional, default inf
///     <lt|leq|eq|neq> <x> <y> <soft|crisp> [<weight>]
///
/// Variables are declared by first use. The weight token defaults to 1 and is
/// ignored on crisp lines.
inline Instance parse_instance(std::string_view input) {
  Instance inst;
  bool seen_k = false;
  bool seen_w = false;
  for (const auto &line : text::tokenize(input)) {
    const auto &t = line.tokens;
    const int ln = line.number;
    if (t[0] == "k") {
      if (seen_k)
        throw ParseError(ln, "duplicate k line");
      if (t.size() != 2)
        throw ParseError(ln, "k line takes exactly one value");
      inst.cost_budget = text::parse_int(t[1], ln, "cost budget");
      if (inst.cost_budget < 0)
        throw ParseError(ln, "cost budget must be nonnegative");
      seen_k = true;
      continue;
    }
    if (t[0] == "w") {
      if (seen_w)
        throw ParseError(ln, "duplicate w line");
      if (t.size() != 2)
        throw ParseError(ln, "w line takes exactly one value");
      if (t[1] != "inf") {
        Weight w = text::parse_int(t[1], ln, "weight budget");
        if (w <= 0)
          throw ParseError(ln, "weight budget must be positive");
        inst.weight_budget = w;
      }
      seen_w = true;
      continue;
    }
    auto rel = relation_from_token(t[0]);
    if (!rel)
      throw ParseError(ln, "unknown relation token '" + t[0] + "'");
    if (t.size() < 4 || t.size() > 5)
      throw ParseError(ln, "constraint line needs <rel> <x> <y> <soft|crisp> [<weight>]");
    for (int i : {1, 2})
      if (!text::valid_name(t[static_cast<std::size_t>(i)]))
        throw ParseError(ln, "invalid variable name '" +
                                 t[static_cast<std::size_t>(i)] + "'");
    Softness softness = text::parse_softness(t[3], ln);
    Weight weight = 1;
    if (t.size() == 5) {
      Weight parsed = text::parse_int(t[4], ln, "weight");
      if (softness == Softness::Soft) {
        if (parsed <= 0)
          throw ParseError(ln, "weight must be positive");
        weight = parsed;
      }
    }
    inst.add(t[1], t[2], *rel, softness, weight);
  }
  if (!seen_k)
    throw ParseError(0, "missing k line");
  return inst;
}

/// Canonical form: `k`, then `w` when finite, then constraints in id order.
inline std::string serialize_instance(const Instance &inst) {
  std::string out = "k " + std::to_string(inst.cost_budget) + "\n";
  if (inst.weight_budget)
    out += "w " + std::to_string(*inst.weight_budget) + "\n";
  for (const auto &c : inst.constraints) {
    out += relation_token(c.rel);
    out += ' ';
    out += inst.variables[static_cast<std::size_t>(c.x)];
    out += ' ';
    out += inst.variables[static_cast<std::size_t>(c.y)];
    out += ' ';
    out += text::softness_token(c.softness);
    if (c.soft())
      out += " " + std::to_string(c.weight);
    out += '\n';
  }
  return out;
}

} // namespace pamincsp
