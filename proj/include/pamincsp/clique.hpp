#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pamincsp/model.hpp"
#include "pamincsp/text.hpp"

namespace pamincsp {

/// Multicolored clique input: k parts of n vertices each plus undirected edges.
/// Vertex ids are global; parts[i][a] is the vertex v^{i+1}_{a+1}.
struct CliqueInstance {
  std::vector<std::string> names;
  std::vector<std::vector<int>> parts;
  std::set<std::pair<int, int>> edges; // stored with first < second

  int k() const { return static_cast<int>(parts.size()); }
  int n() const { return parts.empty() ? 0 : static_cast<int>(parts.front().size()); }

  bool adjacent(int u, int v) const {
    if (u > v)
      std::swap(u, v);
    return edges.count({u, v}) != 0;
  }

  void add_edge(int u, int v) {
    if (u == v)
      throw PreconditionError("clique instance edges must join distinct vertices");
    if (u > v)
      std::swap(u, v);
    edges.insert({u, v});
  }

  /// part index of every vertex
  std::vector<int> part_of() const {
    std::vector<int> out(names.size(), -1);
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (int v : parts[i])
        out[static_cast<std::size_t>(v)] = static_cast<int>(i);
    return out;
  }

  /// Throws PreconditionError unless parts are disjoint, cover every vertex and
  /// all have the same size.
  void validate() const {
    std::vector<int> seen(names.size(), 0);
    for (const auto &p : parts) {
      if (p.size() != parts.front().size())
        throw PreconditionError("all parts must have the same size");
      for (int v : p) {
        if (v < 0 || static_cast<std::size_t>(v) >= names.size())
          throw PreconditionError("part lists an unknown vertex");
        if (seen[static_cast<std::size_t>(v)]++)
          throw PreconditionError("vertex " + names[static_cast<std::size_t>(v)] +
                                  " appears in two parts");
      }
    }
    for (std::size_t v = 0; v < names.size(); ++v)
      if (!seen[v])
        throw PreconditionError("vertex " + names[v] + " belongs to no part");
  }

  /// Builds parts named v<i>_<a> (1-based) with no edges.
  static CliqueInstance with_parts(int k, int n) {
    CliqueInstance g;
    g.parts.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      for (int a = 0; a < n; ++a) {
        g.names.push_back("v" + std::to_string(i + 1) + "_" + std::to_string(a + 1));
        g.parts[static_cast<std::size_t>(i)].push_back(static_cast<int>(g.names.size() - 1));
      }
    return g;
  }
};

/// Clique format v1: `k <int>`, `part <i> <name>...` once per part (1-based),
/// `edge <u> <v>`.
inline CliqueInstance parse_clique_instance(std::string_view input) {
  CliqueInstance g;
  int k = -1;
  std::vector<bool> part_seen;
  auto find = [&](const std::string &name) {
    auto it = std::find(g.names.begin(), g.names.end(), name);
    return it == g.names.end() ? -1 : static_cast<int>(it - g.names.begin());
  };
  for (const auto &line : text::tokenize(input)) {
    const auto &t = line.tokens;
    const int ln = line.number;
    if (t[0] == "k") {
      if (k >= 0 || t.size() != 2)
        throw ParseError(ln, "bad or duplicate k line");
      k = static_cast<int>(text::parse_int(t[1], ln, "part count"));
      if (k < 1)
        throw ParseError(ln, "part count must be positive");
      g.parts.resize(static_cast<std::size_t>(k));
      part_seen.assign(static_cast<std::size_t>(k), false);
    } else if (t[0] == "part") {
      if (k < 0)
        throw ParseError(ln, "part line before k line");
      if (t.size() < 3)
        throw ParseError(ln, "part line needs an index and at least one vertex");
      auto i = text::parse_int(t[1], ln, "part index");
      if (i < 1 || i > k)
        throw ParseError(ln, "part index out of range");
      auto idx = static_cast<std::size_t>(i - 1);
      if (part_seen[idx])
        throw ParseError(ln, "duplicate part " + t[1]);
      part_seen[idx] = true;
      for (std::size_t j = 2; j < t.size(); ++j) {
        if (!text::valid_name(t[j]))
          throw ParseError(ln, "invalid vertex name '" + t[j] + "'");
        if (find(t[j]) >= 0)
          throw ParseError(ln, "vertex '" + t[j] + "' declared twice");
        g.names.push_back(t[j]);
        g.parts[idx].push_back(static_cast<int>(g.names.size() - 1));
      }
    } else if (t[0] == "edge") {
      if (t.size() != 3)
        throw ParseError(ln, "edge line needs two vertices");
      int u = find(t[1]);
      int v = find(t[2]);
      if (u < 0 || v < 0)
        throw ParseError(ln, "edge uses an undeclared vertex");
      if (u == v)
        throw ParseError(ln, "edge loops are not allowed");
      g.add_edge(u, v);
    } else {
      throw ParseError(ln, "unknown line keyword '" + t[0] + "'");
    }
  }
  if (k < 0)
    throw ParseError(0, "missing k line");
  for (std::size_t i = 0; i < part_seen.size(); ++i)
    if (!part_seen[i])
      throw ParseError(0, "missing part " + std::to_string(i + 1));
  try {
    g.validate();
  } catch (const PreconditionError &e) {
    throw ParseError(0, e.what());
  }
  return g;
}

inline std::string serialize_clique_instance(const CliqueInstance &g) {
  std::string out = "k " + std::to_string(g.k()) + "\n";
  for (std::size_t i = 0; i < g.parts.size(); ++i) {
    out += "part " + std::to_string(i + 1);
    for (int v : g.parts[i])
      out += " " + g.names[static_cast<std::size_t>(v)];
    out += '\n';
  }
  for (const auto &[u, v] : g.edges)
    out += "edge " + g.names[static_cast<std::size_t>(u)] + " " +
           g.names[static_cast<std::size_t>(v)] + "\n";
  return out;
}

} // namespace pamincsp
