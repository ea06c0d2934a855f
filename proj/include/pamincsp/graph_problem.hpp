#pragma once

#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pamincsp/model.hpp"
#include "pamincsp/scc.hpp"
#include "pamincsp/text.hpp"

namespace pamincsp {

enum class GraphProblemKind : std::uint8_t { DFAS, EdgeMulticut, SubsetDFAS, DSMC };

inline std::string_view graph_problem_token(GraphProblemKind k) {
  switch (k) {
  case GraphProblemKind::DFAS:
    return "dfas";
  case GraphProblemKind::EdgeMulticut:
    return "multicut";
  case GraphProblemKind::SubsetDFAS:
    return "subset-dfas";
  case GraphProblemKind::DSMC:
    return "dsmc";
  }
  return "?";
}

inline std::optional<GraphProblemKind> graph_problem_from_token(std::string_view tok) {
  for (auto k : {GraphProblemKind::DFAS, GraphProblemKind::EdgeMulticut,
                 GraphProblemKind::SubsetDFAS, GraphProblemKind::DSMC})
    if (graph_problem_token(k) == tok)
      return k;
  return std::nullopt;
}

/// An arc (or an undirected edge for multicut).
struct GraphArc {
  int from = 0;
  int to = 0;
  Softness softness = Softness::Soft;
  Weight weight = 1;
  bool special = false; // subset-dfas only

  bool deletable() const { return softness == Softness::Soft; }
  bool operator==(const GraphArc &) const = default;
};

/// A cut request. Soft requests may be ignored at the price of their weight.
struct CutRequest {
  int s = 0;
  int t = 0;
  Softness softness = Softness::Crisp;
  Weight weight = 1;

  bool deletable() const { return softness == Softness::Soft; }
  bool operator==(const CutRequest &) const = default;
};

/// One of the four cut problems. Deletable objects are addressed by a single
/// id space: arcs take ids 0..A-1, requests take A..A+R-1.
struct GraphProblemInstance {
  GraphProblemKind kind = GraphProblemKind::DSMC;
  std::vector<std::string> vertices;
  std::vector<GraphArc> arcs;
  std::vector<CutRequest> requests;
  std::int64_t cost_budget = 0;
  std::optional<Weight> weight_budget;

  int intern(const std::string &name) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == name)
        return static_cast<int>(i);
    vertices.push_back(name);
    return static_cast<int>(vertices.size() - 1);
  }

  /// Appends a vertex without checking for duplicate names.
  int add_vertex(std::string name) {
    vertices.push_back(std::move(name));
    return static_cast<int>(vertices.size() - 1);
  }

  int add_arc(int u, int v, Softness s = Softness::Soft, Weight w = 1,
              bool special = false) {
    arcs.push_back({u, v, s, w, special});
    return static_cast<int>(arcs.size() - 1);
  }

  /// Returns the object id of the new request.
  int add_request(int s, int t, Softness soft = Softness::Crisp, Weight w = 1) {
    requests.push_back({s, t, soft, w});
    return static_cast<int>(arcs.size() + requests.size() - 1);
  }

  int num_objects() const { return static_cast<int>(arcs.size() + requests.size()); }
  bool is_arc_object(int id) const { return id < static_cast<int>(arcs.size()); }

  bool object_deletable(int id) const {
    return is_arc_object(id) ? arcs[static_cast<std::size_t>(id)].deletable()
                             : requests[static_cast<std::size_t>(id) - arcs.size()].deletable();
  }
  Weight object_weight(int id) const {
    return is_arc_object(id) ? arcs[static_cast<std::size_t>(id)].weight
                             : requests[static_cast<std::size_t>(id) - arcs.size()].weight;
  }

  std::vector<int> deletable_objects() const {
    std::vector<int> out;
    for (int id = 0; id < num_objects(); ++id)
      if (object_deletable(id))
        out.push_back(id);
    return out;
  }

  bool operator==(const GraphProblemInstance &) const = default;
};

/// Decides whether deleting a set of objects solves a graph problem. Keeps its
/// scratch buffers between calls.
class GraphSolutionChecker {
public:
  explicit GraphSolutionChecker(const GraphProblemInstance &g) : g_(&g) {
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(g.arcs.size());
    for (const auto &a : g.arcs)
      arcs.emplace_back(a.from, a.to);
    csr_ = Csr::build(static_cast<int>(g.vertices.size()), arcs);
    arc_on_.assign(g.arcs.size(), 1);
    request_on_.assign(g.requests.size(), 1);
  }

  /// `deleted` lists object ids (see GraphProblemInstance).
  bool accepts(std::span<const int> deleted) {
    std::fill(arc_on_.begin(), arc_on_.end(), 1);
    std::fill(request_on_.begin(), request_on_.end(), 1);
    for (int id : deleted) {
      if (g_->is_arc_object(id))
        arc_on_[static_cast<std::size_t>(id)] = 0;
      else
        request_on_[static_cast<std::size_t>(id) - g_->arcs.size()] = 0;
    }
    return accepts_current();
  }

  /// Arc mask is set directly by the caller; all requests are active.
  bool accepts_arc_mask(std::span<const char> arc_on) {
    std::copy(arc_on.begin(), arc_on.end(), arc_on_.begin());
    std::fill(request_on_.begin(), request_on_.end(), 1);
    return accepts_current();
  }

private:
  bool accepts_current() {
    switch (g_->kind) {
    case GraphProblemKind::EdgeMulticut:
      return multicut_ok();
    case GraphProblemKind::DFAS:
    case GraphProblemKind::SubsetDFAS:
    case GraphProblemKind::DSMC:
      break;
    }
    scc_.run(csr_, arc_on_);
    if (g_->kind == GraphProblemKind::DSMC) {
      for (std::size_t r = 0; r < g_->requests.size(); ++r) {
        if (!request_on_[r])
          continue;
        const auto &q = g_->requests[r];
        if (scc_.component(q.s) == scc_.component(q.t))
          return false;
      }
      return true;
    }
    for (std::size_t a = 0; a < g_->arcs.size(); ++a) {
      if (!arc_on_[a])
        continue;
      const auto &arc = g_->arcs[a];
      if (g_->kind == GraphProblemKind::SubsetDFAS && !arc.special)
        continue;
      if (scc_.component(arc.from) == scc_.component(arc.to))
        return false;
    }
    return true;
  }

  bool multicut_ok() {
    parent_.resize(g_->vertices.size());
    std::iota(parent_.begin(), parent_.end(), 0);
    for (std::size_t a = 0; a < g_->arcs.size(); ++a)
      if (arc_on_[a])
        parent_[static_cast<std::size_t>(find(g_->arcs[a].from))] = find(g_->arcs[a].to);
    for (std::size_t r = 0; r < g_->requests.size(); ++r)
      if (request_on_[r] && find(g_->requests[r].s) == find(g_->requests[r].t))
        return false;
    return true;
  }

  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      auto vi = static_cast<std::size_t>(v);
      parent_[vi] = parent_[static_cast<std::size_t>(parent_[vi])];
      v = parent_[vi];
    }
    return v;
  }

  const GraphProblemInstance *g_;
  Csr csr_;
  SccFinder scc_;
  std::vector<char> arc_on_;
  std::vector<char> request_on_;
  std::vector<int> parent_;
};

inline bool is_graph_solution(const GraphProblemInstance &g,
                              std::span<const int> deleted) {
  for (int id : deleted)
    if (id < 0 || id >= g.num_objects() || !g.object_deletable(id))
      return false;
  GraphSolutionChecker checker(g);
  return checker.accepts(deleted);
}

/// Reads the graph formats:
///
///     problem <dfas|multicut|subset-dfas|dsmc>   optional
///     k <int>
///     w <int|inf>                                optional
///     arc <u> <v> <soft|crisp> [<weight>] [special]
///     edge <u> <v> <soft|crisp> [<weight>]
///     pair <s> <t> <soft|crisp> [<weight>]
///
/// Without a problem line the kind is inferred: edges mean multicut, a special
/// arc means subset-dfas, anything else is dsmc.
inline GraphProblemInstance parse_graph_problem(std::string_view input) {
  GraphProblemInstance g;
  std::optional<GraphProblemKind> declared;
  bool seen_k = false, seen_w = false, seen_edge = false, seen_arc = false,
       seen_special = false;
  int first_object_line = 0;
  for (const auto &line : text::tokenize(input)) {
    const auto &t = line.tokens;
    const int ln = line.number;
    if (t[0] == "problem") {
      if (declared || t.size() != 2)
        throw ParseError(ln, "bad or duplicate problem line");
      declared = graph_problem_from_token(t[1]);
      if (!declared)
        throw ParseError(ln, "unknown problem '" + t[1] + "'");
      continue;
    }
    if (t[0] == "k") {
      if (seen_k || t.size() != 2)
        throw ParseError(ln, "bad or duplicate k line");
      g.cost_budget = text::parse_int(t[1], ln, "cost budget");
      if (g.cost_budget < 0)
        throw ParseError(ln, "cost budget must be nonnegative");
      seen_k = true;
      continue;
    }
    if (t[0] == "w") {
      if (seen_w || t.size() != 2)
        throw ParseError(ln, "bad or duplicate w line");
      if (t[1] != "inf") {
        g.weight_budget = text::parse_int(t[1], ln, "weight budget");
        if (*g.weight_budget <= 0)
          throw ParseError(ln, "weight budget must be positive");
      }
      seen_w = true;
      continue;
    }
    if (t[0] != "arc" && t[0] != "edge" && t[0] != "pair")
      throw ParseError(ln, "unknown line keyword '" + t[0] + "'");
    if (t.size() < 4)
      throw ParseError(ln, t[0] + " line needs two endpoints and soft|crisp");
    if (first_object_line == 0)
      first_object_line = ln;
    for (std::size_t i : {1u, 2u})
      if (!text::valid_vertex_name(t[i]))
        throw ParseError(ln, "invalid vertex name '" + t[i] + "'");
    Softness softness = text::parse_softness(t[3], ln);
    Weight weight = 1;
    bool special = false;
    for (std::size_t i = 4; i < t.size(); ++i) {
      if (t[i] == "special" && t[0] == "arc" && i + 1 == t.size()) {
        special = true;
        continue;
      }
      if (i != 4)
        throw ParseError(ln, "unexpected token '" + t[i] + "'");
      Weight parsed = text::parse_int(t[i], ln, "weight");
      if (softness == Softness::Soft) {
        if (parsed <= 0)
          throw ParseError(ln, "weight must be positive");
        weight = parsed;
      }
    }
    int u = g.intern(t[1]);
    int v = g.intern(t[2]);
    if (t[0] == "pair") {
      g.add_request(u, v, softness, weight);
    } else {
      (t[0] == "edge" ? seen_edge : seen_arc) = true;
      seen_special = seen_special || special;
      g.add_arc(u, v, softness, weight, special);
    }
  }
  if (!seen_k)
    throw ParseError(0, "missing k line");
  if (seen_edge && seen_arc)
    throw ParseError(first_object_line, "cannot mix arc and edge lines");
  if (declared) {
    g.kind = *declared;
  } else if (seen_edge) {
    g.kind = GraphProblemKind::EdgeMulticut;
  } else if (seen_special) {
    g.kind = GraphProblemKind::SubsetDFAS;
  } else {
    g.kind = GraphProblemKind::DSMC;
  }
  if (g.kind == GraphProblemKind::EdgeMulticut && seen_arc)
    throw ParseError(first_object_line, "multicut instances use edge lines");
  if (g.kind != GraphProblemKind::EdgeMulticut && seen_edge)
    throw ParseError(first_object_line, "edge lines are only valid for multicut");
  if (g.kind == GraphProblemKind::DFAS && !g.requests.empty())
    throw ParseError(first_object_line, "dfas instances have no requests");
  if (g.kind == GraphProblemKind::SubsetDFAS && !g.requests.empty())
    throw ParseError(first_object_line, "subset-dfas instances have no requests");
  if (g.kind != GraphProblemKind::SubsetDFAS && seen_special)
    throw ParseError(first_object_line, "special arcs are only valid for subset-dfas");
  return g;
}

inline std::string serialize_graph_problem(const GraphProblemInstance &g) {
  std::string out = "problem " + std::string(graph_problem_token(g.kind)) + "\n";
  out += "k " + std::to_string(g.cost_budget) + "\n";
  if (g.weight_budget)
    out += "w " + std::to_string(*g.weight_budget) + "\n";
  const char *arc_kw = g.kind == GraphProblemKind::EdgeMulticut ? "edge " : "arc ";
  auto object = [&](const char *kw, int u, int v, Softness s, Weight w) {
    out += kw;
    out += g.vertices[static_cast<std::size_t>(u)] + " " +
           g.vertices[static_cast<std::size_t>(v)] + " ";
    out += text::softness_token(s);
    if (s == Softness::Soft)
      out += " " + std::to_string(w);
  };
  for (const auto &a : g.arcs) {
    object(arc_kw, a.from, a.to, a.softness, a.weight);
    if (a.special)
      out += " special";
    out += '\n';
  }
  for (const auto &r : g.requests) {
    object("pair ", r.s, r.t, r.softness, r.weight);
    out += '\n';
  }
  return out;
}

} // namespace pamincsp
