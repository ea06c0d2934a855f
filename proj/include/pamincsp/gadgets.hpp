#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pamincsp/clique.hpp"
#include "pamincsp/graph_problem.hpp"
#include "pamincsp/model.hpp"
#include "pamincsp/scc.hpp"

// Multicolored Clique -> Directed Symmetric Multicut.
//
// A diamond has vertices w, n, e, s, crisp arcs s->w, w->n, s->e, e->n and one
// deletable arc n->s; deleting n->s ("picking" the diamond) breaks its strong
// connectivity. Part i of the clique instance becomes necklace i: k strings of
// 3n diamonds joined in a cycle, with junctions c_0..c_{3kn-1} and crisp
// requests {c_a, c_{a+n mod 3kn}}. Every non-adjacent pair v^i_a, v^j_b (i<j)
// gets a coordination gadget: vertices s, t, crisp crossing arcs
// x_{n+a} -> s -> y_{2n+b-1} and y_{n+b} -> t -> x_{2n+a-1}, where x and y are
// the junctions of string j of necklace i and string i of necklace j, plus the
// crisp request {s, t}. The budget is 3k^2.
//
// Naming: junctions nk<i>.c<idx> (idx 0-based), diamond poles
// nk<i>.s<j>.d<t>.n and .s, coordination vertices cg<i>.<j>.<a>.<b>.s and .t.
// Everything except junction indices is 1-based.

namespace pamincsp {

struct Diamond {
  int w = -1, n = -1, e = -1, s = -1;
  int ns_arc = -1;
};

struct DiamondPosition {
  int necklace = 0; // 1-based part index
  int string = 0;   // 1-based
  int position = 0; // 1..3n
};

struct CoordinationGadget {
  int i = 0, j = 0, alpha = 0, beta = 0; // 1-based, i < j
  int s = -1, t = -1;
  std::array<int, 4> crossing_arcs{}; // x->s, s->y, y->t, t->x
  int request = -1;                   // object id
};

struct GadgetMap {
  int k = 0;
  int n = 0;
  /// diamonds[i-1][j-1][t-1] is the diamond t of string j in necklace i
  std::vector<std::vector<std::vector<Diamond>>> diamonds;
  /// junctions[i-1][idx] is c_idx of necklace i
  std::vector<std::vector<int>> junctions;
  /// object ids of the in-necklace requests, indexed like junctions
  std::vector<std::vector<int>> necklace_requests;
  std::vector<CoordinationGadget> coordination;
  /// arc id -> diamond, for ns arcs only
  std::vector<std::optional<DiamondPosition>> ns_position;
  /// clique vertex -> (part, index), both 1-based
  std::vector<std::pair<int, int>> vertex_slot;
  /// clique vertex id of v^i_a at [i-1][a-1]
  std::vector<std::vector<int>> part_vertices;

  const Diamond &diamond(int i, int j, int t) const {
    return diamonds.at(static_cast<std::size_t>(i - 1))
        .at(static_cast<std::size_t>(j - 1))
        .at(static_cast<std::size_t>(t - 1));
  }
  int junction_count() const { return 3 * k * n; }
  /// x_p of string j in necklace i (p in 0..3n-1)
  int string_junction(int i, int j, int p) const {
    return junctions.at(static_cast<std::size_t>(i - 1))
        .at(static_cast<std::size_t>((j - 1) * 3 * n + p));
  }
  std::int64_t budget() const { return 3LL * k * k; }
};

struct DsmcGadget {
  GraphProblemInstance dsmc;
  GadgetMap map;
};

inline DsmcGadget build_dsmc_from_clique(const CliqueInstance &g) {
  g.validate();
  const int k = g.k();
  const int n = g.n();
  if (k < 2 || n < 1)
    throw PreconditionError("gadget construction needs k >= 2 and n >= 1");
  DsmcGadget out;
  GraphProblemInstance &d = out.dsmc;
  GadgetMap &m = out.map;
  d.kind = GraphProblemKind::DSMC;
  m.k = k;
  m.n = n;
  m.part_vertices = g.parts;
  m.vertex_slot.assign(g.names.size(), {0, 0});
  for (int i = 0; i < k; ++i)
    for (int a = 0; a < n; ++a)
      m.vertex_slot[static_cast<std::size_t>(g.parts[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)])] = {i + 1, a + 1};

  const int len = 3 * k * n;
  m.diamonds.assign(static_cast<std::size_t>(k),
                    std::vector<std::vector<Diamond>>(static_cast<std::size_t>(k),
                                                      std::vector<Diamond>(static_cast<std::size_t>(3 * n))));
  m.junctions.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(len)));
  std::vector<std::optional<DiamondPosition>> ns_position;
  for (int i = 1; i <= k; ++i) {
    const std::string nk = "nk" + std::to_string(i);
    auto &cs = m.junctions[static_cast<std::size_t>(i - 1)];
    for (int idx = 0; idx < len; ++idx)
      cs[static_cast<std::size_t>(idx)] = d.add_vertex(nk + ".c" + std::to_string(idx));
    for (int j = 1; j <= k; ++j)
      for (int t = 1; t <= 3 * n; ++t) {
        Diamond &dm = m.diamonds[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(t - 1)];
        const int west = (j - 1) * 3 * n + (t - 1);
        dm.w = cs[static_cast<std::size_t>(west)];
        dm.e = cs[static_cast<std::size_t>((west + 1) % len)];
        const std::string base = nk + ".s" + std::to_string(j) + ".d" + std::to_string(t);
        dm.n = d.add_vertex(base + ".n");
        dm.s = d.add_vertex(base + ".s");
        d.add_arc(dm.s, dm.w, Softness::Crisp);
        d.add_arc(dm.w, dm.n, Softness::Crisp);
        d.add_arc(dm.s, dm.e, Softness::Crisp);
        d.add_arc(dm.e, dm.n, Softness::Crisp);
        dm.ns_arc = d.add_arc(dm.n, dm.s, Softness::Soft, 1);
        ns_position.resize(d.arcs.size());
        ns_position[static_cast<std::size_t>(dm.ns_arc)] = DiamondPosition{i, j, t};
      }
  }

  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j)
      for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
          if (g.adjacent(g.parts[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(a - 1)],
                         g.parts[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(b - 1)]))
            continue;
          CoordinationGadget cg{i, j, a, b, -1, -1, {}, -1};
          const std::string base = "cg" + std::to_string(i) + "." + std::to_string(j) + "." +
                                   std::to_string(a) + "." + std::to_string(b);
          cg.s = d.add_vertex(base + ".s");
          cg.t = d.add_vertex(base + ".t");
          cg.crossing_arcs[0] = d.add_arc(m.string_junction(i, j, n + a), cg.s, Softness::Crisp);
          cg.crossing_arcs[1] = d.add_arc(cg.s, m.string_junction(j, i, 2 * n + b - 1), Softness::Crisp);
          cg.crossing_arcs[2] = d.add_arc(m.string_junction(j, i, n + b), cg.t, Softness::Crisp);
          cg.crossing_arcs[3] = d.add_arc(cg.t, m.string_junction(i, j, 2 * n + a - 1), Softness::Crisp);
          m.coordination.push_back(cg);
        }
  ns_position.resize(d.arcs.size());
  m.ns_position = std::move(ns_position);

  m.necklace_requests.assign(static_cast<std::size_t>(k), {});
  for (int i = 1; i <= k; ++i) {
    const auto &cs = m.junctions[static_cast<std::size_t>(i - 1)];
    for (int a = 0; a < len; ++a)
      m.necklace_requests[static_cast<std::size_t>(i - 1)].push_back(
          d.add_request(cs[static_cast<std::size_t>(a)], cs[static_cast<std::size_t>((a + n) % len)],
                        Softness::Crisp));
  }
  for (auto &cg : m.coordination)
    cg.request = d.add_request(cg.s, cg.t, Softness::Crisp);
  d.cost_budget = m.budget();
  return out;
}

/// Picks diamonds a, a+n, a+2n of every string of necklace i for each v^i_a in Z.
inline std::vector<int> clique_to_cut(const GadgetMap &m, const std::vector<int> &z) {
  std::vector<int> alpha(static_cast<std::size_t>(m.k), 0);
  for (int v : z) {
    if (v < 0 || static_cast<std::size_t>(v) >= m.vertex_slot.size())
      throw PreconditionError("clique_to_cut: unknown vertex");
    auto [part, a] = m.vertex_slot[static_cast<std::size_t>(v)];
    if (alpha[static_cast<std::size_t>(part - 1)] != 0)
      throw PreconditionError("clique_to_cut: two vertices from part " + std::to_string(part));
    alpha[static_cast<std::size_t>(part - 1)] = a;
  }
  for (int i = 0; i < m.k; ++i)
    if (alpha[static_cast<std::size_t>(i)] == 0)
      throw PreconditionError("clique_to_cut: no vertex from part " + std::to_string(i + 1));
  std::vector<int> out;
  for (int i = 1; i <= m.k; ++i)
    for (int j = 1; j <= m.k; ++j)
      for (int r = 0; r < 3; ++r)
        out.push_back(m.diamond(i, j, alpha[static_cast<std::size_t>(i - 1)] + r * m.n).ns_arc);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

/// Per necklace, the a such that X picks exactly diamonds a, a+n, a+2n of every
/// string; nullopt if X has any other shape.
inline std::optional<std::vector<int>> evenly_spaced_choice(const GadgetMap &m,
                                                            const std::vector<int> &x) {
  std::vector<std::vector<std::vector<char>>> picked(
      static_cast<std::size_t>(m.k),
      std::vector<std::vector<char>>(static_cast<std::size_t>(m.k),
                                     std::vector<char>(static_cast<std::size_t>(3 * m.n), 0)));
  for (int id : x) {
    if (id < 0 || static_cast<std::size_t>(id) >= m.ns_position.size() ||
        !m.ns_position[static_cast<std::size_t>(id)])
      return std::nullopt;
    const auto &pos = *m.ns_position[static_cast<std::size_t>(id)];
    picked[static_cast<std::size_t>(pos.necklace - 1)][static_cast<std::size_t>(pos.string - 1)]
          [static_cast<std::size_t>(pos.position - 1)] = 1;
  }
  std::vector<int> alpha;
  for (int i = 0; i < m.k; ++i) {
    int a = 0;
    for (int t = 1; t <= m.n; ++t)
      if (picked[static_cast<std::size_t>(i)][0][static_cast<std::size_t>(t - 1)]) {
        if (a)
          return std::nullopt;
        a = t;
      }
    if (!a)
      return std::nullopt;
    for (int j = 0; j < m.k; ++j)
      for (int t = 1; t <= 3 * m.n; ++t) {
        const bool want = (t - a) % m.n == 0 && t >= a;
        if ((picked[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(t - 1)] != 0) != want)
          return std::nullopt;
      }
    alpha.push_back(a);
  }
  return alpha;
}

} // namespace detail

/// {v^i_a : diamond a of string 1 of necklace i is picked}, defined only when X
/// picks exactly 3k evenly spaced diamonds in every necklace.
inline std::optional<std::vector<int>> cut_to_clique(const GadgetMap &m, const std::vector<int> &x) {
  if (static_cast<std::int64_t>(x.size()) > m.budget())
    return std::nullopt;
  auto alpha = detail::evenly_spaced_choice(m, x);
  if (!alpha)
    return std::nullopt;
  std::vector<int> z;
  for (int i = 0; i < m.k; ++i)
    z.push_back(m.part_vertices[static_cast<std::size_t>(i)][static_cast<std::size_t>((*alpha)[static_cast<std::size_t>(i)] - 1)]);
  return z;
}

/// True iff X consists of deletable objects and every surviving request has its
/// endpoints in different strongly connected components of D - X.
inline bool verify_dsmc_solution(const GraphProblemInstance &d, const std::vector<int> &x) {
  for (int id : x)
    if (id < 0 || id >= d.num_objects() || !d.object_deletable(id))
      return false;
  return is_graph_solution(d, x);
}

/// Which crossing arcs a junction admits, by its position in its string.
enum class JunctionType : std::uint8_t { None, OutgoingOnly, Both, IncomingOnly };

inline std::string_view junction_type_name(JunctionType t) {
  switch (t) {
  case JunctionType::None:
    return "none";
  case JunctionType::OutgoingOnly:
    return "outgoing-only";
  case JunctionType::Both:
    return "both";
  case JunctionType::IncomingOnly:
    return "incoming-only";
  }
  return "?";
}

/// x_0..x_n: none, x_{n+1}..x_{2n-1}: outgoing only, x_{2n}: both,
/// x_{2n+1}..x_{3n-1}: incoming only.
inline JunctionType junction_type(int n, int p) {
  if (p <= n)
    return JunctionType::None;
  if (p < 2 * n)
    return JunctionType::OutgoingOnly;
  if (p == 2 * n)
    return JunctionType::Both;
  return JunctionType::IncomingOnly;
}

struct Run {
  int necklace = 0;                 // 1-based
  std::vector<int> junctions;       // junction indices c_idx in necklace order
  std::vector<JunctionType> types;  // positional type of each junction
  std::vector<int> crossing_out;    // crossing arcs leaving each junction in D
  std::vector<int> crossing_in;     // crossing arcs entering each junction in D
  bool strongly_connected = false;  // all junctions in one component of D - X
};

struct RunReport {
  std::vector<Run> runs;                 // 3k per necklace, necklace by necklace
  bool neighbours_separated = true;      // no two neighbouring runs share a component
  bool incidence_matches_types = true;   // actual crossing arcs respect the types
  std::vector<std::string> problems;
};

/// Splits every necklace of D - X into its runs and checks the run claims.
inline RunReport analyze_runs(const GadgetMap &m, const GraphProblemInstance &d,
                              const std::vector<int> &x) {
  auto alpha = detail::evenly_spaced_choice(m, x);
  if (!alpha)
    throw PreconditionError("analyze_runs needs 3k evenly spaced picked diamonds per necklace");
  std::vector<std::pair<int, int>> arcs;
  for (const auto &a : d.arcs)
    arcs.emplace_back(a.from, a.to);
  Csr g = Csr::build(static_cast<int>(d.vertices.size()), arcs);
  std::vector<char> on(d.arcs.size(), 1);
  for (int id : x)
    on[static_cast<std::size_t>(id)] = 0;
  SccFinder scc;
  scc.run(g, on);

  std::vector<int> out_deg(d.vertices.size(), 0), in_deg(d.vertices.size(), 0);
  for (const auto &cg : m.coordination) {
    ++out_deg[static_cast<std::size_t>(d.arcs[static_cast<std::size_t>(cg.crossing_arcs[0])].from)];
    ++in_deg[static_cast<std::size_t>(d.arcs[static_cast<std::size_t>(cg.crossing_arcs[1])].to)];
    ++out_deg[static_cast<std::size_t>(d.arcs[static_cast<std::size_t>(cg.crossing_arcs[2])].from)];
    ++in_deg[static_cast<std::size_t>(d.arcs[static_cast<std::size_t>(cg.crossing_arcs[3])].to)];
  }

  RunReport report;
  const int len = m.junction_count();
  for (int i = 1; i <= m.k; ++i) {
    const int a = (*alpha)[static_cast<std::size_t>(i - 1)];
    const auto &cs = m.junctions[static_cast<std::size_t>(i - 1)];
    const std::size_t first_run = report.runs.size();
    // Picked diamond t of a string has west junction t-1 and east junction t
    // (string offsets); a run starts at the east junction of a picked diamond.
    for (int r = 0; r < 3 * m.k; ++r) {
      Run run;
      run.necklace = i;
      const int start = r * m.n + a; // east junction of the r-th picked diamond
      for (int q = 0; q < m.n; ++q) {
        const int idx = (start + q) % len;
        const int vid = cs[static_cast<std::size_t>(idx)];
        const JunctionType type = junction_type(m.n, idx % (3 * m.n));
        run.junctions.push_back(idx);
        run.types.push_back(type);
        run.crossing_out.push_back(out_deg[static_cast<std::size_t>(vid)]);
        run.crossing_in.push_back(in_deg[static_cast<std::size_t>(vid)]);
        const bool may_out = type == JunctionType::OutgoingOnly || type == JunctionType::Both;
        const bool may_in = type == JunctionType::IncomingOnly || type == JunctionType::Both;
        if ((run.crossing_out.back() && !may_out) || (run.crossing_in.back() && !may_in)) {
          report.incidence_matches_types = false;
          report.problems.push_back("junction nk" + std::to_string(i) + ".c" + std::to_string(idx) +
                                    " has crossing arcs its position does not admit");
        }
      }
      run.strongly_connected = true;
      for (int idx : run.junctions)
        if (scc.component(cs[static_cast<std::size_t>(idx)]) !=
            scc.component(cs[static_cast<std::size_t>(run.junctions.front())]))
          run.strongly_connected = false;
      report.runs.push_back(std::move(run));
    }
    for (int r = 0; r < 3 * m.k; ++r) {
      const Run &cur = report.runs[first_run + static_cast<std::size_t>(r)];
      const Run &next = report.runs[first_run + static_cast<std::size_t>((r + 1) % (3 * m.k))];
      if (scc.component(cs[static_cast<std::size_t>(cur.junctions.front())]) ==
          scc.component(cs[static_cast<std::size_t>(next.junctions.front())])) {
        report.neighbours_separated = false;
        report.problems.push_back("neighbouring runs starting at nk" + std::to_string(i) + ".c" +
                                  std::to_string(cur.junctions.front()) + " and c" +
                                  std::to_string(next.junctions.front()) +
                                  " are strongly connected");
      }
    }
  }
  return report;
}

/// Side file tying the DSMC instance back to the clique instance.
inline std::string serialize_gadget_map(const GadgetMap &m, const GraphProblemInstance &d,
                                        const CliqueInstance &g) {
  auto name = [&](int v) { return d.vertices[static_cast<std::size_t>(v)]; };
  std::string out = "gadget k " + std::to_string(m.k) + " n " + std::to_string(m.n) +
                    " budget " + std::to_string(m.budget()) + "\n";
  for (int i = 1; i <= m.k; ++i)
    for (int a = 1; a <= m.n; ++a)
      out += "choice " + std::to_string(i) + " " + std::to_string(a) + " " +
             g.names[static_cast<std::size_t>(m.part_vertices[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(a - 1)])] + "\n";
  for (int i = 1; i <= m.k; ++i)
    for (int j = 1; j <= m.k; ++j)
      for (int t = 1; t <= 3 * m.n; ++t) {
        const Diamond &dm = m.diamond(i, j, t);
        out += "diamond " + std::to_string(i) + " " + std::to_string(j) + " " + std::to_string(t) +
               " w " + name(dm.w) + " n " + name(dm.n) + " e " + name(dm.e) + " s " + name(dm.s) +
               " ns-arc " + std::to_string(dm.ns_arc) + "\n";
      }
  for (const auto &cg : m.coordination) {
    out += "coordination " + std::to_string(cg.i) + " " + std::to_string(cg.j) + " " +
           std::to_string(cg.alpha) + " " + std::to_string(cg.beta) + " s " + name(cg.s) + " t " +
           name(cg.t) + " crossing-arcs";
    for (int a : cg.crossing_arcs)
      out += " " + std::to_string(a);
    out += " request " + std::to_string(cg.request) + "\n";
  }
  return out;
}

} // namespace pamincsp
