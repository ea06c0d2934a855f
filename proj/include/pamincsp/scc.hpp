#pragma once

#include <algorithm>
#include <functional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

namespace pamincsp {

/// Compressed adjacency of a digraph on vertices 0..n-1. Arc ids are positions
/// in the arc list passed to build().
struct Csr {
  int num_vertices = 0;
  std::vector<int> offset;
  std::vector<int> target;
  std::vector<int> arc_id;

  static Csr build(int n, std::span<const std::pair<int, int>> arcs) {
    Csr g;
    g.num_vertices = n;
    g.offset.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto &[u, v] : arcs)
      ++g.offset[static_cast<std::size_t>(u) + 1];
    for (int v = 0; v < n; ++v)
      g.offset[static_cast<std::size_t>(v) + 1] += g.offset[static_cast<std::size_t>(v)];
    g.target.resize(arcs.size());
    g.arc_id.resize(arcs.size());
    std::vector<int> fill(g.offset.begin(), g.offset.end() - 1);
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      auto slot = static_cast<std::size_t>(fill[static_cast<std::size_t>(arcs[a].first)]++);
      g.target[slot] = arcs[a].second;
      g.arc_id[slot] = static_cast<int>(a);
    }
    return g;
  }
};

/// Iterative Tarjan. Component ids come out in reverse topological order:
/// for every arc u->v, component(u) >= component(v). Buffers are reused
/// across calls, which matters for the brute-force oracles.
class SccFinder {
public:
  /// `arc_enabled`, when non-empty, masks arcs by arc id (nonzero = present).
  int run(const Csr &g, std::span<const char> arc_enabled = {}) {
    const auto n = static_cast<std::size_t>(g.num_vertices);
    index_.assign(n, kUnvisited);
    low_.resize(n);
    comp_.assign(n, -1);
    on_stack_.assign(n, 0);
    stack_.clear();
    call_.clear();
    int next_index = 0;
    int num_comps = 0;
    for (int root = 0; root < g.num_vertices; ++root) {
      if (index_[static_cast<std::size_t>(root)] != kUnvisited)
        continue;
      enter(root, g, next_index);
      while (!call_.empty()) {
        auto &[v, edge] = call_.back();
        const auto vi = static_cast<std::size_t>(v);
        if (edge < g.offset[vi + 1]) {
          const auto e = static_cast<std::size_t>(edge++);
          if (!arc_enabled.empty() &&
              !arc_enabled[static_cast<std::size_t>(g.arc_id[e])])
            continue;
          const int w = g.target[e];
          const auto wi = static_cast<std::size_t>(w);
          if (index_[wi] == kUnvisited) {
            enter(w, g, next_index);
          } else if (on_stack_[wi]) {
            low_[vi] = std::min(low_[vi], index_[wi]);
          }
          continue;
        }
        if (low_[vi] == index_[vi]) {
          int w;
          do {
            w = stack_.back();
            stack_.pop_back();
            on_stack_[static_cast<std::size_t>(w)] = 0;
            comp_[static_cast<std::size_t>(w)] = num_comps;
          } while (w != v);
          ++num_comps;
        }
        const int finished = v;
        call_.pop_back();
        if (!call_.empty()) {
          const auto parent = static_cast<std::size_t>(call_.back().first);
          low_[parent] = std::min(low_[parent], low_[static_cast<std::size_t>(finished)]);
        }
      }
    }
    num_components_ = num_comps;
    return num_comps;
  }

  const std::vector<int> &component() const { return comp_; }
  int component(int v) const { return comp_[static_cast<std::size_t>(v)]; }
  int num_components() const { return num_components_; }

private:
  static constexpr int kUnvisited = -1;

  void enter(int v, const Csr &g, int &next_index) {
    const auto vi = static_cast<std::size_t>(v);
    index_[vi] = low_[vi] = next_index++;
    stack_.push_back(v);
    on_stack_[vi] = 1;
    call_.emplace_back(v, g.offset[vi]);
  }

  std::vector<int> index_;
  std::vector<int> low_;
  std::vector<int> comp_;
  std::vector<char> on_stack_;
  std::vector<int> stack_;
  std::vector<std::pair<int, int>> call_;
  int num_components_ = 0;
};

/// Topological order of the condensation. Among available components the one
/// whose smallest vertex id is least goes first, so the order is reproducible.
/// Returns, per component id, its position in that order.
inline std::vector<int> condensation_positions(const Csr &g,
                                               const std::vector<int> &comp,
                                               int num_comps,
                                               std::span<const char> arc_enabled = {}) {
  const auto nc = static_cast<std::size_t>(num_comps);
  std::vector<int> min_vertex(nc, g.num_vertices);
  for (int v = 0; v < g.num_vertices; ++v) {
    auto c = static_cast<std::size_t>(comp[static_cast<std::size_t>(v)]);
    min_vertex[c] = std::min(min_vertex[c], v);
  }
  std::vector<std::vector<int>> succ(nc);
  std::vector<int> indegree(nc, 0);
  for (int u = 0; u < g.num_vertices; ++u) {
    const auto ui = static_cast<std::size_t>(u);
    for (int e = g.offset[ui]; e < g.offset[ui + 1]; ++e) {
      const auto ei = static_cast<std::size_t>(e);
      if (!arc_enabled.empty() && !arc_enabled[static_cast<std::size_t>(g.arc_id[ei])])
        continue;
      int cu = comp[ui];
      int cv = comp[static_cast<std::size_t>(g.target[ei])];
      if (cu == cv)
        continue;
      succ[static_cast<std::size_t>(cu)].push_back(cv);
      ++indegree[static_cast<std::size_t>(cv)];
    }
  }
  using Item = std::pair<int, int>; // (min vertex, component)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
  for (std::size_t c = 0; c < nc; ++c)
    if (indegree[c] == 0)
      ready.emplace(min_vertex[c], static_cast<int>(c));
  std::vector<int> position(nc, -1);
  int next = 0;
  while (!ready.empty()) {
    auto [mv, c] = ready.top();
    ready.pop();
    position[static_cast<std::size_t>(c)] = next++;
    for (int d : succ[static_cast<std::size_t>(c)])
      if (--indegree[static_cast<std::size_t>(d)] == 0)
        ready.emplace(min_vertex[static_cast<std::size_t>(d)], d);
  }
  return position;
}

} // namespace pamincsp
