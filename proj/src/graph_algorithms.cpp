#include "swapatomic/graph_algorithms.hpp"

#include <algorithm>
#include <map>

namespace swapatomic {

namespace {

// Kosaraju with explicit stacks. comp receives a component number per vertex
// in the vertex set and -1 elsewhere.
void kosaraju(const SwapDigraph& d, const std::vector<bool>& vertices, const std::vector<bool>& arcs,
              std::vector<int>& comp, std::vector<VertexIndex>& order, std::vector<VertexIndex>& stack,
              std::vector<unsigned>& cursor, std::vector<bool>& seen) {
  const auto n = static_cast<VertexIndex>(d.vertex_count());
  comp.assign(n, -1);
  order.clear();
  seen.assign(n, false);
  cursor.assign(n, 0);
  for (VertexIndex root = 0; root < n; ++root) {
    if (!vertices[root] || seen[root]) continue;
    seen[root] = true;
    stack.assign(1, root);
    while (!stack.empty()) {
      const auto v = stack.back();
      auto outs = d.out_arcs(v);
      bool pushed = false;
      while (cursor[v] < outs.size()) {
        const auto a = outs[cursor[v]++];
        const auto w = d.arc(a).to;
        if (arcs[a] && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
          pushed = true;
          break;
        }
      }
      if (!pushed) {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  int next = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != -1) continue;
    stack.assign(1, *it);
    comp[*it] = next;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto a : d.in_arcs(v)) {
        const auto u = d.arc(a).from;
        if (arcs[a] && comp[u] == -1) {
          comp[u] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
}

SccPartition group(const SwapDigraph& d, const std::vector<int>& comp) {
  std::map<int, std::vector<VertexIndex>> by_comp;
  for (VertexIndex v = 0; v < comp.size(); ++v) {
    if (comp[v] >= 0) by_comp[comp[v]].push_back(v);
  }
  SccPartition p;
  for (auto& [_, members] : by_comp) {
    std::sort(members.begin(), members.end(), [&d](VertexIndex a, VertexIndex b) { return d.id(a) < d.id(b); });
    p.components.push_back(std::move(members));
  }
  std::sort(p.components.begin(), p.components.end(),
            [&d](const auto& a, const auto& b) { return d.id(a.front()) < d.id(b.front()); });
  return p;
}

}  // namespace

SccPartition strongly_connected_components(const SwapDigraph& d, const Subgraph& g) {
  std::vector<int> comp;
  std::vector<VertexIndex> order, stack;
  std::vector<unsigned> cursor;
  std::vector<bool> seen;
  kosaraju(d, g.vertex_flags(), g.arc_flags(), comp, order, stack, cursor, seen);
  return group(d, comp);
}

SccPartition weakly_connected_components(const SwapDigraph& d, const Subgraph& g) {
  const auto n = d.vertex_count();
  std::vector<int> comp(n, -1);
  int next = 0;
  for (VertexIndex root = 0; root < n; ++root) {
    if (!g.has_vertex(root) || comp[root] != -1) continue;
    std::vector<VertexIndex> stack{root};
    comp[root] = next;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      auto visit = [&](ArcIndex a, VertexIndex w) {
        if (g.has_arc(a) && comp[w] == -1) {
          comp[w] = next;
          stack.push_back(w);
        }
      };
      for (auto a : d.out_arcs(v)) visit(a, d.arc(a).to);
      for (auto a : d.in_arcs(v)) visit(a, d.arc(a).from);
    }
    ++next;
  }
  return group(d, comp);
}

bool is_piecewise_strongly_connected(const SwapDigraph& d, const Subgraph& g) {
  const auto weak = weakly_connected_components(d, g);
  const auto strong = strongly_connected_components(d, g);
  for (const auto& c : weak.components) {
    if (c.size() == 1) return false;  // isolated vertex
  }
  return weak.components == strong.components;
}

std::vector<std::vector<std::string>> component_ids(const SwapDigraph& d, const SccPartition& p) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : p.components) {
    auto& ids = out.emplace_back();
    for (auto v : c) ids.push_back(d.id(v));
  }
  return out;
}

PiecewiseChecker::PiecewiseChecker(const SwapDigraph& d) : d_(&d) {}

bool PiecewiseChecker::check(const std::vector<bool>& arc_flags) {
  const auto n = d_->vertex_count();
  for (VertexIndex v = 0; v < n; ++v) {
    bool touched = false;
    for (auto a : d_->out_arcs(v)) touched = touched || arc_flags[a];
    for (auto a : d_->in_arcs(v)) touched = touched || arc_flags[a];
    if (!touched) return false;
  }
  all_.assign(n, true);
  kosaraju(*d_, all_, arc_flags, comp_, order_, stack_, cursor_, seen_);
  // Weak components equal the SCCs exactly when no arc crosses two SCCs.
  for (ArcIndex a = 0; a < arc_flags.size(); ++a) {
    if (arc_flags[a] && comp_[d_->arc(a).from] != comp_[d_->arc(a).to]) return false;
  }
  return true;
}

}  // namespace swapatomic
