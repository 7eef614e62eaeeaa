#include "swapatomic/preference.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace swapatomic {

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::kLess: return "Less";
    case Ordering::kEqual: return "Equal";
    case Ordering::kGreater: return "Greater";
    case Ordering::kIncomparable: return "Incomparable";
  }
  return "?";
}

bool generic_leq(const SwapDigraph& d, const Outcome& a, const Outcome& b) {
  if (a.owner != b.owner) return false;
  if (monotone_leq(a, b)) return true;
  return a == no_deal(a.owner) && b == full_deal(d, a.owner);
}

ClassFlags classify_outcome(const SwapDigraph& d, const Outcome& o) {
  const Mask full_in = d.full_in_mask(o.owner);
  const Mask full_out = d.full_out_mask(o.owner);
  ClassFlags f = 0;
  if (o.in == full_in && o.out == full_out) f |= kClassDeal;
  if (o.in == 0 && o.out == 0) f |= kClassNoDeal;
  if (o.in == full_in && o.out != full_out) f |= kClassDiscount;
  if (o.in != 0 && o.out == 0) f |= kClassFreeRide;
  if (o.in != full_in && o.out != 0) f |= kClassUnderwater;
  return f;
}

std::vector<std::string> class_names(ClassFlags flags) {
  static const std::pair<OutcomeClass, const char*> names[] = {
      {kClassDeal, "DEAL"},           {kClassNoDeal, "NODEAL"},         {kClassDiscount, "DISCOUNT"},
      {kClassFreeRide, "FREERIDE"}, {kClassUnderwater, "UNDERWATER"},
  };
  std::vector<std::string> out;
  for (const auto& [bit, name] : names) {
    if (flags & bit) out.emplace_back(name);
  }
  return out;
}

SwapSystem h_closure(const SwapDigraph& d, unsigned degree_cap) {
  SwapSystem s(d);
  for (VertexIndex v = 0; v < d.vertex_count(); ++v) {
    const unsigned din = d.in_degree(v);
    const unsigned dout = d.out_degree(v);
    if (din + dout > degree_cap) {
      throw ModelError("h_closure: vertex '" + d.id(v) + "' has din+dout=" + std::to_string(din + dout) +
                       " above the enumeration cap of " + std::to_string(degree_cap));
    }
    const Mask full_in = d.full_in_mask(v);
    for (Mask out = 1; out <= d.full_out_mask(v); ++out) {
      for (Mask in = 0; in < full_in; ++in) s.add_generator({{v, in, out}, no_deal(v)});
    }
  }
  return s;
}

SwapSystem h_swap_system(const SwapDigraph& d) {
  SwapSystem s(d);
  for (VertexIndex v = 0; v < d.vertex_count(); ++v) s.set_underwater_rule(v, true);
  return s;
}

VertexPoset::VertexPoset(const SwapSystem& system, VertexIndex v)
    : owner_(v),
      full_in_(system.digraph().full_in_mask(v)),
      underwater_rule_(system.underwater_rule(v)) {
  const auto& d = system.digraph();
  std::unordered_map<Outcome, std::size_t, OutcomeHash> index;
  auto key = [&](const Outcome& o) {
    auto [it, fresh] = index.emplace(o, keys_.size());
    if (fresh) {
      keys_.push_back(o);
      jumps_.emplace_back();
    }
    return it->second;
  };
  auto link = [&](std::size_t from, std::size_t to) {
    if (from != to) jumps_[from].push_back(to);
  };
  no_deal_key_ = key(no_deal(v));
  link(no_deal_key_, key(full_deal(d, v)));
  for (const auto& gp : system.generators(v)) {
    const auto w = key(gp.worse);
    link(w, key(gp.better));
  }
  if (underwater_rule_) {
    for (std::size_t k = 0; k < keys_.size(); ++k) {
      if (keys_[k].in != full_in_ && keys_[k].out != 0) link(k, no_deal_key_);
    }
  }
  for (auto& j : jumps_) {
    std::sort(j.begin(), j.end());
    j.erase(std::unique(j.begin(), j.end()), j.end());
  }

  // Cycle search on keys; edges are jumps plus monotone steps between keys.
  const std::size_t n = keys_.size();
  std::vector<int> color(n, 0);
  std::vector<std::size_t> parent(n, n);
  auto successors = [&](std::size_t k) {
    std::vector<std::size_t> out = jumps_[k];
    for (std::size_t j = 0; j < n; ++j) {
      if (j != k && monotone_leq(keys_[k], keys_[j])) out.push_back(j);
    }
    return out;
  };
  for (std::size_t root = 0; root < n && cycle_.empty(); ++root) {
    if (color[root] != 0) continue;
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> stack;
    stack.emplace_back(root, successors(root));
    color[root] = 1;
    while (!stack.empty() && cycle_.empty()) {
      auto& [node, next] = stack.back();
      if (next.empty()) {
        color[node] = 2;
        stack.pop_back();
        continue;
      }
      const auto w = next.back();
      next.pop_back();
      if (color[w] == 1) {
        for (auto x = node; x != w; x = parent[x]) cycle_.push_back(keys_[x]);
        cycle_.push_back(keys_[w]);
        std::reverse(cycle_.begin(), cycle_.end());
      } else if (color[w] == 0) {
        color[w] = 1;
        parent[w] = node;
        const auto node_copy = w;
        stack.emplace_back(node_copy, successors(node_copy));
      }
    }
  }
}

UpperSet VertexPoset::upper_set(const Outcome& source) const {
  const std::size_t n = keys_.size();
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue;
  // Everything monotone-above a reached outcome is reached as well.
  auto reach_above = [&](const Outcome& o) {
    for (std::size_t m = 0; m < n; ++m) {
      if (!seen[m] && monotone_leq(o, keys_[m])) {
        seen[m] = true;
        queue.push_back(m);
      }
    }
  };
  reach_above(source);
  if (underwater_rule_ && source.in != full_in_ && source.out != 0) reach_above(keys_[no_deal_key_]);
  while (!queue.empty()) {
    const auto k = queue.front();
    queue.pop_front();
    for (auto j : jumps_[k]) {
      if (!seen[j]) reach_above(keys_[j]);
    }
  }
  std::vector<Outcome> anchors{source};
  for (std::size_t k = 0; k < n; ++k) {
    if (seen[k] && !monotone_leq(source, keys_[k])) anchors.push_back(keys_[k]);
  }
  std::vector<Outcome> minimal;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < anchors.size() && !dominated; ++j) {
      dominated = i != j && monotone_leq(anchors[j], anchors[i]);
    }
    if (!dominated) minimal.push_back(anchors[i]);
  }
  return UpperSet(std::move(minimal));
}

bool VertexPoset::leq(const Outcome& a, const Outcome& b) const {
  if (monotone_leq(a, b)) return true;
  return upper_set(a).contains(b);
}

Ordering VertexPoset::compare(const Outcome& a, const Outcome& b) const {
  if (a == b) return Ordering::kEqual;
  if (leq(a, b)) return Ordering::kLess;
  if (leq(b, a)) return Ordering::kGreater;
  return Ordering::kIncomparable;
}

PreferenceEngine::PreferenceEngine(const SwapSystem& system) : system_(&system) {
  const auto n = system.digraph().vertex_count();
  posets_.reserve(n);
  acceptable_.reserve(n);
  for (VertexIndex v = 0; v < n; ++v) {
    posets_.emplace_back(system, v);
    acceptable_.push_back(posets_.back().upper_set(no_deal(v)));
  }
}

Ordering PreferenceEngine::compare(const Outcome& a, const Outcome& b) const {
  if (a.owner != b.owner) throw ModelError("compare: outcomes belong to different vertices");
  return vertex(a.owner).compare(a, b);
}

std::vector<SystemViolation> validate_system(const SwapSystem& system, const DigraphLimits& limits) {
  std::vector<SystemViolation> out;
  const auto& d = system.digraph();
  for (auto& m : d.assumption_violations(limits)) out.push_back({"", std::move(m)});
  for (VertexIndex v = 0; v < d.vertex_count(); ++v) {
    VertexPoset p(system, v);
    if (p.cycle().empty()) continue;
    std::string chain;
    for (const auto& o : p.cycle()) chain += format_outcome(d, o) + " <= ";
    chain += format_outcome(d, p.cycle().front());
    out.push_back({d.id(v), "preferences are not antisymmetric: " + chain});
  }
  return out;
}

OutcomeRelation::OutcomeRelation(const SwapSystem& system, VertexIndex v, unsigned degree_cap) : owner_(v) {
  const auto& d = system.digraph();
  din_ = d.in_degree(v);
  dout_ = d.out_degree(v);
  if (din_ + dout_ > degree_cap) {
    throw ModelError("OutcomeRelation: vertex '" + d.id(v) + "' exceeds the enumeration cap");
  }
  const std::size_t n = std::size_t{1} << (din_ + dout_);
  adjacency_.assign(n, {});
  const Mask full_in = d.full_in_mask(v);
  for (std::size_t i = 0; i < n; ++i) {
    const Mask in = i & full_in;
    const Mask out = i >> din_;
    for (unsigned b = 0; b < din_; ++b) {
      if (!(in >> b & 1)) adjacency_[i].push_back(static_cast<std::uint32_t>(i | (std::size_t{1} << b)));
    }
    for (unsigned b = 0; b < dout_; ++b) {
      if (out >> b & 1) adjacency_[i].push_back(static_cast<std::uint32_t>(i & ~(std::size_t{1} << (din_ + b))));
    }
    if (system.underwater_rule(v) && in != full_in && out != 0) adjacency_[i].push_back(0);
  }
  adjacency_[0].push_back(static_cast<std::uint32_t>(index(full_deal(d, v))));
  for (const auto& gp : system.generators(v)) {
    adjacency_[index(gp.worse)].push_back(static_cast<std::uint32_t>(index(gp.better)));
  }
}

bool OutcomeRelation::leq(const Outcome& a, const Outcome& b) const {
  const auto target = index(b);
  std::vector<bool> seen(adjacency_.size(), false);
  std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(index(a))};
  seen[stack.back()] = true;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    if (x == target) return true;
    for (auto y : adjacency_[x]) {
      if (!seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  return false;
}

Ordering OutcomeRelation::compare(const Outcome& a, const Outcome& b) const {
  if (a == b) return Ordering::kEqual;
  if (leq(a, b)) return Ordering::kLess;
  if (leq(b, a)) return Ordering::kGreater;
  return Ordering::kIncomparable;
}

bool OutcomeRelation::is_acyclic() const {
  std::vector<std::size_t> indegree(adjacency_.size(), 0);
  for (const auto& succ : adjacency_) {
    for (auto y : succ) ++indegree[y];
  }
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < indegree.size(); ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    auto x = ready.back();
    ready.pop_back();
    ++removed;
    for (auto y : adjacency_[x]) {
      if (--indegree[y] == 0) ready.push_back(y);
    }
  }
  return removed == adjacency_.size();
}

std::vector<Outcome> OutcomeRelation::all_outcomes() const {
  std::vector<Outcome> out;
  out.reserve(adjacency_.size());
  const Mask in_mask = din_ >= 64 ? ~Mask{0} : (Mask{1} << din_) - 1;
  for (std::size_t i = 0; i < adjacency_.size(); ++i) out.push_back({owner_, i & in_mask, i >> din_});
  return out;
}

}  // namespace swapatomic
