#include "swapatomic/fixtures.hpp"

#include <algorithm>

namespace swapatomic {

namespace {

Outcome resolve(const SwapDigraph& d, const std::string& owner, const NamedOutcome& o) {
  const auto v = d.index_of(owner);
  if (o.deal) return full_deal(d, v);
  if (o.no_deal) return no_deal(v);
  return make_outcome(d, owner, o.in, o.out);
}

NamedOutcome pay(std::vector<std::string> in, std::vector<std::string> out) { return {std::move(in), std::move(out)}; }

SystemSpec s1() {
  SystemSpec s;
  s.vertices = {"u", "v", "w"};
  s.arcs = {{"u", "v"}, {"v", "u"}, {"u", "w"}, {"w", "u"}, {"v", "w"}, {"w", "v"}};
  s.generators = {
      {"u", kDealToken, pay({"v"}, {"v"})},
      {"u", pay({"v"}, {"v"}), pay({"v"}, {"w"})},
      {"v", kDealToken, pay({"u"}, {"u"})},
      {"v", pay({"u"}, {"u"}), pay({"w"}, {"u"})},
      {"w", kDealToken, pay({"u"}, {"v"})},
  };
  return s;
}

SystemSpec s2() {
  SystemSpec s;
  s.vertices = {"u", "v", "x", "y"};
  s.arcs = {{"u", "x"}, {"x", "v"}, {"u", "v"}, {"v", "u"}, {"v", "y"}, {"y", "u"}};
  s.generators = {
      {"u", kDealToken, pay({"v"}, {"v"})},
      {"v", kDealToken, pay({"u"}, {"u"})},
  };
  return s;
}

SystemSpec s3() {
  SystemSpec s;
  s.vertices = {"u1", "u2", "v1", "v2", "t1", "t2"};
  for (int i = 1; i <= 2; ++i) {
    const int j = 3 - i;
    const auto u = "u" + std::to_string(i), uj = "u" + std::to_string(j);
    const auto v = "v" + std::to_string(i), vj = "v" + std::to_string(j);
    const auto t = "t" + std::to_string(i), tj = "t" + std::to_string(j);
    s.arcs.insert(s.arcs.end(), {{u, v}, {v, u}, {u, uj}, {v, t}, {t, vj}, {t, tj}, {v, vj}});
  }
  for (int i = 1; i <= 2; ++i) {
    const int j = 3 - i;
    const auto u = "u" + std::to_string(i), uj = "u" + std::to_string(j);
    const auto v = "v" + std::to_string(i), vj = "v" + std::to_string(j);
    const auto t = "t" + std::to_string(i), tj = "t" + std::to_string(j);
    s.generators.push_back({u, kDealToken, pay({v}, {v})});
    s.generators.push_back({u, kDealToken, pay({uj}, {uj})});
    s.generators.push_back({v, kDealToken, pay({u}, {u})});
    s.generators.push_back({v, kDealToken, pay({tj}, {t})});
    s.generators.push_back({v, pay({tj}, {t}), pay({vj}, {vj})});
    s.generators.push_back({t, kDealToken, pay({v}, {vj})});
    s.generators.push_back({t, kDealToken, pay({tj}, {tj})});
  }
  return s;
}

SystemSpec s4() {
  SystemSpec s = s3();
  std::erase_if(s.generators, [](const NamedGenerator& g) {
    return g.owner[0] == 't' && g.worse.deal && g.better.in.size() == 1 && g.better.in[0][0] == 't';
  });
  return s;
}

SystemSpec s5() {
  SystemSpec s = s3();
  s.vertices.push_back("s1");
  s.arcs.insert(s.arcs.end(), {{"u1", "s1"}, {"u2", "s1"}, {"s1", "t1"}});
  return s;
}

}  // namespace

SwapSystem SystemSpec::build(const DigraphLimits& limits) const {
  SwapSystem system(SwapDigraph::build(vertices, arcs, limits));
  const auto& d = system.digraph();
  for (const auto& g : generators) system.add_generator({resolve(d, g.owner, g.worse), resolve(d, g.owner, g.better)});
  for (const auto& h : h_vertices) system.set_underwater_rule(d.index_of(h), true);
  return system;
}

SystemSpec fixture_spec(int index) {
  switch (index) {
    case 1: return s1();
    case 2: return s2();
    case 3: return s3();
    case 4: return s4();
    case 5: return s5();
    default: throw ModelError("there are five fixtures, numbered 1 to 5");
  }
}

SwapSystem fixture(int index) { return fixture_spec(index).build(); }

SwapSystem figure4_h_swap() {
  auto s = s2();
  s.generators.clear();
  s.h_vertices = s.vertices;
  return s.build();
}

Subgraph arcs_by_name(const SwapSystem& s, const std::vector<std::pair<std::string, std::string>>& arcs,
                      bool spanning) {
  const auto& d = s.digraph();
  std::vector<ArcIndex> list;
  for (const auto& [from, to] : arcs) {
    auto a = d.find_arc(d.index_of(from), d.index_of(to));
    if (!a) throw ModelError("no arc (" + from + "," + to + ")");
    list.push_back(*a);
  }
  return spanning ? Subgraph::spanning(d, list) : Subgraph::from_arcs(d, list);
}

Subgraph example1_cycle(const SwapSystem& s1) {
  return arcs_by_name(s1, {{"u", "w"}, {"w", "v"}, {"v", "u"}}, true);
}

Subgraph example4_g2(const SwapSystem& s3) {
  return arcs_by_name(
      s3, {{"u1", "u2"}, {"u2", "u1"}, {"v1", "t1"}, {"v2", "t2"}, {"t1", "v2"}, {"t2", "v1"}}, true);
}

Subgraph example4_g3(const SwapSystem& s3) {
  return arcs_by_name(
      s3, {{"u1", "v1"}, {"v1", "u1"}, {"u2", "v2"}, {"v2", "u2"}, {"t1", "t2"}, {"t2", "t1"}}, true);
}

Subgraph example4_h1(const SwapSystem& s3) { return arcs_by_name(s3, {{"v1", "v2"}, {"v2", "v1"}}, false); }

}  // namespace swapatomic
