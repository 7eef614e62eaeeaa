#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support.hpp"
#include "swapatomic/fixtures.hpp"
#include "swapatomic/graph_algorithms.hpp"

namespace sa = swapatomic;
namespace st = swapatomic::testing;

namespace {

using Ids = std::vector<std::vector<std::string>>;

Ids sccs(const sa::SwapDigraph& d, const sa::Subgraph& g) {
  return sa::component_ids(d, sa::strongly_connected_components(d, g));
}

// Components from mutual reachability, sorted the same way as the library.
std::vector<std::vector<sa::VertexIndex>> oracle_sccs(const sa::SwapDigraph& d, const sa::Subgraph& g) {
  const auto r = st::reachability(d, g);
  std::vector<std::vector<sa::VertexIndex>> out;
  std::vector<bool> done(d.vertex_count(), false);
  auto by_id = [&](sa::VertexIndex a, sa::VertexIndex b) { return d.id(a) < d.id(b); };
  std::vector<sa::VertexIndex> order = g.vertex_list();
  std::sort(order.begin(), order.end(), by_id);
  for (auto v : order) {
    if (done[v]) continue;
    std::vector<sa::VertexIndex> c;
    for (auto w : order) {
      if (r[v][w] && r[w][v]) {
        c.push_back(w);
        done[w] = true;
      }
    }
    out.push_back(c);
  }
  return out;
}

sa::SwapDigraph random_digraph(std::mt19937_64& rng, unsigned n) {
  std::vector<std::string> ids;
  for (unsigned i = 0; i < n; ++i) ids.push_back("n" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> arcs;
  std::bernoulli_distribution keep(0.35);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      if (i != j && keep(rng)) arcs.emplace_back(ids[i], ids[j]);
    }
  }
  sa::DigraphLimits relaxed;
  relaxed.require_assumptions = false;
  return sa::SwapDigraph::build(ids, arcs, relaxed);
}

}  // namespace

TEST(Scc, Examples) {
  const auto s1 = sa::fixture(1);
  EXPECT_EQ(sccs(s1.digraph(), sa::example1_cycle(s1)), (Ids{{"u", "v", "w"}}));

  const auto s3 = sa::fixture(3);
  EXPECT_EQ(sccs(s3.digraph(), sa::example4_g3(s3)), (Ids{{"t1", "t2"}, {"u1", "v1"}, {"u2", "v2"}}));

  const auto path = sa::arcs_by_name(s1, {{"u", "v"}}, false);
  EXPECT_EQ(sccs(s1.digraph(), path), (Ids{{"u"}, {"v"}}));
}

TEST(Scc, MatchesReachabilityOracle) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<unsigned> nv(1, 6);
  for (int t = 0; t < 200; ++t) {
    const auto d = random_digraph(rng, nv(rng));
    const std::size_t m = d.arc_count();
    // Every arc subset when small, otherwise a random sample of them.
    const std::uint64_t total = std::uint64_t{1} << m;
    const std::uint64_t step = total <= 4096 ? 1 : total / 4096;
    for (std::uint64_t bits = 0; bits < total; bits += step) {
      std::vector<sa::ArcIndex> arcs;
      for (sa::ArcIndex a = 0; a < m; ++a) {
        if (bits >> a & 1) arcs.push_back(a);
      }
      const auto g = sa::Subgraph::spanning(d, arcs);
      ASSERT_EQ(sa::strongly_connected_components(d, g).components, oracle_sccs(d, g));
    }
  }
}

TEST(Piecewise, Examples) {
  const auto s3 = sa::fixture(3);
  EXPECT_TRUE(sa::is_piecewise_strongly_connected(s3.digraph(), sa::example4_g3(s3)));

  const auto s1 = sa::fixture(1);
  const auto& d = s1.digraph();
  EXPECT_FALSE(sa::is_piecewise_strongly_connected(d, sa::arcs_by_name(s1, {{"u", "v"}, {"v", "u"}}, true)));
  EXPECT_TRUE(sa::is_piecewise_strongly_connected(d, sa::arcs_by_name(s1, {{"u", "v"}, {"v", "u"}}, false)));
  EXPECT_FALSE(sa::is_piecewise_strongly_connected(d, sa::arcs_by_name(s1, {{"u", "v"}}, false)));
  EXPECT_TRUE(sa::is_piecewise_strongly_connected(d, sa::Subgraph::full(d)));
}

TEST(Piecewise, FormulationsAgree) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<unsigned> nv(2, 6);
  for (int t = 0; t < 200; ++t) {
    const auto d = random_digraph(rng, nv(rng));
    sa::PiecewiseChecker checker(d);
    const std::size_t m = d.arc_count();
    const std::uint64_t total = std::uint64_t{1} << m;
    const std::uint64_t step = total <= 4096 ? 1 : total / 4096;
    for (std::uint64_t bits = 0; bits < total; bits += step) {
      std::vector<bool> flags(m);
      std::vector<sa::ArcIndex> arcs;
      for (sa::ArcIndex a = 0; a < m; ++a) {
        flags[a] = bits >> a & 1;
        if (flags[a]) arcs.push_back(a);
      }
      const auto g = sa::Subgraph::spanning(d, arcs);
      const auto r = st::reachability(d, g);
      std::vector<unsigned> din(d.vertex_count()), dout(d.vertex_count());
      bool same_scc = true;
      for (auto a : arcs) {
        const auto& e = d.arc(a);
        ++dout[e.from];
        ++din[e.to];
        same_scc = same_scc && r[e.to][e.from];
      }
      bool no_isolated = true, in_and_out = true;
      for (sa::VertexIndex v = 0; v < d.vertex_count(); ++v) {
        no_isolated = no_isolated && din[v] + dout[v] > 0;
        in_and_out = in_and_out && din[v] > 0 && dout[v] > 0;
      }
      const bool def = no_isolated && same_scc;
      ASSERT_EQ(def, in_and_out && same_scc);
      ASSERT_EQ(sa::is_piecewise_strongly_connected(d, g), def);
      ASSERT_EQ(checker.check(flags), def);
    }
  }
}

TEST(Weak, Examples) {
  const auto s3 = sa::fixture(3);
  EXPECT_EQ(sa::weakly_connected_components(s3.digraph(), sa::Subgraph::full(s3.digraph())).components.size(), 1u);

  const auto d = sa::SwapDigraph::build({"a", "b", "c", "e"}, {{"a", "b"}, {"b", "a"}, {"c", "e"}, {"e", "c"}},
                                        {0, false});
  EXPECT_EQ(sa::component_ids(d, sa::weakly_connected_components(d, sa::Subgraph::full(d))),
            (Ids{{"a", "b"}, {"c", "e"}}));

  const auto two = sa::SwapDigraph::build({"u", "v"}, {{"u", "v"}, {"v", "u"}});
  EXPECT_EQ(sa::component_ids(two, sa::weakly_connected_components(two, sa::Subgraph::spanning(two, {}))),
            (Ids{{"u"}, {"v"}}));
}
