#include <gtest/gtest.h>

#include <random>

#include "json.hpp"
#include "support.hpp"
#include "swapatomic/atomicity.hpp"
#include "swapatomic/fixtures.hpp"
#include "swapatomic/protocol.hpp"

namespace sa = swapatomic;
namespace st = swapatomic::testing;

namespace {

sa::SwapSystem four_cycle() {
  return sa::h_swap_system(sa::SwapDigraph::build({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}}));
}

std::size_t triggered_count(const sa::SimReport& r) {
  std::size_t n = 0;
  for (bool t : r.triggered) n += t ? 1 : 0;
  return n;
}

std::vector<sa::Strategy> with(const sa::SwapDigraph& d, const std::string& id, sa::Behavior b) {
  auto s = sa::all_honest(d);
  s[d.index_of(id)].behavior = b;
  return s;
}

// A report with exactly the given arcs triggered and everyone acceptable.
sa::SimReport synthetic(const sa::SwapDigraph& d, const std::vector<sa::ArcIndex>& triggered) {
  sa::SimReport r;
  r.g = sa::Subgraph::full(d);
  r.strategies = sa::all_honest(d);
  r.triggered.assign(d.arc_count(), false);
  for (auto a : triggered) r.triggered[a] = true;
  r.acceptable.assign(d.vertex_count(), true);
  return r;
}

}  // namespace

TEST(Digest, OwnerTaggedSha256) {
  EXPECT_EQ(sa::to_hex(sa::sha256_owner_tagged("u", {1, 2, 3})),
            "311a8e155c35408c0b0d4aa9be66c51a2693e0f8e6f878f586a346680521f660");
  EXPECT_NE(sa::sha256_owner_tagged("u", {1}), sa::sha256_owner_tagged("v", {1}));
}

TEST(Simulate, FourPartyHSwapAllHonest) {
  const auto s = sa::figure4_h_swap();
  const auto& d = s.digraph();
  const auto r = sa::run_protocol(s, sa::Subgraph::full(d), sa::all_honest(d));
  EXPECT_EQ(triggered_count(r), 6u);
  for (sa::VertexIndex v = 0; v < d.vertex_count(); ++v) {
    EXPECT_EQ(r.outcomes[v], sa::full_deal(d, v));
    EXPECT_TRUE(r.acceptable[v]);
  }
  ASSERT_EQ(r.contracts.size(), 6u);
  for (const auto& c : r.contracts) {
    EXPECT_TRUE(c.triggered);
    EXPECT_EQ(c.created_round, 1);
    for (const auto& l : c.locks) EXPECT_EQ(l.state, sa::LockState::kUnlocked);
  }
}

TEST(Simulate, Example1CycleAllHonest) {
  const auto s = sa::fixture(1);
  const auto& d = s.digraph();
  const auto g2 = sa::example1_cycle(s);
  const auto r = sa::run_protocol(s, g2, sa::all_honest(d));
  EXPECT_EQ(r.triggered, g2.arc_flags());
  EXPECT_EQ(sa::format_outcome(d, r.outcomes[d.index_of("u")]), "<v|w>");
  EXPECT_EQ(sa::format_outcome(d, r.outcomes[d.index_of("v")]), "<w|u>");
  EXPECT_EQ(sa::format_outcome(d, r.outcomes[d.index_of("w")]), "<u|v>");
  const sa::PreferenceEngine engine(s);
  for (sa::VertexIndex v = 0; v < 3; ++v) {
    EXPECT_EQ(engine.compare(sa::full_deal(d, v), r.outcomes[v]), sa::Ordering::kLess);
    EXPECT_TRUE(r.acceptable[v]);
  }
}

TEST(Simulate, Example1CycleWithSilentW) {
  const auto s = sa::fixture(1);
  const auto& d = s.digraph();
  const auto r = sa::run_protocol(s, sa::example1_cycle(s), with(d, "w", sa::Behavior::kSilent));
  EXPECT_EQ(triggered_count(r), 0u);
  for (sa::VertexIndex v = 0; v < 3; ++v) {
    EXPECT_EQ(r.outcomes[v], sa::no_deal(v));
    EXPECT_TRUE(r.acceptable[v]);
  }
  // Locks on the two created contracts time out.
  bool expired = false;
  for (const auto& e : r.trace) expired = expired || e.kind == sa::SimEvent::Kind::kExpire;
  EXPECT_TRUE(expired);
}

TEST(Simulate, HLivenessOnEveryStrongSubgraph) {
  for (int i = 1; i <= 5; ++i) {
    const auto s = sa::fixture(i);
    const auto& d = s.digraph();
    const sa::PreferenceEngine engine(s);
    std::vector<sa::Subgraph> gs = {sa::Subgraph::full(d)};
    if (const auto v = sa::decide_atomic(s); v.witness) gs.push_back(*v.witness);
    for (const auto& g : gs) {
      const auto r = sa::run_protocol(engine, g, sa::all_honest(d));
      EXPECT_EQ(r.triggered, g.arc_flags()) << "s" << i;
      for (auto v : g.vertex_list()) EXPECT_EQ(r.outcomes[v], sa::deal_outcome(d, g, v));
    }
  }
}

TEST(Simulate, DelayAndStoppingVariantsStillComplete) {
  const auto s = sa::figure4_h_swap();
  const auto& d = s.digraph();
  const auto full = sa::Subgraph::full(d);
  sa::SimConfig slow;
  slow.delta = 3;
  const auto a = sa::run_protocol(s, full, sa::all_honest(d));
  const auto b = sa::run_protocol(s, full, sa::all_honest(d), slow);
  EXPECT_EQ(triggered_count(b), 6u);
  EXPECT_GT(b.rounds, a.rounds);
  sa::SimConfig stop;
  stop.keep_propagating = false;
  EXPECT_EQ(triggered_count(sa::run_protocol(s, full, sa::all_honest(d), stop)), 6u);
}

TEST(Simulate, CustomDigest) {
  const auto s = sa::figure4_h_swap();
  const auto& d = s.digraph();
  sa::SimConfig cfg;
  cfg.digest = [](const std::string& owner, const sa::Bytes& value) {
    sa::Bytes out(owner.begin(), owner.end());
    out.insert(out.end(), value.begin(), value.end());
    return out;
  };
  EXPECT_EQ(triggered_count(sa::run_protocol(s, sa::Subgraph::full(d), sa::all_honest(d), cfg)), 6u);
}

TEST(Simulate, Deterministic) {
  const auto s = sa::fixture(3);
  const auto& d = s.digraph();
  auto strategies = sa::all_honest(d);
  strategies[d.index_of("v1")].behavior = sa::Behavior::kRandom;
  strategies[d.index_of("t2")].behavior = sa::Behavior::kRandom;
  sa::SimConfig cfg;
  cfg.seed = 77;
  const auto full = sa::Subgraph::full(d);
  const auto a = sa::run_protocol(s, full, strategies, cfg);
  const auto b = sa::run_protocol(s, full, strategies, cfg);
  EXPECT_EQ(sa::serialize_sim_report(s, a), sa::serialize_sim_report(s, b));
}

TEST(Simulate, InputErrors) {
  const auto s = sa::fixture(1);
  const auto& d = s.digraph();
  const auto full = sa::Subgraph::full(d);
  EXPECT_THROW(sa::run_protocol(s, full, std::vector<sa::Strategy>(2)), sa::ModelError);
  sa::SimConfig bad;
  bad.delta = 0;
  EXPECT_THROW(sa::run_protocol(s, full, sa::all_honest(d), bad), sa::ModelError);
  EXPECT_THROW(sa::run_protocol(s, sa::arcs_by_name(s, {{"u", "v"}}, false), sa::all_honest(d)), sa::ModelError);

  auto scripted = sa::all_honest(d);
  scripted[0].behavior = sa::Behavior::kScripted;
  scripted[0].script = {{0, sa::ScriptedAction::Kind::kCreate, 1, 0}};
  EXPECT_THROW(sa::run_protocol(s, full, scripted), sa::ModelError);
  scripted[0].script = {{1, sa::ScriptedAction::Kind::kCreate, 1, 0}};
  EXPECT_THROW(sa::run_protocol(s, sa::example1_cycle(s), scripted), sa::ModelError) << "(u,v) is not in G2";
}

TEST(Simulate, ScriptedPostOfUnknownSecretIsRejected) {
  const auto s = four_cycle();
  const auto& d = s.digraph();
  auto strategies = sa::all_honest(d);
  const auto b = d.index_of("b");
  strategies[b].behavior = sa::Behavior::kScripted;
  strategies[b].script = {{1, sa::ScriptedAction::Kind::kCreate, d.index_of("c"), 0},
                          {1, sa::ScriptedAction::Kind::kPost, d.index_of("a"), d.index_of("d")}};
  const auto r = sa::run_protocol(s, sa::Subgraph::full(d), strategies);
  bool rejected = false;
  for (const auto& e : r.trace) rejected = rejected || (e.kind == sa::SimEvent::Kind::kReject && e.actor == b);
  EXPECT_TRUE(rejected);
  for (sa::VertexIndex v = 0; v < 4; ++v) {
    if (r.honest(v)) {
      EXPECT_TRUE(r.acceptable[v]);
    }
  }
}

TEST(Simulate, SilentPartyOnFourCycleKeepsPrefixes) {
  const auto s = four_cycle();
  const auto& d = s.digraph();
  const auto full = sa::Subgraph::full(d);
  for (const auto* id : {"a", "b", "c", "d"}) {
    const auto r = sa::run_protocol(s, full, with(d, id, sa::Behavior::kSilent));
    for (const auto& path : st::simple_paths(d, full)) {
      if (sa::prefix_precondition(r, path)) {
        EXPECT_TRUE(sa::check_triggered_prefix(d, r, path));
      }
    }
    for (sa::VertexIndex v = 0; v < 4; ++v) {
      if (r.honest(v)) {
        EXPECT_TRUE(r.acceptable[v]);
        EXPECT_TRUE(sa::check_outgoing_guard(d, r, v));
      }
    }
  }
}

TEST(Simulate, AllHonestInvariantsHold) {
  const auto s = four_cycle();
  const auto& d = s.digraph();
  const auto r = sa::run_protocol(s, sa::Subgraph::full(d), sa::all_honest(d));
  for (const auto& path : st::simple_paths(d, r.g)) EXPECT_TRUE(sa::check_triggered_prefix(d, r, path));
  for (sa::VertexIndex v = 0; v < 4; ++v) EXPECT_TRUE(sa::check_outgoing_guard(d, r, v));
}

TEST(Invariants, NegativeControls) {
  const auto s = four_cycle();
  const auto& d = s.digraph();
  const auto ab = *d.find_arc(d.index_of("a"), d.index_of("b"));
  const auto bc = *d.find_arc(d.index_of("b"), d.index_of("c"));
  const auto cd = *d.find_arc(d.index_of("c"), d.index_of("d"));
  const std::vector<sa::VertexIndex> path = {d.index_of("a"), d.index_of("b"), d.index_of("c"), d.index_of("d")};

  const auto gap = synthetic(d, {ab, cd});
  EXPECT_FALSE(sa::check_triggered_prefix(d, gap, path));
  EXPECT_TRUE(sa::check_triggered_prefix(d, synthetic(d, {ab, bc}), path));
  EXPECT_TRUE(sa::check_triggered_prefix(d, synthetic(d, {}), path));

  // c paid d without being paid by b.
  EXPECT_FALSE(sa::check_outgoing_guard(d, gap, d.index_of("c")));
  EXPECT_FALSE(sa::check_outgoing_guard(d, gap, d.index_of("a")));
  EXPECT_TRUE(sa::check_outgoing_guard(d, synthetic(d, {ab}), d.index_of("b")));

  auto unhappy = synthetic(d, {});
  unhappy.acceptable[d.index_of("b")] = false;
  EXPECT_FALSE(sa::prefix_precondition(unhappy, path));
  EXPECT_TRUE(sa::prefix_precondition(unhappy, {d.index_of("b"), d.index_of("c")}));
}

TEST(Simulate, RandomAdversariesOnFixtures) {
  std::mt19937_64 rng(8);
  std::bernoulli_distribution deviate(0.3);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int i = 1; i <= 5; ++i) {
    const auto s = sa::fixture(i);
    const auto& d = s.digraph();
    const sa::PreferenceEngine engine(s);
    const auto g = sa::Subgraph::full(d);
    for (int run = 0; run < 100; ++run) {
      auto strategies = sa::all_honest(d);
      for (auto& st : strategies) {
        if (!deviate(rng)) continue;
        st.behavior = kind(rng) == 0 ? sa::Behavior::kSilent : sa::Behavior::kRandom;
      }
      sa::SimConfig cfg;
      cfg.seed = rng();
      const auto r = sa::run_protocol(engine, g, strategies, cfg);
      for (sa::VertexIndex v = 0; v < d.vertex_count(); ++v) {
        if (!r.honest(v)) continue;
        ASSERT_TRUE(sa::check_outgoing_guard(d, r, v)) << "s" << i << " seed " << cfg.seed;
        ASSERT_TRUE(r.acceptable[v]) << "s" << i << " seed " << cfg.seed;
      }
    }
  }
}

TEST(StrategySpec, Parse) {
  const auto d = sa::fixture(1).digraph();
  const auto s = sa::parse_strategy_spec(d, "u=silent,w=random:0.25");
  EXPECT_EQ(s[0].behavior, sa::Behavior::kSilent);
  EXPECT_EQ(s[1].behavior, sa::Behavior::kHonest);
  EXPECT_EQ(s[2].behavior, sa::Behavior::kRandom);
  EXPECT_DOUBLE_EQ(s[2].activity, 0.25);
  EXPECT_EQ(sa::parse_strategy_spec(d, "all-honest")[0].behavior, sa::Behavior::kHonest);
  for (const auto* bad : {"u", "q=honest", "u=sneaky", "u=random:2", "u=random:x"}) {
    EXPECT_THROW(sa::parse_strategy_spec(d, bad), sa::ParseError) << bad;
  }
}

TEST(Report, SerializeAndRender) {
  const auto s = sa::fixture(1);
  const auto& d = s.digraph();
  const auto r = sa::run_protocol(s, sa::example1_cycle(s), sa::all_honest(d));
  const auto doc = nlohmann::json::parse(sa::serialize_sim_report(s, r));
  EXPECT_EQ(doc["rounds"], r.rounds);
  EXPECT_EQ(doc["subgraph_arcs"].size(), 3u);
  EXPECT_EQ(doc["parties"].size(), 3u);
  EXPECT_EQ(doc["trace"].size(), r.trace.size());
  const auto text = sa::render_sim_report(s, r);
  EXPECT_NE(text.find("<v|w>"), std::string::npos);
}

TEST(Coalition, FourPartyPairDeviates) {
  const auto s = sa::fixture(2);
  const auto& d = s.digraph();
  const auto u = d.index_of("u"), v = d.index_of("v");
  const auto r = sa::coalition_deviation_demo(s, sa::Subgraph::full(d), {u, v},
                                              {*d.find_arc(u, v), *d.find_arc(v, u)});
  EXPECT_TRUE(r.strict_improvement);
  EXPECT_TRUE(r.all_strictly_better);
  ASSERT_EQ(r.members.size(), 2u);
  for (const auto& m : r.members) {
    EXPECT_EQ(m.baseline, sa::full_deal(d, m.vertex));
    EXPECT_EQ(m.vs_deal, sa::Ordering::kLess);
    EXPECT_EQ(m.vs_baseline, sa::Ordering::kLess);
  }
}

TEST(Coalition, Example1CycleResists) {
  const auto s = sa::fixture(1);
  const auto& d = s.digraph();
  const auto reports = sa::coalition_deviation_search(s, sa::example1_cycle(s), {d.index_of("u"), d.index_of("v")});
  EXPECT_EQ(reports.size(), 4u);
  for (const auto& r : reports) EXPECT_FALSE(r.strict_improvement);
}

TEST(Coalition, EdgeCases) {
  const auto s = sa::fixture(2);
  const auto& d = s.digraph();
  const auto full = sa::Subgraph::full(d);
  EXPECT_TRUE(sa::coalition_deviation_demo(s, full, {}, {}).members.empty());
  EXPECT_THROW(sa::coalition_deviation_demo(s, full, {d.index_of("u")}, {*d.find_arc(d.index_of("u"), d.index_of("v"))}),
               sa::ModelError);
}
