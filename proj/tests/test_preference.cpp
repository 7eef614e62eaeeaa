#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "swapatomic/fixtures.hpp"
#include "swapatomic/preference.hpp"

namespace sa = swapatomic;
namespace st = swapatomic::testing;

namespace {

// v receives from a and b and pays c.
sa::SwapDigraph two_in_one_out() {
  return sa::SwapDigraph::build({"a", "b", "c", "v"},
                                {{"a", "v"}, {"b", "v"}, {"v", "c"}, {"c", "a"}, {"c", "b"}});
}

std::vector<sa::SwapSystem> law_systems() {
  std::vector<sa::SwapSystem> out;
  for (int i = 1; i <= 5; ++i) {
    out.push_back(sa::fixture(i));
    out.push_back(sa::h_closure(sa::fixture(i).digraph()));
  }
  out.push_back(sa::figure4_h_swap());
  return out;
}

sa::Ordering from_matrix(const std::vector<std::vector<bool>>& m, std::size_t i, std::size_t j) {
  if (i == j) return sa::Ordering::kEqual;
  if (m[i][j]) return sa::Ordering::kLess;
  if (m[j][i]) return sa::Ordering::kGreater;
  return sa::Ordering::kIncomparable;
}

// Engine, explicit relation and naive closure agree on every pair of v's outcomes.
void expect_all_pairs_agree(const sa::SwapSystem& s, sa::VertexIndex v) {
  const auto& d = s.digraph();
  const sa::PreferenceEngine engine(s);
  const sa::OutcomeRelation rel(s, v);
  const auto naive = st::naive_leq_matrix(s, v);
  const std::size_t n = naive.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = st::outcome_at(d, v, i);
    for (std::size_t j = 0; j < n; ++j) {
      const auto b = st::outcome_at(d, v, j);
      const auto want = from_matrix(naive, i, j);
      ASSERT_EQ(engine.compare(a, b), want) << d.id(v) << " " << sa::format_outcome(d, a) << " vs "
                                            << sa::format_outcome(d, b);
      ASSERT_EQ(rel.compare(a, b), want);
    }
  }
}

}  // namespace

TEST(GenericLeq, Examples) {
  const auto d = sa::fixture(3).digraph();
  const auto v = d.index_of("v1");
  // Bits 0 and 1 of each side stand for a, d (in) and b, c (out).
  EXPECT_TRUE(sa::generic_leq(d, {v, 0b01, 0b11}, {v, 0b11, 0b01}));
  EXPECT_TRUE(sa::generic_leq(d, sa::no_deal(v), sa::full_deal(d, v)));
  EXPECT_FALSE(sa::generic_leq(d, {v, 0b00, 0b01}, {v, 0b01, 0b11}));
  EXPECT_FALSE(sa::generic_leq(d, sa::full_deal(d, v), sa::no_deal(v)));
}

TEST(Compare, Example1Chain) {
  const auto s = sa::fixture(1);
  const auto& d = s.digraph();
  const sa::PreferenceEngine engine(s);
  const auto u = d.index_of("u");
  const auto mid = sa::make_outcome(d, "u", {"v"}, {"v"});
  const auto top = sa::make_outcome(d, "u", {"v"}, {"w"});
  EXPECT_EQ(engine.compare(sa::full_deal(d, u), mid), sa::Ordering::kLess);
  EXPECT_EQ(engine.compare(mid, top), sa::Ordering::kLess);
  EXPECT_EQ(engine.compare(sa::full_deal(d, u), top), sa::Ordering::kLess);
  EXPECT_EQ(engine.compare(top, sa::full_deal(d, u)), sa::Ordering::kGreater);
  EXPECT_EQ(engine.compare(top, top), sa::Ordering::kEqual);
}

TEST(Compare, GenericOnlyIncomparable) {
  const sa::SwapSystem s(two_in_one_out());
  const auto& d = s.digraph();
  const sa::PreferenceEngine engine(s);
  const auto a = sa::make_outcome(d, "v", {"a"}, {"c"});
  const auto b = sa::make_outcome(d, "v", {"b"}, {});
  EXPECT_EQ(engine.compare(a, b), sa::Ordering::kIncomparable);
  // With the underwater pairs the first falls below NoDeal, hence below the second.
  const auto h = sa::h_closure(d);
  EXPECT_EQ(sa::PreferenceEngine(h).compare(a, b), sa::Ordering::kLess);
}

TEST(Compare, OwnershipMismatch) {
  const auto s = sa::fixture(1);
  const sa::PreferenceEngine engine(s);
  EXPECT_THROW(engine.compare(sa::no_deal(0), sa::no_deal(1)), sa::ModelError);
}

TEST(Acceptable, Examples) {
  const auto h = sa::h_closure(two_in_one_out());
  const auto& d = h.digraph();
  const sa::PreferenceEngine engine(h);
  const auto v = d.index_of("v");
  EXPECT_TRUE(engine.is_acceptable(sa::no_deal(v)));
  EXPECT_TRUE(engine.is_acceptable({v, d.full_in_mask(v), 0}));
  EXPECT_FALSE(engine.is_acceptable(sa::make_outcome(d, "v", {"a"}, {"c"})));
  EXPECT_FALSE(engine.is_acceptable(sa::make_outcome(d, "v", {}, {"c"})));
  EXPECT_TRUE(engine.is_acceptable(sa::full_deal(d, v)));
}

TEST(HClosure, GeneratorCounts) {
  const auto h = sa::h_closure(two_in_one_out());
  const auto& d = h.digraph();
  EXPECT_EQ(h.generators(d.index_of("a")).size(), 1u);
  EXPECT_EQ(h.generators(d.index_of("v")).size(), 3u);
  for (const auto& p : h.generators(d.index_of("v"))) {
    EXPECT_EQ(p.better, sa::no_deal(d.index_of("v")));
    EXPECT_TRUE(sa::is_underwater(d, p.worse));
  }
  EXPECT_TRUE(sa::validate_system(h).empty());
}

TEST(HClosure, DegreeCap) { EXPECT_THROW(sa::h_closure(sa::fixture(3).digraph(), 5), sa::ModelError); }

TEST(HClosure, RuleMatchesExplicitPairs) {
  for (const auto& d : {two_in_one_out(), sa::fixture(1).digraph(), sa::fixture(3).digraph(),
                        sa::figure4_h_swap().digraph()}) {
    const auto explicit_pairs = sa::h_closure(d);
    const auto rule = sa::h_swap_system(d);
    const sa::PreferenceEngine e1(explicit_pairs), e2(rule);
    for (sa::VertexIndex v = 0; v < d.vertex_count(); ++v) {
      const sa::OutcomeRelation rel(explicit_pairs, v);
      for (const auto& a : rel.all_outcomes()) {
        ASSERT_EQ(e1.is_acceptable(a), e2.is_acceptable(a));
        for (const auto& b : rel.all_outcomes()) ASSERT_EQ(e1.compare(a, b), e2.compare(a, b));
      }
    }
  }
}

TEST(Classify, Examples) {
  const auto d = two_in_one_out();
  const auto v = d.index_of("v");
  EXPECT_EQ(sa::classify_outcome(d, {v, d.full_in_mask(v), 0}), sa::kClassDiscount | sa::kClassFreeRide);
  EXPECT_EQ(sa::classify_outcome(d, sa::full_deal(d, v)), sa::kClassDeal);
  EXPECT_EQ(sa::classify_outcome(d, sa::no_deal(v)), sa::kClassNoDeal);
  EXPECT_EQ(sa::classify_outcome(d, sa::make_outcome(d, "v", {"a"}, {"c"})), sa::kClassUnderwater);
  EXPECT_EQ(sa::class_names(sa::kClassDiscount | sa::kClassFreeRide),
            (std::vector<std::string>{"DISCOUNT", "FREERIDE"}));
}

TEST(Classify, PartitionIdentity) {
  for (const auto& s : law_systems()) {
    const auto& d = s.digraph();
    for (sa::VertexIndex v = 0; v < d.vertex_count(); ++v) {
      if (d.in_degree(v) + d.out_degree(v) > 6) continue;
      const sa::OutcomeRelation rel(s, v);
      for (const auto& o : rel.all_outcomes()) {
        const auto f = sa::classify_outcome(d, o);
        ASSERT_NE(f, 0u) << "every outcome is in some class";
        const bool both = (f & sa::kClassDiscount) && (f & sa::kClassFreeRide);
        ASSERT_EQ(both, o.in == d.full_in_mask(v) && o.out == 0);
        if (f & sa::kClassUnderwater) {
          ASSERT_EQ(f, sa::kClassUnderwater);
        }
        if (f & (sa::kClassDeal | sa::kClassNoDeal)) {
          ASSERT_EQ(f & ~(sa::kClassDeal | sa::kClassNoDeal), 0u);
        }
      }
    }
  }
}

TEST(Classify, HClosureAcceptableIffNotUnderwater) {
  for (int i = 1; i <= 5; ++i) {
    const auto h = sa::h_closure(sa::fixture(i).digraph());
    const auto& d = h.digraph();
    const sa::PreferenceEngine engine(h);
    for (sa::VertexIndex v = 0; v < d.vertex_count(); ++v) {
      if (d.in_degree(v) + d.out_degree(v) > 6) continue;
      for (const auto& o : sa::OutcomeRelation(h, v).all_outcomes()) {
        ASSERT_EQ(engine.is_acceptable(o), !(sa::classify_outcome(d, o) & sa::kClassUnderwater));
      }
    }
  }
}

TEST(Validate, FixturesAreValid) {
  for (int i = 1; i <= 5; ++i) EXPECT_TRUE(sa::validate_system(sa::fixture(i)).empty()) << "s" << i;
  EXPECT_TRUE(sa::validate_system(sa::figure4_h_swap()).empty());
}

TEST(Validate, TwoCycle) {
  sa::SwapSystem s(sa::SwapDigraph::build({"u", "v"}, {{"u", "v"}, {"v", "u"}}));
  const auto& d = s.digraph();
  const auto a = sa::make_outcome(d, "u", {"v"}, {});
  s.add_generator({sa::no_deal(0), a});
  s.add_generator({a, sa::no_deal(0)});
  const auto violations = sa::validate_system(s);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].vertex, "u");
}

TEST(Validate, MixedGenericGeneratorCycle) {
  sa::SwapSystem s(sa::SwapDigraph::build({"u", "v"}, {{"u", "v"}, {"v", "u"}}));
  const auto& d = s.digraph();
  // <v|> is monotonically above <|v>; the pair claims the reverse.
  s.add_generator({sa::make_outcome(d, "u", {"v"}, {}), sa::make_outcome(d, "u", {}, {"v"})});
  const auto violations = sa::validate_system(s);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].vertex, "u");
  EXPECT_FALSE(sa::VertexPoset(s, 0).cycle().empty());
  EXPECT_FALSE(sa::OutcomeRelation(s, 0).is_acyclic());
}

TEST(PosetLaws, FixturesAgainstNaiveClosure) {
  for (const auto& s : law_systems()) {
    const auto& d = s.digraph();
    for (sa::VertexIndex v = 0; v < d.vertex_count(); ++v) {
      if (d.in_degree(v) + d.out_degree(v) <= 6) expect_all_pairs_agree(s, v);
    }
  }
}

TEST(PosetLaws, RandomSystemsAgainstNaiveClosure) {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 150; ++i) {
    const auto s = st::random_system(rng);
    for (sa::VertexIndex v = 0; v < s.digraph().vertex_count(); ++v) expect_all_pairs_agree(s, v);
  }
}

TEST(PosetLaws, RandomTriplesOnLargeVertices) {
  std::mt19937_64 rng(7);
  for (const auto& s : law_systems()) {
    const auto& d = s.digraph();
    const sa::PreferenceEngine engine(s);
    for (sa::VertexIndex v = 0; v < d.vertex_count(); ++v) {
      if (d.in_degree(v) + d.out_degree(v) <= 6) continue;
      const sa::OutcomeRelation rel(s, v);
      const auto all = rel.all_outcomes();
      std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
      for (int t = 0; t < 2000; ++t) {
        const auto &a = all[pick(rng)], &b = all[pick(rng)], &c = all[pick(rng)];
        const auto ab = engine.compare(a, b);
        ASSERT_EQ(ab, rel.compare(a, b));
        if (sa::generic_leq(d, a, b)) {
          ASSERT_TRUE(ab == sa::Ordering::kLess || ab == sa::Ordering::kEqual);
        }
        if (ab == sa::Ordering::kLess && engine.compare(b, c) == sa::Ordering::kLess) {
          ASSERT_EQ(engine.compare(a, c), sa::Ordering::kLess);
        }
      }
    }
  }
}

TEST(PosetLaws, GenericEmbedsAndAntisymmetric) {
  for (const auto& s : law_systems()) {
    const auto& d = s.digraph();
    const sa::PreferenceEngine engine(s);
    for (sa::VertexIndex v = 0; v < d.vertex_count(); ++v) {
      if (d.in_degree(v) + d.out_degree(v) > 6) continue;
      const auto all = sa::OutcomeRelation(s, v).all_outcomes();
      for (const auto& a : all) {
        ASSERT_EQ(engine.compare(a, a), sa::Ordering::kEqual);
        for (const auto& b : all) {
          if (sa::generic_leq(d, a, b)) {
            ASSERT_TRUE(engine.leq(a, b));
          }
          if (!(a == b)) {
            ASSERT_FALSE(engine.leq(a, b) && engine.leq(b, a));
          }
        }
      }
    }
  }
}
