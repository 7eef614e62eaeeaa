#include <gtest/gtest.h>

#include "swapatomic/fixtures.hpp"
#include "swapatomic/report.hpp"

namespace sa = swapatomic;

TEST(Verdict, RoundTrip) {
  for (int i = 1; i <= 5; ++i) {
    const auto s = sa::fixture(i);
    const auto v = sa::decide_atomic(s);
    const auto back = sa::parse_verdict(s, sa::serialize_verdict(s, v));
    EXPECT_EQ(back.decision, v.decision);
    EXPECT_EQ(back.witness, v.witness);
    EXPECT_EQ(back.sccs.components, v.sccs.components);
    EXPECT_EQ(back.stats.g_candidates, v.stats.g_candidates);
  }
}

TEST(Verdict, WrongSystemRejected) {
  const auto s1 = sa::fixture(1);
  const auto s3 = sa::fixture(3);
  const auto text = sa::serialize_verdict(s3, sa::decide_atomic(s3));
  EXPECT_THROW(sa::parse_verdict(s1, text), sa::ParseError);
  EXPECT_THROW(sa::parse_verdict(s1, "{"), sa::ParseError);
}
