#include "qiline/io.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace qiline;

TEST(Serialize, Format) {
  const auto f = FinitePLMap::from_points({Rational{0}, Rational{1}}, {Rational{0}, Rational(3, 2)}, Rational{1},
                                          Rational{3});
  EXPECT_EQ(serialize(f), "left_slope = 1\nright_slope = 3\n(0, 0)\n(1, 3/2)\n");
  EXPECT_EQ(serialize(FinitePLMap::affine(Rational{2}, Rational(-1, 3))),
            "left_slope = 2\nright_slope = 2\nintercept = -1/3\n");
}

TEST(Serialize, RoundTripByteIdentical) {
  qiline::testing::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto f = qiline::testing::random_pl_map(rng, i % 2 ? 1 : -1);
    const std::string once = serialize(f);
    const auto parsed = parse_pl_map(once);
    EXPECT_EQ(parsed, f);
    EXPECT_EQ(serialize(parsed), once);
  }
}

TEST(Parse, CommentsAndWhitespace) {
  const auto f = parse_pl_map("# a tent\n  left_slope=1\nright_slope = 3  # steep\n\n( 0 , 0 )\n(1,2)\n");
  EXPECT_EQ(f(Rational{2}), Rational{5});
}

TEST(Parse, ErrorsCarryPosition) {
  try {
    parse_pl_map("left_slope = 1\nright_slope = 1\n(0, 0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_pl_map("left_slope = 1\nleft_slope = 2\n"), ParseError);
  EXPECT_THROW(parse_pl_map("slope = 1\n"), ParseError);
  EXPECT_THROW(parse_pl_map("left_slope = x\n"), ParseError);
}

TEST(Parse, InvariantViolationIsNotAParseError) {
  EXPECT_THROW(parse_pl_map("left_slope = 1\nright_slope = 1\n(0, 1)\n(1, 0)\n"), InvariantError);
  EXPECT_THROW(parse_pl_map("left_slope = 0\nright_slope = 0\nintercept = 0\n"), InvariantError);
}

TEST(Pairs, ParsesTwoColumns) {
  const auto rows = parse_pairs("x,y\n0, 1/2\n# skip\n3 -4\n\n5,6/4\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (RationalPair{Rational{0}, Rational(1, 2)}));
  EXPECT_EQ(rows[1], (RationalPair{Rational{3}, Rational{-4}}));
  EXPECT_EQ(rows[2], (RationalPair{Rational{5}, Rational(3, 2)}));
  EXPECT_THROW(parse_pairs("0,1\n2\n"), ParseError);
}
