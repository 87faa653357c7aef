#include "qiline/pl_map.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace qiline;
using qiline::testing::random_compact_map;
using qiline::testing::random_pl_map;
using qiline::testing::random_rational;
using qiline::testing::Rng;

namespace {

FinitePLMap tent() {
  // breakpoints (0, 1), values (0, 2), end slopes 1 and 3
  return FinitePLMap::from_points({Rational{0}, Rational{1}}, {Rational{0}, Rational{2}}, Rational{1},
                                  Rational{3});
}

// Direct interpolation through raw knots, used as an independent evaluator.
Rational interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys, const Rational& left,
                     const Rational& right, const Rational& t) {
  if (t <= xs.front()) return ys.front() + left * (t - xs.front());
  if (xs.back() <= t) return ys.back() + right * (t - xs.back());
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (t <= xs[i]) return ys[i - 1] + (t - xs[i - 1]) * (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
  return ys.back();
}

}  // namespace

TEST(PLMap, EvaluateExamples) {
  EXPECT_EQ(FinitePLMap::identity()(Rational(7, 3)), Rational(7, 3));
  EXPECT_EQ(tent()(Rational(1, 2)), Rational{1});
  EXPECT_EQ(tent()(Rational{2}), Rational{5});
  EXPECT_EQ(tent()(Rational{-2}), Rational{-2});
}

TEST(PLMap, ComposeExamples) {
  const auto f = FinitePLMap::affine(Rational{2}, Rational{0});
  const auto g = FinitePLMap::affine(Rational{1}, Rational{1});
  EXPECT_EQ(compose(f, g), FinitePLMap::affine(Rational{2}, Rational{2}));
  EXPECT_TRUE(compose(tent(), invert(tent())).is_identity());
}

TEST(PLMap, InvertExamples) {
  EXPECT_TRUE(invert(FinitePLMap::identity()).is_identity());
  EXPECT_EQ(invert(FinitePLMap::affine(Rational{2}, Rational{2})),
            FinitePLMap::affine(Rational(1, 2), Rational{-1}));
  const auto inv = invert(tent());
  EXPECT_EQ(inv.breakpoints(), tent().values());
}

TEST(PLMap, SlopeAndBreakpointSets) {
  EXPECT_EQ(slope_set(FinitePLMap::identity()), std::vector<Rational>{Rational{1}});
  EXPECT_EQ(slope_set(tent()), (std::vector<Rational>{Rational{1}, Rational{2}, Rational{3}}));
  EXPECT_TRUE(breakpoint_set(FinitePLMap::identity()).empty());
  EXPECT_EQ(breakpoint_set(tent()), (std::vector<Rational>{Rational{0}, Rational{1}}));
}

TEST(PLMap, SupportExamples) {
  EXPECT_TRUE(FinitePLMap::identity().support().empty());
  const auto f = FinitePLMap::compactly_supported({Rational{0}, Rational(1, 2), Rational{1}},
                                                  {Rational{0}, Rational(1, 4), Rational{1}});
  const auto s = f.support();
  ASSERT_EQ(s.kind, Support::Kind::Bounded);
  EXPECT_EQ(*s.interval, Interval(Rational{0}, Rational{1}));
  EXPECT_EQ(FinitePLMap::affine(Rational{1}, Rational{1}).support().kind, Support::Kind::Unbounded);
  EXPECT_EQ(tent().support().kind, Support::Kind::Unbounded);
}

TEST(PLMap, EqualsExamples) {
  const auto f = tent();
  EXPECT_TRUE(equals(f, compose(f, FinitePLMap::identity())));
  const auto perturbed = FinitePLMap::from_points({Rational{0}, Rational{1}},
                                                  {Rational{0}, Rational{2} + Rational(1, 1000000000)},
                                                  Rational{1}, Rational{3});
  EXPECT_FALSE(equals(f, perturbed));
  // g^-1 f g = f when f and g are powers of one map
  Rng rng(11);
  const auto h = random_pl_map(rng);
  const auto a = power(h, 2);
  const auto b = power(h, 3);
  EXPECT_TRUE(equals(compose(invert(b), compose(a, b)), a));
}

TEST(PLMap, InvariantViolations) {
  EXPECT_THROW(FinitePLMap::affine(Rational{0}, Rational{1}), InvariantError);
  // non-increasing breakpoints
  EXPECT_THROW(FinitePLMap::from_points({Rational{1}, Rational{0}}, {Rational{0}, Rational{1}}, Rational{1},
                                        Rational{1}),
               InvariantError);
  // mixed orientation
  EXPECT_THROW(FinitePLMap::from_points({Rational{0}, Rational{1}}, {Rational{0}, Rational{1}}, Rational{-1},
                                        Rational{1}),
               InvariantError);
  // flat segment
  EXPECT_THROW(FinitePLMap::from_points({Rational{0}, Rational{1}}, {Rational{0}, Rational{0}}, Rational{1},
                                        Rational{1}),
               InvariantError);
}

TEST(PLMap, RemovableKnotsDropped) {
  const auto f = FinitePLMap::from_points({Rational{0}, Rational{1}, Rational{2}},
                                          {Rational{0}, Rational{2}, Rational{4}}, Rational{1}, Rational{2});
  EXPECT_EQ(f.breakpoints(), std::vector<Rational>{Rational{0}});
  const auto g = FinitePLMap::from_points({Rational{0}, Rational{1}}, {Rational{3}, Rational{5}}, Rational{2},
                                          Rational{2});
  EXPECT_TRUE(g.is_affine());
  EXPECT_EQ(g, FinitePLMap::affine(Rational{2}, Rational{3}));
}

TEST(PLMap, OrientationReversing) {
  const auto neg = FinitePLMap::affine(Rational{-1}, Rational{0});
  EXPECT_EQ(neg.orientation(), -1);
  EXPECT_TRUE(compose(neg, neg).is_identity());
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_pl_map(rng, -1);
    const auto g = random_pl_map(rng, i % 2 ? 1 : -1);
    EXPECT_EQ(compose(f, g).orientation(), f.orientation() * g.orientation());
    EXPECT_TRUE(compose(f, invert(f)).is_identity());
    EXPECT_EQ(invert(invert(f)), f);
  }
}

TEST(PLMapProperty, GroupAxioms) {
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const auto f = random_pl_map(rng, i % 3 ? 1 : -1);
    const auto g = random_pl_map(rng);
    const auto h = random_pl_map(rng, i % 5 ? 1 : -1);
    EXPECT_EQ(compose(compose(f, g), h), compose(f, compose(g, h)));
    EXPECT_TRUE(compose(f, invert(f)).is_identity());
    EXPECT_TRUE(compose(invert(f), f).is_identity());
    EXPECT_EQ(invert(invert(f)), f);
  }
}

TEST(PLMapProperty, ComposeMatchesPointwise) {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_pl_map(rng, i % 2 ? 1 : -1);
    const auto g = random_pl_map(rng, i % 3 ? 1 : -1);
    const auto fg = compose(f, g);
    for (int j = 0; j < 20; ++j) {
      const auto x = random_rational(rng, -30, 30);
      EXPECT_EQ(fg(x), f(g(x)));
    }
    // breakpoint count and candidate containment
    EXPECT_LE(fg.breakpoints().size(), f.breakpoints().size() + g.breakpoints().size());
    std::set<Rational> candidates(g.breakpoints().begin(), g.breakpoints().end());
    const auto g_inv = invert(g);
    for (const auto& b : f.breakpoints()) candidates.insert(g_inv(b));
    for (const auto& b : fg.breakpoints()) EXPECT_TRUE(candidates.count(b)) << b;
  }
}

TEST(PLMapProperty, SlopeProducts) {
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_pl_map(rng);
    const auto g = random_pl_map(rng, i % 2 ? 1 : -1);
    const auto fg = compose(f, g);
    // segment slopes of the composite measured by two evaluations
    std::vector<Rational> pts = fg.breakpoints();
    pts.insert(pts.begin(), pts.empty() ? Rational{-1} : pts.front() - Rational{1});
    pts.push_back(pts.back() + Rational{1});
    std::set<Rational> products;
    for (const auto& a : f.slope_set())
      for (const auto& b : g.slope_set()) products.insert(a * b);
    for (std::size_t k = 1; k < pts.size(); ++k) {
      const Rational s = (fg(pts[k]) - fg(pts[k - 1])) / (pts[k] - pts[k - 1]);
      EXPECT_TRUE(products.count(s)) << s;
    }
  }
}

TEST(PLMapProperty, InverseSlopesAreReciprocals) {
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_pl_map(rng, i % 2 ? 1 : -1);
    std::set<Rational> recips;
    for (const auto& s : f.slope_set()) recips.insert(s.reciprocal());
    const auto inv = invert(f).slope_set();
    EXPECT_EQ(std::set<Rational>(inv.begin(), inv.end()), recips);
    // f(f^-1(y)) = y
    for (int j = 0; j < 10; ++j) {
      const auto y = random_rational(rng, -40, 40);
      EXPECT_EQ(f(invert(f)(y)), y);
    }
  }
}

TEST(PLMapProperty, CanonicalizationPreservesEvaluation) {
  Rng rng(10);
  for (int i = 0; i < 50; ++i) {
    // knots with deliberately collinear extras
    auto xs = qiline::testing::random_sorted(rng, 6, -10, 10);
    std::vector<Rational> ys{Rational{0}};
    Rational slope = qiline::testing::random_slope(rng);
    for (std::size_t k = 1; k < xs.size(); ++k) {
      if (k % 2 == 0) slope = qiline::testing::random_slope(rng);
      ys.push_back(ys.back() + slope * (xs[k] - xs[k - 1]));
    }
    const Rational left = qiline::testing::random_slope(rng);
    const Rational right = qiline::testing::random_slope(rng);
    const auto f = FinitePLMap::from_points(xs, ys, left, right);
    for (int j = 0; j < 100; ++j) {
      const auto t = random_rational(rng, -15, 15);
      EXPECT_EQ(f(t), interpolate(xs, ys, left, right, t));
    }
    // idempotent
    const auto again = FinitePLMap::from_points(f.breakpoints(), f.values(), f.left_slope(), f.right_slope());
    if (!f.is_affine()) EXPECT_EQ(again, f);
    const auto ps = f.piece_slopes();
    for (std::size_t k = 1; k < ps.size(); ++k) EXPECT_NE(ps[k - 1], ps[k]);
  }
}

TEST(PLMapProperty, CompactSupportClosedUnderGroup) {
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_compact_map(rng);
    const auto g = random_compact_map(rng, -1, 5);
    const auto fg = compose(f, g);
    EXPECT_TRUE(fg.support().bounded());
    EXPECT_TRUE(invert(f).support().bounded());
    if (!fg.support().empty()) {
      EXPECT_LE(Rational{-3}, fg.support().interval->lo);
      EXPECT_LE(fg.support().interval->hi, Rational{5});
    }
  }
}
