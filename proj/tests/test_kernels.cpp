#include "qiline/kernels.hpp"
#include "qiline/qi_approx.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

using namespace qiline;

TEST(Kernels, SupAbsDifferenceSerialParallelAgree) {
  const kernels::IntegerMap a = [](std::int64_t t) { return Rational(t * t % 97, 7); };
  const kernels::IntegerMap b = [](std::int64_t t) { return Rational(t, 3); };
  for (std::int64_t hi : {-1, 0, 10, 1000, 5000}) {
    EXPECT_EQ(kernels::sup_abs_difference(a, b, 0, hi), kernels::sup_abs_difference_serial(a, b, 0, hi));
  }
  EXPECT_EQ(kernels::sup_abs_difference(a, b, 5, 4), Rational{0});
}

TEST(Kernels, FirstViolationSerialParallelAgree) {
  const auto pairs = sample_integer_pairs(17, 4000, -1000, 1000);
  const kernels::PointMap twice = [](const Rational& x) { return Rational{2} * x; };
  EXPECT_FALSE(kernels::first_qi_violation(twice, Rational{2}, pairs).has_value());
  const auto par = kernels::first_qi_violation(twice, Rational(3, 2), pairs);
  const auto ser = kernels::first_qi_violation_serial(twice, Rational(3, 2), pairs);
  ASSERT_TRUE(ser.has_value());
  EXPECT_EQ(par, ser);
}

TEST(Kernels, ParallelMapPreservesOrderAndLowestError) {
  const auto out = kernels::parallel_map(1000, [](std::size_t i) { return static_cast<int>(i * 3); });
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * 3));
  try {
    kernels::parallel_map(200, [](std::size_t i) -> int {
      if (i >= 50 && i % 10 == 0) throw std::runtime_error(std::to_string(i));
      return 0;
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "50");
  }
}

TEST(Kernels, ViolationErrorsAfterFirstHitAreIgnored) {
  // Evaluation fails at 100, but the pair at index 0 already violates.
  const kernels::PointMap f = [](const Rational& x) {
    if (x == Rational{100}) throw std::runtime_error("boom");
    return Rational{10} * x;
  };
  std::vector<kernels::RationalPair> pairs{{Rational{0}, Rational{1000}}, {Rational{0}, Rational{100}}};
  EXPECT_EQ(kernels::first_qi_violation(f, Rational{2}, pairs), std::optional<std::size_t>(0));
  EXPECT_EQ(kernels::first_qi_violation_serial(f, Rational{2}, pairs), std::optional<std::size_t>(0));
  pairs[0] = {Rational{0}, Rational{1}};
  EXPECT_THROW(kernels::first_qi_violation(f, Rational{20}, pairs), std::runtime_error);
}
