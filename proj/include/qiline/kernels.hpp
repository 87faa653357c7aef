#pragma once

// Data-parallel scans used by the analysis and approximation code.
//
// Every kernel has an OpenMP implementation and a *_serial reference with the
// same contract. The reference versions exist for tests and for the
// benchmark; callers use the parallel ones. Results never depend on the
// thread count: maxima are order independent and index searches reduce with
// min. Exceptions thrown by the callbacks are captured and the one from the
// lowest index is rethrown after the parallel region.

#include "qiline/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

namespace qiline::kernels {

using PointMap = std::function<Rational(const Rational&)>;
using IntegerMap = std::function<Rational(std::int64_t)>;
using RationalPair = std::pair<Rational, Rational>;

/// max over integers t in [lo, hi] of |a(t) - b(t)|; zero for an empty range.
Rational sup_abs_difference(const IntegerMap& a, const IntegerMap& b, std::int64_t lo,
                            std::int64_t hi);
Rational sup_abs_difference_serial(const IntegerMap& a, const IntegerMap& b, std::int64_t lo,
                                   std::int64_t hi);

/// Index of the first pair (x, y) violating
///   d/C - C <= |f(x) - f(y)| <= C d + C,   d = |x - y|,
/// or nullopt if every pair satisfies it.
std::optional<std::size_t> first_qi_violation(const PointMap& f, const Rational& c,
                                              std::span<const RationalPair> pairs);
std::optional<std::size_t> first_qi_violation_serial(const PointMap& f, const Rational& c,
                                                     std::span<const RationalPair> pairs);

namespace detail {
void rethrow_lowest(std::vector<std::pair<std::size_t, std::exception_ptr>>& errors);
}

/// out[i] = fn(i) for i in [0, n), computed in parallel, order preserved.
template <class Fn>
auto parallel_map(std::size_t n, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<R> out(n);
  std::vector<std::pair<std::size_t, std::exception_ptr>> errors;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(qiline_parallel_map_errors)
      errors.emplace_back(static_cast<std::size_t>(i), std::current_exception());
    }
  }
  detail::rethrow_lowest(errors);
  return out;
}

template <class Fn>
auto serial_map(std::size_t n, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  std::vector<std::invoke_result_t<Fn&, std::size_t>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
  return out;
}

}  // namespace qiline::kernels
