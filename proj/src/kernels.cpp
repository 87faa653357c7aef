#include "qiline/kernels.hpp"

#include <algorithm>
#include <limits>

namespace qiline::kernels {

namespace detail {

void rethrow_lowest(std::vector<std::pair<std::size_t, std::exception_ptr>>& errors) {
  if (errors.empty()) return;
  const auto it = std::min_element(errors.begin(), errors.end(),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::rethrow_exception(it->second);
}

}  // namespace detail

namespace {

bool satisfies_qi(const Rational& d, const Rational& image_d, const Rational& c) {
  return d / c - c <= image_d && image_d <= c * d + c;
}

}  // namespace

Rational sup_abs_difference_serial(const IntegerMap& a, const IntegerMap& b, std::int64_t lo,
                                   std::int64_t hi) {
  Rational best{0};
  for (std::int64_t t = lo; t <= hi; ++t) {
    Rational d = abs(a(t) - b(t));
    if (best < d) best = std::move(d);
  }
  return best;
}

Rational sup_abs_difference(const IntegerMap& a, const IntegerMap& b, std::int64_t lo,
                            std::int64_t hi) {
  Rational best{0};
  std::vector<std::pair<std::size_t, std::exception_ptr>> errors;
#pragma omp parallel
  {
    Rational local{0};
#pragma omp for schedule(static)
    for (std::int64_t t = lo; t <= hi; ++t) {
      try {
        Rational d = abs(a(t) - b(t));
        if (local < d) local = std::move(d);
      } catch (...) {
#pragma omp critical(qiline_sup_errors)
        errors.emplace_back(static_cast<std::size_t>(t - lo), std::current_exception());
      }
    }
#pragma omp critical(qiline_sup_merge)
    if (best < local) best = local;
  }
  detail::rethrow_lowest(errors);
  return best;
}

std::optional<std::size_t> first_qi_violation_serial(const PointMap& f, const Rational& c,
                                                     std::span<const RationalPair> pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, y] = pairs[i];
    if (!satisfies_qi(abs(x - y), abs(f(x) - f(y)), c)) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> first_qi_violation(const PointMap& f, const Rational& c,
                                              std::span<const RationalPair> pairs) {
  constexpr auto none = std::numeric_limits<std::int64_t>::max();
  std::int64_t first = none;
  std::vector<std::pair<std::size_t, std::exception_ptr>> errors;
  const auto n = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(static) reduction(min : first)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      const auto& [x, y] = pairs[static_cast<std::size_t>(i)];
      if (!satisfies_qi(abs(x - y), abs(f(x) - f(y)), c)) first = std::min(first, i);
    } catch (...) {
#pragma omp critical(qiline_qi_errors)
      errors.emplace_back(static_cast<std::size_t>(i), std::current_exception());
    }
  }
  // The serial scan stops at the first violation, so only errors before it count.
  std::erase_if(errors, [&](const auto& e) { return static_cast<std::int64_t>(e.first) > first; });
  detail::rethrow_lowest(errors);
  if (first == none) return std::nullopt;
  return static_cast<std::size_t>(first);
}

}  // namespace qiline::kernels
