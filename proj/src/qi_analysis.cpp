#include "qiline/qi_analysis.hpp"

#include <algorithm>
#include <stdexcept>

namespace qiline {

QIConstant::QIConstant(Rational c) : c_(std::move(c)) {
  if (!(Rational{1} < c_)) throw std::invalid_argument("QI constant must exceed 1, got " + c_.to_string());
}

SlopeBound::SlopeBound(Rational m) : m_(std::move(m)) {
  if (!(Rational{1} < m_)) throw std::invalid_argument("slope bound must exceed 1");
}

bool SlopeBound::certifies(const Rational& slope) const {
  const Rational a = abs(slope);
  return m_.reciprocal() < a && a < m_;
}

SlopeBound slope_bound(const FinitePLMap& f) {
  Rational worst{1};
  for (const auto& s : f.slope_set()) {
    const Rational a = abs(s);
    worst = max(worst, max(a, a.reciprocal()));
  }
  return SlopeBound(worst * Rational{2});
}

QIConstant qi_constant_from_slopes(const FinitePLMap& f) {
  return QIConstant(slope_bound(f).value());
}

QICheck verify_qi_inequality(const kernels::PointMap& f, const QIConstant& c,
                             std::span<const kernels::RationalPair> pairs) {
  const auto idx = kernels::first_qi_violation(f, c.value(), pairs);
  if (!idx) return {};
  return {false, pairs[*idx]};
}

Rational segment_walk_increment(const FinitePLMap& f, const Rational& a, const Rational& b) {
  if (b < a) return -segment_walk_increment(f, b, a);
  const auto slopes = f.piece_slopes();
  const auto& xs = f.breakpoints();
  Rational total{0};
  Rational cursor = a;
  // Piece i covers (xs[i-1], xs[i]) with xs[-1] = -inf and xs[n] = +inf.
  auto i = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), a) - xs.begin());
  while (cursor < b) {
    const Rational end = i < xs.size() ? min(xs[i], b) : b;
    total += slopes[i] * (end - cursor);
    cursor = end;
    ++i;
  }
  return total;
}

TrivialityDecision is_trivial_qi(const FinitePLMap& f) {
  if (!f.orientation_preserving()) return {false, true};
  const Rational one{1};
  return {f.left_slope() == one && f.right_slope() == one, false};
}

Rational displacement_sup(const FinitePLMap& f, const Interval& window) {
  Rational best = abs(f(window.lo) - window.lo);
  best = max(best, abs(f(window.hi) - window.hi));
  for (const auto& x : f.breakpoints())
    if (window.contains(x)) best = max(best, abs(f(x) - x));
  return best;
}

std::pair<Rational, Rational> iterate_displacement(const FinitePLMap& f, const Rational& a, int k) {
  if (k < 2) throw std::invalid_argument("iterate_displacement needs k >= 2");
  if (!f.orientation_preserving())
    throw std::invalid_argument("iterate_displacement needs an orientation-preserving map");
  Rational x = f(a);
  const Rational first = abs(x - a);
  for (int i = 1; i < k; ++i) x = f(x);
  return {first, abs(x - a)};
}

}  // namespace qiline
