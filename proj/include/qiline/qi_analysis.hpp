#pragma once

// Quasi-isometry constants and checks for finite PL maps.
//
// A map f is a C-quasi-isometric embedding when
//
//   d(x, y) / C - C  <=  |f(x) - f(y)|  <=  C d(x, y) + C
//
// for all x, y, with C > 1. A PL map whose slopes satisfy 1/M < |s| < M is
// M-bi-Lipschitz, hence an M-quasi-isometry.

#include "qiline/kernels.hpp"
#include "qiline/pl_map.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace qiline {

/// A quasi-isometry constant; always > 1.
class QIConstant {
public:
  explicit QIConstant(Rational c);
  const Rational& value() const { return c_; }
  friend bool operator==(const QIConstant&, const QIConstant&) = default;

private:
  Rational c_;
};

/// M > 1 with 1/M < |s| < M for every slope s of the certified map.
class SlopeBound {
public:
  explicit SlopeBound(Rational m);
  const Rational& value() const { return m_; }
  bool certifies(const Rational& slope) const;

private:
  Rational m_;
};

/// Twice the largest of |s| and 1/|s| over the slope set. The factor 2 makes
/// the defining inequalities strict.
SlopeBound slope_bound(const FinitePLMap& f);
QIConstant qi_constant_from_slopes(const FinitePLMap& f);

struct QICheck {
  bool holds = true;
  /// First pair (in input order) where the inequality fails.
  std::optional<kernels::RationalPair> violated;
};

QICheck verify_qi_inequality(const kernels::PointMap& f, const QIConstant& c,
                             std::span<const kernels::RationalPair> pairs);

/// f(b) - f(a) as the sum over pieces of slope * (piece length inside [a, b]).
/// Agrees exactly with f(b) - f(a); used to cross-check evaluation.
Rational segment_walk_increment(const FinitePLMap& f, const Rational& a, const Rational& b);

struct TrivialityDecision {
  /// sup |f - id| < infinity.
  bool trivial = false;
  /// Set when the input reverses orientation; such maps are never trivial.
  bool orientation_reversing = false;
};

/// Decides whether f is at bounded distance from the identity. For a finite
/// PL map this holds exactly when both end slopes are 1.
TrivialityDecision is_trivial_qi(const FinitePLMap& f);

/// max of |f(x) - x| over the window (attained at a knot or an endpoint).
Rational displacement_sup(const FinitePLMap& f, const Interval& window);

/// (|f(a) - a|, |f^k(a) - a|) for k >= 2. For increasing f with f(a) != a the
/// second component strictly exceeds the first.
std::pair<Rational, Rational> iterate_displacement(const FinitePLMap& f, const Rational& a, int k);

}  // namespace qiline
