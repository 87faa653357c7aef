#pragma once

// Piecewise-linear homeomorphisms of the real line with finitely many
// breakpoints, held in a canonical form so that pointwise equality of maps
// is structural equality of their representations.

#include "qiline/rational.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qiline {

/// Raised when a map description violates the homeomorphism or canonical
/// form invariants (non-increasing breakpoints, zero slope, mixed signs).
class InvariantError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct Interval {
  Rational lo;
  Rational hi;

  Interval(Rational lo_, Rational hi_);
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Result of FinitePLMap::support(): the identity has empty support, maps that
/// move points arbitrarily far out have unbounded support.
struct Support {
  enum class Kind { Empty, Bounded, Unbounded };
  Kind kind = Kind::Empty;
  std::optional<Interval> interval;

  bool empty() const { return kind == Kind::Empty; }
  bool bounded() const { return kind != Kind::Unbounded; }
};

class FinitePLMap {
public:
  /// The identity map.
  FinitePLMap();

  static FinitePLMap identity() { return {}; }
  /// x -> slope * x + intercept; slope must be nonzero.
  static FinitePLMap affine(Rational slope, Rational intercept);
  /// Builds a map through the given knots with the given end slopes. Knots
  /// need not be canonical: collinear (removable) knots are dropped. With no
  /// knots use affine() instead.
  static FinitePLMap from_points(std::vector<Rational> xs, std::vector<Rational> ys,
                                 Rational left_slope, Rational right_slope);
  /// Identity outside [xs.front(), xs.back()], interpolating the knots inside.
  /// Requires ys.front() == xs.front() and ys.back() == xs.back().
  static FinitePLMap compactly_supported(std::vector<Rational> xs, std::vector<Rational> ys);

  Rational operator()(const Rational& x) const { return evaluate(x); }
  Rational evaluate(const Rational& x) const;

  /// Canonical breakpoints B(f), strictly increasing; empty for affine maps.
  const std::vector<Rational>& breakpoints() const { return xs_; }
  /// f evaluated at each breakpoint.
  const std::vector<Rational>& values() const { return ys_; }
  const Rational& left_slope() const { return left_slope_; }
  const Rational& right_slope() const { return right_slope_; }
  /// Value at 0 for affine maps; zero (unused) when breakpoints exist.
  const Rational& intercept() const { return intercept_; }

  bool is_affine() const { return xs_.empty(); }
  bool is_identity() const;
  bool orientation_preserving() const { return left_slope_.sign() > 0; }
  /// +1 or -1.
  int orientation() const { return left_slope_.sign(); }

  /// Slopes of consecutive pieces from left to right, end slopes included;
  /// size is breakpoints().size() + 1.
  std::vector<Rational> piece_slopes() const;
  /// Lambda(f): distinct slopes, sorted ascending.
  std::vector<Rational> slope_set() const;
  /// Slope of the piece containing x to its right (the right derivative).
  Rational right_derivative(const Rational& x) const;

  Support support() const;

  friend bool operator==(const FinitePLMap&, const FinitePLMap&) = default;

private:
  FinitePLMap(std::vector<Rational> xs, std::vector<Rational> ys, Rational left, Rational right,
              Rational intercept);

  std::vector<Rational> xs_;
  std::vector<Rational> ys_;
  Rational left_slope_{1};
  Rational right_slope_{1};
  Rational intercept_{0};
};

/// f o g (apply g first). B(f o g) is contained in B(g) union g^-1(B(f)).
FinitePLMap compose(const FinitePLMap& f, const FinitePLMap& g);
FinitePLMap invert(const FinitePLMap& f);
/// f^k for any integer k (negative powers go through invert).
FinitePLMap power(const FinitePLMap& f, int k);

inline Rational evaluate(const FinitePLMap& f, const Rational& x) { return f.evaluate(x); }
inline std::vector<Rational> slope_set(const FinitePLMap& f) { return f.slope_set(); }
inline const std::vector<Rational>& breakpoint_set(const FinitePLMap& f) { return f.breakpoints(); }
inline Support support(const FinitePLMap& f) { return f.support(); }
inline bool equals(const FinitePLMap& f, const FinitePLMap& g) { return f == g; }

}  // namespace qiline
