#pragma once

// Exact maps of the line with infinitely many breakpoints.
//
//   h0   odd PL homeomorphism, identity on [-2, 2], stretching [n, n+1] onto
//        [2^(n-1), 2^n] for n >= 1; its slope grows exponentially.
//   h1   PL homeomorphism R -> (0, 1) with h1(n) = 1 - 1/(n+2) for n >= 0 and
//        h1(-x) = 1 - h1(x).
//   lift periodic map L(x + n) = L(x) + n covering a PL circle homeomorphism.
//   eta  f -> lift of h1 f h1^-1 for compactly supported f.
//   psi  lift L -> h0 L h0^-1. For L != id the displacement of psi(L) is
//        unbounded and grows geometrically along 2^n (1 + x).
//
// Maps are immutable and cheap to copy; evaluation is exact and reentrant.

#include "qiline/pl_map.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qiline {

/// Input outside the domain of a partial map (h1^-1 outside (0, 1)).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The closed-form growth value disagreed with direct evaluation.
class GrowthFormulaMismatch : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

Rational h0_eval(const Rational& x);
Rational h0_inverse_eval(const Rational& x);
Rational h1_eval(const Rational& x);
/// Throws DomainError unless 0 < x < 1.
Rational h1_inverse_eval(const Rational& x);

/// Lift of an orientation-preserving PL circle homeomorphism, stored as its
/// restriction to [0, 1]: knots 0 = t_0 < ... < t_m = 1 with values
/// v_0 < ... < v_m = v_0 + 1. Interior knots are always genuine breakpoints.
class PeriodicLift {
public:
  /// Identity lift.
  PeriodicLift();
  static PeriodicLift from_knots(std::vector<Rational> ts, std::vector<Rational> vs);
  static PeriodicLift translation(const Rational& shift);

  Rational operator()(const Rational& x) const;
  PeriodicLift inverse() const;

  const std::vector<Rational>& knots() const { return ts_; }
  const std::vector<Rational>& knot_values() const { return vs_; }
  /// Slopes of the pieces between consecutive knots.
  std::vector<Rational> core_slopes() const;
  /// Breakpoints of the lift inside [0, 1).
  std::vector<Rational> core_breakpoints() const;
  bool is_identity() const;

  friend bool operator==(const PeriodicLift&, const PeriodicLift&) = default;

private:
  PeriodicLift(std::vector<Rational> ts, std::vector<Rational> vs);
  std::vector<Rational> ts_;
  std::vector<Rational> vs_;
};

/// a o b as a periodic lift.
PeriodicLift compose(const PeriodicLift& a, const PeriodicLift& b);

class StructuredMap {
public:
  enum class Kind { H0, H0Inverse, H1, H1Inverse, PeriodicLift, EtaEmbed, Composite, FinitePart };

  static StructuredMap h0();
  static StructuredMap h0_inverse();
  static StructuredMap h1();
  static StructuredMap h1_inverse();
  static StructuredMap lift(PeriodicLift l);
  static StructuredMap finite(FinitePLMap f);
  /// factors[0] o factors[1] o ... (the last factor is applied first).
  static StructuredMap composite(std::vector<StructuredMap> factors);

  Kind kind() const;
  Rational operator()(const Rational& x) const;
  StructuredMap inverse() const;

  /// Breakpoints within the window, ascending. Every breakpoint strictly
  /// inside the window is reported and every reported interior point is a
  /// genuine breakpoint; candidates sitting exactly on a window endpoint are
  /// reported without the two-sided check.
  std::vector<Rational> breakpoints(const Interval& window) const;

  /// The periodic lift behind PeriodicLift and EtaEmbed maps, else nullptr.
  const PeriodicLift* as_lift() const;
  /// The compactly supported map behind an EtaEmbed, else nullptr.
  const FinitePLMap* eta_inner() const;
  const std::vector<StructuredMap>& factors() const;

  struct Node;

private:
  friend StructuredMap eta_embed(const FinitePLMap& f);

  explicit StructuredMap(std::shared_ptr<const Node> node);
  std::vector<Rational> candidate_breakpoints(const Interval& window) const;

  std::shared_ptr<const Node> node_;
};

/// eta(f)(n) = n on the integers and n + h1 f h1^-1 (x - n) on (n, n+1).
/// Throws InvariantError when f is not compactly supported.
StructuredMap eta_embed(const FinitePLMap& f);
/// Periodic extension of core restricted to [0, 1]. Requires an increasing
/// core with core(1) = core(0) + 1.
StructuredMap lift_from_circle_core(const FinitePLMap& core);
/// h0 o lift o h0^-1. Requires a PeriodicLift or EtaEmbed.
StructuredMap psi_conjugate(const StructuredMap& lift);

struct GrowthWitness {
  /// Probe point in [0, 1) moved by the lift.
  Rational x;
  /// floor(lift(x)).
  std::int64_t k = 0;
  /// lift(x) - k, in [0, 1).
  Rational y;
  /// floor(|lift(0)|) + 2.
  std::int64_t q = 2;

  friend bool operator==(const GrowthWitness&, const GrowthWitness&) = default;
};

/// First probe moved by the lift; nullopt if all probes are fixed.
std::optional<GrowthWitness> find_growth_witness(const StructuredMap& lift,
                                                 const std::vector<Rational>& probes);

/// Returns (lift, w) unchanged when lift(w.x) > w.x, otherwise the inverse lift
/// with the matching witness (x', k', y') = (w.y, -w.k, w.x), which moves its
/// point upwards.
std::pair<StructuredMap, GrowthWitness> orient_upwards(const StructuredMap& lift,
                                                       const GrowthWitness& w);

/// Evaluates psi(lift) at p = 2^n (1 + x), checks the value against
/// 2^(n+k) (1 + y) and returns the displacement psi(lift)(p) - p.
/// Requires n >= 1 and n + k >= 0; throws GrowthFormulaMismatch on
/// disagreement.
Rational growth_formula(const StructuredMap& lift, const GrowthWitness& w, std::int64_t n);

/// (2^-q m, 2^q M) where m, M are the least and greatest slopes of the lift:
/// an open interval holding every slope of psi(lift).
Interval conjugate_slope_bounds(const StructuredMap& lift);

struct GrowthRow {
  std::int64_t n = 0;
  Rational point;
  Rational value;
  Rational displacement;
};

/// Rows n = 1..n_max of (2^n (1 + x), f0 value, displacement) for the map
/// f0 = psi_conjugate(lift). Rows are computed in parallel.
std::vector<GrowthRow> growth_table(const StructuredMap& lift, const Rational& x,
                                    std::int64_t n_max);
std::vector<GrowthRow> growth_table_serial(const StructuredMap& lift, const Rational& x,
                                           std::int64_t n_max);
/// Exact columns followed by decimal approximations with `digits`
/// significant digits.
std::string growth_csv(const std::vector<GrowthRow>& rows, int digits);

}  // namespace qiline
