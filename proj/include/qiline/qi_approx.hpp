#pragma once

// Bounded-slope PL representatives of end-preserving quasi-isometries.
//
// Given an oracle f that is a C-quasi-isometry on the integers (C an integer
// >= 2) and preserves the ends of the line, build_grid() walks the integers
// from x_0 = 0, taking x_k to be the nearest integer beyond x_{k-1} with a
// strictly larger (k > 0) or strictly smaller (k < 0) oracle value. Each such
// step is at most 4C^2 long. Every C^3-th point y_k = x_{C^3 k} is kept,
// giving gaps C^3 <= y_k - y_{k-1} <= 4C^5, and pl_approximate() interpolates
// f linearly between consecutive y_k. Its slopes lie in
// [1/C - 1/C^2, C + 1/C^2] and it stays within a bounded distance of f.

#include "qiline/pl_map.hpp"
#include "qiline/qi_analysis.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qiline {

struct QIOracle {
  std::string name;
  /// Must be pure and safe to call concurrently.
  std::function<Rational(std::int64_t)> eval;
  /// Declared quasi-isometry constant, an integer >= 2.
  std::int64_t c = 2;

  QIOracle(std::string name_, std::function<Rational(std::int64_t)> eval_, std::int64_t c_);
  Rational operator()(std::int64_t x) const { return eval(x); }
  /// Same function, larger constant (a C-QI is a C'-QI for every C' >= C).
  QIOracle with_constant(std::int64_t c_) const;
};

/// No witness within 4C^2 steps: the oracle is not an end-preserving C-QI.
class ScanExceeded : public std::runtime_error {
public:
  ScanExceeded(std::int64_t x, int direction, std::int64_t range);
  std::int64_t x() const { return x_; }
  /// +1 for an upward scan, -1 for a downward one.
  int direction() const { return direction_; }
  std::int64_t range() const { return range_; }

private:
  std::int64_t x_;
  int direction_;
  std::int64_t range_;
};

/// A table-backed oracle was queried at an integer it does not define.
class OracleDomainError : public std::out_of_range {
public:
  explicit OracleDomainError(std::int64_t x);
  std::int64_t query() const { return x_; }

private:
  std::int64_t x_;
};

// Built-in oracle families. Each declares its constant; self_check() confirms
// it on sampled pairs.

QIOracle identity_oracle();
/// x -> slope * x; declared constant max(2, ceil(|slope|), ceil(1/|slope|)).
QIOracle linear_oracle(const Rational& slope);
/// A finite PL map restricted to the integers. The constant defaults to
/// qi_constant_from_slopes(f) rounded up (and at least 2).
QIOracle pl_map_oracle(const FinitePLMap& f);
QIOracle pl_map_oracle(const FinitePLMap& f, std::int64_t c);
/// x + sign(x) floor(sqrt|x|), C = 2.
QIOracle sqrt_drift_oracle();
/// x + r(x) with r(x) a seeded, deterministic multiple of 1/8 in [-R, R];
/// C = 2R + 1.
QIOracle bounded_noise_oracle(std::int64_t r, std::uint64_t seed);
/// Swaps 2m and 2m + 1; C = 3.
QIOracle block_swap_oracle();
/// Defined by a table; other queries raise OracleDomainError.
QIOracle table_oracle(std::map<std::int64_t, Rational> table, std::int64_t c);
/// -f; turns an end-reversing oracle into an end-preserving one.
QIOracle negated(const QIOracle& oracle);

std::int64_t ceil_to_integer(const Rational& r);

/// count deterministic pseudo-random pairs of distinct integers in [lo, hi].
std::vector<kernels::RationalPair> sample_integer_pairs(std::uint64_t seed, std::size_t count,
                                                        std::int64_t lo, std::int64_t hi);
QICheck self_check(const QIOracle& oracle, std::span<const kernels::RationalPair> pairs);

/// Smallest y > x with f(y) > f(x). Throws ScanExceeded beyond 4C^2 steps.
std::int64_t monotone_witness_up(const QIOracle& oracle, std::int64_t x);
/// Largest v < x with f(v) < f(x). Throws ScanExceeded beyond 4C^2 steps.
std::int64_t monotone_witness_down(const QIOracle& oracle, std::int64_t x);

struct ApproximationGrid {
  std::int64_t c = 2;
  std::int64_t n = 1;
  /// x_k for k in [-n c^3, n c^3], stored at index k + n c^3.
  std::vector<std::int64_t> x_seq;
  /// y_k = x_{c^3 k} for k in [-n, n], stored at index k + n.
  std::vector<std::int64_t> y_seq;
  /// Oracle value at each y_k.
  std::vector<Rational> f_values;
  /// Longest single witness scan used while building x_seq.
  std::int64_t max_witness_step = 0;

  std::int64_t block() const { return c * c * c; }
  std::int64_t x(std::int64_t k) const { return x_seq[static_cast<std::size_t>(k + n * block())]; }
  std::int64_t y(std::int64_t k) const { return y_seq[static_cast<std::size_t>(k + n)]; }
  const Rational& f_at(std::int64_t k) const { return f_values[static_cast<std::size_t>(k + n)]; }

  friend bool operator==(const ApproximationGrid&, const ApproximationGrid&) = default;
};

ApproximationGrid build_grid(const QIOracle& oracle, std::int64_t n);

/// Linear interpolation of the grid values, extended past the ends with the
/// first and last segment slopes.
FinitePLMap pl_approximate(const ApproximationGrid& grid);
FinitePLMap pl_approximate(const QIOracle& oracle, std::int64_t n);

/// [1/C - 1/C^2, C + 1/C^2], the closed interval holding every slope of the
/// approximation.
Interval approximation_slope_window(std::int64_t c);
/// 2C * 4C^5 + 2C: bound on |f - g| over the integers of the grid span.
Rational agreement_bound(std::int64_t c);

/// sup over integers t in [y_{-n}, y_n] of |f(t) - g(t)|.
Rational agreement_report(const QIOracle& oracle, const FinitePLMap& g, const ApproximationGrid& grid);
Rational agreement_report_serial(const QIOracle& oracle, const FinitePLMap& g,
                                 const ApproximationGrid& grid);

}  // namespace qiline
