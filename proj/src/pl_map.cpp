#include "qiline/pl_map.hpp"

#include <algorithm>

namespace qiline {

Interval::Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (hi < lo) throw std::invalid_argument("Interval: lo > hi");
}

FinitePLMap::FinitePLMap() = default;

FinitePLMap::FinitePLMap(std::vector<Rational> xs, std::vector<Rational> ys, Rational left,
                         Rational right, Rational intercept)
    : xs_(std::move(xs)),
      ys_(std::move(ys)),
      left_slope_(std::move(left)),
      right_slope_(std::move(right)),
      intercept_(std::move(intercept)) {}

FinitePLMap FinitePLMap::affine(Rational slope, Rational intercept) {
  if (slope.is_zero()) throw InvariantError("affine map with zero slope is not a homeomorphism");
  Rational right = slope;
  return FinitePLMap({}, {}, std::move(slope), std::move(right), std::move(intercept));
}

FinitePLMap FinitePLMap::from_points(std::vector<Rational> xs, std::vector<Rational> ys,
                                     Rational left_slope, Rational right_slope) {
  if (xs.size() != ys.size())
    throw InvariantError("breakpoint and value lists differ in length");
  if (xs.empty()) throw InvariantError("from_points needs at least one knot; use affine()");
  if (left_slope.is_zero() || right_slope.is_zero())
    throw InvariantError("end slope is zero");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i - 1] < xs[i]))
      throw InvariantError("breakpoints not strictly increasing at index " + std::to_string(i));

  const std::size_t n = xs.size();
  std::vector<Rational> slopes;
  slopes.reserve(n + 1);
  slopes.push_back(left_slope);
  for (std::size_t i = 1; i < n; ++i) slopes.push_back((ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]));
  slopes.push_back(right_slope);

  const int sign = left_slope.sign();
  for (std::size_t i = 0; i < slopes.size(); ++i)
    if (slopes[i].sign() != sign)
      throw InvariantError("slope " + slopes[i].to_string() + " of piece " + std::to_string(i) +
                           " breaks monotonicity");

  // Knot i separates pieces i and i+1; it is removable iff they agree.
  std::vector<Rational> kx, ky;
  for (std::size_t i = 0; i < n; ++i) {
    if (slopes[i] != slopes[i + 1]) {
      kx.push_back(std::move(xs[i]));
      ky.push_back(std::move(ys[i]));
    }
  }
  if (kx.empty()) {
    Rational b = ys[0] - left_slope * xs[0];
    return affine(std::move(left_slope), std::move(b));
  }
  return FinitePLMap(std::move(kx), std::move(ky), std::move(left_slope), std::move(right_slope),
                     Rational{0});
}

FinitePLMap FinitePLMap::compactly_supported(std::vector<Rational> xs, std::vector<Rational> ys) {
  if (xs.empty()) return identity();
  if (xs.size() != ys.size() || ys.front() != xs.front() || ys.back() != xs.back())
    throw InvariantError("compactly supported map must fix the ends of its knot span");
  return from_points(std::move(xs), std::move(ys), Rational{1}, Rational{1});
}

Rational FinitePLMap::evaluate(const Rational& x) const {
  if (xs_.empty()) return left_slope_ * x + intercept_;
  if (x <= xs_.front()) return ys_.front() + left_slope_ * (x - xs_.front());
  if (x >= xs_.back()) return ys_.back() + right_slope_ * (x - xs_.back());
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const auto i = static_cast<std::size_t>(it - xs_.begin());
  // xs_[i-1] < x < xs_[i]
  const Rational t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
  return ys_[i - 1] + t * (ys_[i] - ys_[i - 1]);
}

bool FinitePLMap::is_identity() const {
  return xs_.empty() && left_slope_ == Rational{1} && intercept_.is_zero();
}

std::vector<Rational> FinitePLMap::piece_slopes() const {
  std::vector<Rational> out;
  out.reserve(xs_.size() + 1);
  out.push_back(left_slope_);
  for (std::size_t i = 1; i < xs_.size(); ++i)
    out.push_back((ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]));
  if (!xs_.empty()) out.push_back(right_slope_);
  return out;
}

std::vector<Rational> FinitePLMap::slope_set() const {
  auto s = piece_slopes();
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Rational FinitePLMap::right_derivative(const Rational& x) const {
  const auto slopes = piece_slopes();
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  return slopes[static_cast<std::size_t>(it - xs_.begin())];
}

Support FinitePLMap::support() const {
  const Rational one{1};
  if (left_slope_ != one || right_slope_ != one) return {Support::Kind::Unbounded, std::nullopt};
  if (xs_.empty()) {
    if (intercept_.is_zero()) return {};
    return {Support::Kind::Unbounded, std::nullopt};
  }
  // End pieces are translations; a nonzero shift moves a whole ray.
  if (ys_.front() != xs_.front() || ys_.back() != xs_.back())
    return {Support::Kind::Unbounded, std::nullopt};

  std::size_t first = xs_.size(), last = 0;
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (ys_[i] != xs_[i]) {
      first = std::min(first, i);
      last = i;
    }
  }
  if (first == xs_.size()) return {};
  // Displacement is linear between knots and vanishes at both span ends, so
  // the moved set lies strictly between the neighbours of the first and last
  // moved knots.
  return {Support::Kind::Bounded, Interval(xs_[first - 1], xs_[last + 1])};
}

FinitePLMap invert(const FinitePLMap& f) {
  if (f.is_affine()) {
    const Rational a = f.left_slope().reciprocal();
    return FinitePLMap::affine(a, -f.intercept() * a);
  }
  std::vector<Rational> xs = f.values();
  std::vector<Rational> ys = f.breakpoints();
  Rational left = f.left_slope().reciprocal();
  Rational right = f.right_slope().reciprocal();
  if (!f.orientation_preserving()) {
    std::reverse(xs.begin(), xs.end());
    std::reverse(ys.begin(), ys.end());
    std::swap(left, right);
  }
  return FinitePLMap::from_points(std::move(xs), std::move(ys), std::move(left), std::move(right));
}

FinitePLMap compose(const FinitePLMap& f, const FinitePLMap& g) {
  std::vector<Rational> knots = g.breakpoints();
  if (!f.breakpoints().empty()) {
    const FinitePLMap g_inv = invert(g);
    for (const auto& b : f.breakpoints()) knots.push_back(g_inv(b));
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  const bool g_up = g.orientation_preserving();
  Rational left = (g_up ? f.left_slope() : f.right_slope()) * g.left_slope();
  Rational right = (g_up ? f.right_slope() : f.left_slope()) * g.right_slope();

  if (knots.empty()) return FinitePLMap::affine(std::move(left), f(g(Rational{0})));

  std::vector<Rational> values;
  values.reserve(knots.size());
  for (const auto& x : knots) values.push_back(f(g(x)));
  return FinitePLMap::from_points(std::move(knots), std::move(values), std::move(left),
                                  std::move(right));
}

FinitePLMap power(const FinitePLMap& f, int k) {
  const FinitePLMap base = k < 0 ? invert(f) : f;
  FinitePLMap out;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) out = compose(base, out);
  return out;
}

}  // namespace qiline
