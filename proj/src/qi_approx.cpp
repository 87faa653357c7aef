#include "qiline/qi_approx.hpp"

#include <cmath>
#include <random>

namespace qiline {

QIOracle::QIOracle(std::string name_, std::function<Rational(std::int64_t)> eval_, std::int64_t c_)
    : name(std::move(name_)), eval(std::move(eval_)), c(c_) {
  if (c < 2) throw std::invalid_argument("oracle constant must be an integer >= 2");
  if (!eval) throw std::invalid_argument("oracle needs an evaluation function");
}

QIOracle QIOracle::with_constant(std::int64_t c_) const {
  if (c_ < c)
    throw std::invalid_argument("cannot lower the constant of oracle '" + name + "' below " +
                                std::to_string(c));
  return QIOracle(name, eval, c_);
}

ScanExceeded::ScanExceeded(std::int64_t x, int direction, std::int64_t range)
    : std::runtime_error("no monotone witness " + std::string(direction > 0 ? "above" : "below") +
                         " x = " + std::to_string(x) + " within " + std::to_string(range) +
                         " steps (scanned " +
                         (direction > 0 ? "[" + std::to_string(x + 1) + ", " + std::to_string(x + range) + "]"
                                        : "[" + std::to_string(x - range) + ", " + std::to_string(x - 1) + "]") +
                         "); oracle is not an end-preserving C-quasi-isometry"),
      x_(x),
      direction_(direction),
      range_(range) {}

OracleDomainError::OracleDomainError(std::int64_t x)
    : std::out_of_range("oracle table has no entry for integer " + std::to_string(x)), x_(x) {}

std::int64_t ceil_to_integer(const Rational& r) {
  const std::int64_t f = r.floor_i64();
  return Rational(f) == r ? f : f + 1;
}

QIOracle identity_oracle() {
  return QIOracle("identity", [](std::int64_t x) { return Rational(x); }, 2);
}

QIOracle linear_oracle(const Rational& slope) {
  if (slope.sign() <= 0) throw std::invalid_argument("linear oracle must be end-preserving");
  const std::int64_t c =
      std::max<std::int64_t>({2, ceil_to_integer(slope), ceil_to_integer(slope.reciprocal())});
  return QIOracle("linear(" + slope.to_string() + ")",
                  [slope](std::int64_t x) { return slope * Rational(x); }, c);
}

QIOracle pl_map_oracle(const FinitePLMap& f) {
  const std::int64_t c = std::max<std::int64_t>(2, ceil_to_integer(qi_constant_from_slopes(f).value()));
  return pl_map_oracle(f, c);
}

QIOracle pl_map_oracle(const FinitePLMap& f, std::int64_t c) {
  if (!f.orientation_preserving())
    throw std::invalid_argument("PL oracle must be orientation preserving; negate it first");
  return QIOracle("finite-pl", [f](std::int64_t x) { return f(Rational(x)); }, c);
}

namespace {

std::uint64_t isqrt(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

QIOracle sqrt_drift_oracle() {
  return QIOracle(
      "sqrt-drift",
      [](std::int64_t x) {
        const std::uint64_t mag = x < 0 ? static_cast<std::uint64_t>(-x) : static_cast<std::uint64_t>(x);
        const auto drift = static_cast<std::int64_t>(isqrt(mag));
        return Rational(x + (x < 0 ? -drift : drift));
      },
      2);
}

QIOracle bounded_noise_oracle(std::int64_t r, std::uint64_t seed) {
  if (r < 0) throw std::invalid_argument("noise amplitude must be non-negative");
  const auto span = static_cast<std::uint64_t>(16 * r + 1);
  return QIOracle(
      "bounded-noise(R=" + std::to_string(r) + ",seed=" + std::to_string(seed) + ")",
      [r, seed, span](std::int64_t x) {
        const std::uint64_t h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(x)));
        const auto eighths = static_cast<std::int64_t>(h % span) - 8 * r;
        return Rational(x) + Rational(eighths, 8);
      },
      std::max<std::int64_t>(2, 2 * r + 1));
}

QIOracle block_swap_oracle() {
  return QIOracle(
      "block-swap",
      [](std::int64_t x) {
        const bool even = (x % 2) == 0;
        return Rational(even ? x + 1 : x - 1);
      },
      3);
}

QIOracle table_oracle(std::map<std::int64_t, Rational> table, std::int64_t c) {
  return QIOracle(
      "table",
      [table = std::move(table)](std::int64_t x) {
        const auto it = table.find(x);
        if (it == table.end()) throw OracleDomainError(x);
        return it->second;
      },
      c);
}

QIOracle negated(const QIOracle& oracle) {
  auto inner = oracle.eval;
  return QIOracle("-" + oracle.name, [inner](std::int64_t x) { return -inner(x); }, oracle.c);
}

std::vector<kernels::RationalPair> sample_integer_pairs(std::uint64_t seed, std::size_t count,
                                                        std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) throw std::invalid_argument("sample_integer_pairs needs lo < hi");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  std::vector<kernels::RationalPair> out;
  out.reserve(count);
  while (out.size() < count) {
    const auto a = dist(rng);
    const auto b = dist(rng);
    if (a != b) out.emplace_back(Rational(a), Rational(b));
  }
  return out;
}

QICheck self_check(const QIOracle& oracle, std::span<const kernels::RationalPair> pairs) {
  auto eval = oracle.eval;
  const kernels::PointMap f = [eval](const Rational& x) {
    if (!x.is_integer()) throw std::invalid_argument("oracle is only defined on integers");
    return eval(x.floor_i64());
  };
  return verify_qi_inequality(f, QIConstant(Rational(oracle.c)), pairs);
}

std::int64_t monotone_witness_up(const QIOracle& oracle, std::int64_t x) {
  const std::int64_t range = 4 * oracle.c * oracle.c;
  const Rational fx = oracle(x);
  for (std::int64_t step = 1; step <= range; ++step)
    if (fx < oracle(x + step)) return x + step;
  throw ScanExceeded(x, +1, range);
}

std::int64_t monotone_witness_down(const QIOracle& oracle, std::int64_t x) {
  const std::int64_t range = 4 * oracle.c * oracle.c;
  const Rational fx = oracle(x);
  for (std::int64_t step = 1; step <= range; ++step)
    if (oracle(x - step) < fx) return x - step;
  throw ScanExceeded(x, -1, range);
}

ApproximationGrid build_grid(const QIOracle& oracle, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("grid window N must be >= 1");
  ApproximationGrid grid;
  grid.c = oracle.c;
  grid.n = n;
  const std::int64_t total = n * grid.block();
  grid.x_seq.assign(static_cast<std::size_t>(2 * total + 1), 0);

  const auto at = [&](std::int64_t k) -> std::int64_t& {
    return grid.x_seq[static_cast<std::size_t>(k + total)];
  };
  for (std::int64_t k = 1; k <= total; ++k) {
    at(k) = monotone_witness_up(oracle, at(k - 1));
    grid.max_witness_step = std::max(grid.max_witness_step, at(k) - at(k - 1));
  }
  for (std::int64_t k = -1; k >= -total; --k) {
    at(k) = monotone_witness_down(oracle, at(k + 1));
    grid.max_witness_step = std::max(grid.max_witness_step, at(k + 1) - at(k));
  }

  grid.y_seq.reserve(static_cast<std::size_t>(2 * n + 1));
  grid.f_values.reserve(static_cast<std::size_t>(2 * n + 1));
  for (std::int64_t k = -n; k <= n; ++k) {
    grid.y_seq.push_back(at(k * grid.block()));
    grid.f_values.push_back(oracle(grid.y_seq.back()));
  }
  return grid;
}

FinitePLMap pl_approximate(const ApproximationGrid& grid) {
  std::vector<Rational> xs, ys;
  xs.reserve(grid.y_seq.size());
  for (auto y : grid.y_seq) xs.emplace_back(y);
  ys = grid.f_values;
  const std::size_t m = xs.size();
  Rational left = (ys[1] - ys[0]) / (xs[1] - xs[0]);
  Rational right = (ys[m - 1] - ys[m - 2]) / (xs[m - 1] - xs[m - 2]);
  return FinitePLMap::from_points(std::move(xs), std::move(ys), std::move(left), std::move(right));
}

FinitePLMap pl_approximate(const QIOracle& oracle, std::int64_t n) {
  return pl_approximate(build_grid(oracle, n));
}

Interval approximation_slope_window(std::int64_t c) {
  const Rational cr(c);
  const Rational inv = cr.reciprocal();
  return Interval(inv - inv * inv, cr + inv * inv);
}

Rational agreement_bound(std::int64_t c) {
  const Rational cr(c);
  Rational c5 = cr * cr * cr * cr * cr;
  return Rational{2} * cr * Rational{4} * c5 + Rational{2} * cr;
}

namespace {

kernels::IntegerMap as_integer_map(const FinitePLMap& g) {
  return [&g](std::int64_t t) { return g(Rational(t)); };
}

}  // namespace

Rational agreement_report(const QIOracle& oracle, const FinitePLMap& g, const ApproximationGrid& grid) {
  return kernels::sup_abs_difference(oracle.eval, as_integer_map(g), grid.y(-grid.n), grid.y(grid.n));
}

Rational agreement_report_serial(const QIOracle& oracle, const FinitePLMap& g,
                                 const ApproximationGrid& grid) {
  return kernels::sup_abs_difference_serial(oracle.eval, as_integer_map(g), grid.y(-grid.n),
                                            grid.y(grid.n));
}

}  // namespace qiline
