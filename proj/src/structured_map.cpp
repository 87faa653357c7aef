#include "qiline/structured_map.hpp"

#include "qiline/kernels.hpp"

#include <algorithm>
#include <sstream>
#include <variant>

namespace qiline {

// --- h0 / h1 ---------------------------------------------------------------

Rational h0_eval(const Rational& x) {
  if (x.sign() < 0) return -h0_eval(-x);
  const mpz_class n = x.floor();
  if (n <= 1) return x;
  // [n, n+1] -> [2^(n-1), 2^n]
  const long e = n.get_si() - 1;
  return Rational::pow2(e) * (x - Rational(mpq_class(n)) + Rational{1});
}

Rational h0_inverse_eval(const Rational& x) {
  if (x.sign() < 0) return -h0_inverse_eval(-x);
  if (x <= Rational{2}) return x;
  // x in [2^e, 2^(e+1)] is the image of [e+1, e+2].
  const mpz_class whole = x.floor();
  const auto e = static_cast<std::int64_t>(mpz_sizeinbase(whole.get_mpz_t(), 2)) - 1;
  return Rational(e) + x / Rational::pow2(e);
}

Rational h1_eval(const Rational& x) {
  if (x.sign() < 0) return Rational{1} - h1_eval(-x);
  const Rational n(mpq_class(x.floor()));
  const Rational a = Rational{1} - (n + Rational{2}).reciprocal();
  const Rational b = Rational{1} - (n + Rational{3}).reciprocal();
  return a + (x - n) * (b - a);
}

Rational h1_inverse_eval(const Rational& x) {
  if (x.sign() <= 0 || Rational{1} <= x)
    throw DomainError("h1^-1 is defined on (0, 1) only, got " + x.to_string());
  if (x < Rational(1, 2)) return -h1_inverse_eval(Rational{1} - x);
  // h1(n) = 1 - 1/(n+2) <= x < h1(n+1)  <=>  n + 2 <= 1/(1-x) < n + 3
  const Rational n(mpq_class((Rational{1} - x).reciprocal().floor() - 2));
  const Rational a = Rational{1} - (n + Rational{2}).reciprocal();
  const Rational b = Rational{1} - (n + Rational{3}).reciprocal();
  return n + (x - a) / (b - a);
}

// --- PeriodicLift ----------------------------------------------------------

namespace {

Rational interpolate(const std::vector<Rational>& ts, const std::vector<Rational>& vs,
                     const Rational& t) {
  auto it = std::upper_bound(ts.begin(), ts.end(), t);
  auto i = static_cast<std::size_t>(it - ts.begin());
  if (i == 0) i = 1;
  if (i >= ts.size()) i = ts.size() - 1;
  return vs[i - 1] + (t - ts[i - 1]) * (vs[i] - vs[i - 1]) / (ts[i] - ts[i - 1]);
}

}  // namespace

PeriodicLift::PeriodicLift() : ts_{Rational{0}, Rational{1}}, vs_{Rational{0}, Rational{1}} {}

PeriodicLift::PeriodicLift(std::vector<Rational> ts, std::vector<Rational> vs)
    : ts_(std::move(ts)), vs_(std::move(vs)) {}

PeriodicLift PeriodicLift::from_knots(std::vector<Rational> ts, std::vector<Rational> vs) {
  if (ts.size() != vs.size() || ts.size() < 2)
    throw InvariantError("lift core needs matching knot lists with at least two knots");
  if (ts.front() != Rational{0} || ts.back() != Rational{1})
    throw InvariantError("lift core knots must start at 0 and end at 1");
  if (vs.back() != vs.front() + Rational{1})
    throw InvariantError("lift core must satisfy core(1) = core(0) + 1, got core(0) = " +
                         vs.front().to_string() + ", core(1) = " + vs.back().to_string());
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (!(ts[i - 1] < ts[i])) throw InvariantError("lift core knots must be strictly increasing");
    if (!(vs[i - 1] < vs[i])) throw InvariantError("lift core values must be strictly increasing");
  }
  std::vector<Rational> kt{ts.front()}, kv{vs.front()};
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    const Rational before = (vs[i] - vs[i - 1]) / (ts[i] - ts[i - 1]);
    const Rational after = (vs[i + 1] - vs[i]) / (ts[i + 1] - ts[i]);
    if (before != after) {
      kt.push_back(ts[i]);
      kv.push_back(vs[i]);
    }
  }
  kt.push_back(ts.back());
  kv.push_back(vs.back());
  return PeriodicLift(std::move(kt), std::move(kv));
}

PeriodicLift PeriodicLift::translation(const Rational& shift) {
  return from_knots({Rational{0}, Rational{1}}, {shift, shift + Rational{1}});
}

Rational PeriodicLift::operator()(const Rational& x) const {
  const Rational n(mpq_class(x.floor()));
  return n + interpolate(ts_, vs_, x - n);
}

std::vector<Rational> PeriodicLift::core_slopes() const {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < ts_.size(); ++i) out.push_back((vs_[i] - vs_[i - 1]) / (ts_[i] - ts_[i - 1]));
  return out;
}

std::vector<Rational> PeriodicLift::core_breakpoints() const {
  const auto slopes = core_slopes();
  std::vector<Rational> out;
  if (slopes.front() != slopes.back()) out.push_back(Rational{0});
  for (std::size_t i = 1; i + 1 < ts_.size(); ++i) out.push_back(ts_[i]);
  return out;
}

bool PeriodicLift::is_identity() const { return *this == PeriodicLift(); }

PeriodicLift PeriodicLift::inverse() const {
  // Points (v, t) of the inverse graph, reduced mod 1 into [0, 1).
  std::vector<std::pair<Rational, Rational>> pts;
  for (std::size_t i = 0; i + 1 < ts_.size(); ++i) {
    const Rational shift(mpq_class(-vs_[i].floor()));
    pts.emplace_back(vs_[i] + shift, ts_[i] + shift);
  }
  std::sort(pts.begin(), pts.end());
  // Value at 0: the inverse is linear between the last point shifted down by
  // one period and the first point.
  Rational at_zero;
  if (pts.front().first.is_zero()) {
    at_zero = pts.front().second;
  } else {
    const Rational u0 = pts.back().first - Rational{1};
    const Rational w0 = pts.back().second - Rational{1};
    const auto& [u1, w1] = pts.front();
    at_zero = w0 + (Rational{0} - u0) * (w1 - w0) / (u1 - u0);
  }
  std::vector<Rational> ts{Rational{0}}, vs{at_zero};
  for (const auto& [u, w] : pts) {
    if (u.is_zero()) continue;
    ts.push_back(u);
    vs.push_back(w);
  }
  ts.push_back(Rational{1});
  vs.push_back(at_zero + Rational{1});
  return from_knots(std::move(ts), std::move(vs));
}

PeriodicLift compose(const PeriodicLift& a, const PeriodicLift& b) {
  std::vector<Rational> ts = b.knots();
  const PeriodicLift b_inv = b.inverse();
  const Rational lo = b(Rational{0});
  const Rational hi = b(Rational{1});
  const Rational first_shift(mpq_class(lo.floor()) - 1);
  for (const auto& u : a.knots()) {
    for (Rational shifted = u + first_shift; shifted <= hi; shifted += Rational{1})
      if (lo <= shifted) ts.push_back(b_inv(shifted));
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<Rational> vs;
  vs.reserve(ts.size());
  for (const auto& t : ts) vs.push_back(a(b(t)));
  return PeriodicLift::from_knots(std::move(ts), std::move(vs));
}

// --- StructuredMap ---------------------------------------------------------

namespace {

struct H0Tag {};
struct H0InverseTag {};
struct H1Tag {};
struct H1InverseTag {};
struct EtaData {
  FinitePLMap inner;
  PeriodicLift core;
};

}  // namespace

struct StructuredMap::Node {
  std::variant<H0Tag, H0InverseTag, H1Tag, H1InverseTag, PeriodicLift, EtaData,
               std::vector<StructuredMap>, FinitePLMap>
      data;
};

StructuredMap::StructuredMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

StructuredMap StructuredMap::h0() { return StructuredMap(std::make_shared<Node>(Node{H0Tag{}})); }
StructuredMap StructuredMap::h0_inverse() {
  return StructuredMap(std::make_shared<Node>(Node{H0InverseTag{}}));
}
StructuredMap StructuredMap::h1() { return StructuredMap(std::make_shared<Node>(Node{H1Tag{}})); }
StructuredMap StructuredMap::h1_inverse() {
  return StructuredMap(std::make_shared<Node>(Node{H1InverseTag{}}));
}
StructuredMap StructuredMap::lift(PeriodicLift l) {
  return StructuredMap(std::make_shared<Node>(Node{std::move(l)}));
}
StructuredMap StructuredMap::finite(FinitePLMap f) {
  return StructuredMap(std::make_shared<Node>(Node{std::move(f)}));
}
StructuredMap StructuredMap::composite(std::vector<StructuredMap> factors) {
  if (factors.empty()) return finite(FinitePLMap::identity());
  return StructuredMap(std::make_shared<Node>(Node{std::move(factors)}));
}

StructuredMap::Kind StructuredMap::kind() const {
  return static_cast<Kind>(node_->data.index());
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Rational eta_formula(const FinitePLMap& f, const Rational& x) {
  if (x.is_integer()) return x;
  const Rational n(mpq_class(x.floor()));
  return n + h1_eval(f(h1_inverse_eval(x - n)));
}

}  // namespace

Rational StructuredMap::operator()(const Rational& x) const {
  return std::visit(
      overloaded{
          [&](H0Tag) { return h0_eval(x); },
          [&](H0InverseTag) { return h0_inverse_eval(x); },
          [&](H1Tag) { return h1_eval(x); },
          [&](H1InverseTag) { return h1_inverse_eval(x); },
          [&](const PeriodicLift& l) { return l(x); },
          [&](const EtaData& e) { return eta_formula(e.inner, x); },
          [&](const std::vector<StructuredMap>& fs) {
            Rational v = x;
            for (auto it = fs.rbegin(); it != fs.rend(); ++it) v = (*it)(v);
            return v;
          },
          [&](const FinitePLMap& f) { return f(x); },
      },
      node_->data);
}

StructuredMap StructuredMap::inverse() const {
  return std::visit(
      overloaded{
          [](H0Tag) { return h0_inverse(); },
          [](H0InverseTag) { return h0(); },
          [](H1Tag) { return h1_inverse(); },
          [](H1InverseTag) { return h1(); },
          [](const PeriodicLift& l) { return lift(l.inverse()); },
          [](const EtaData& e) { return eta_embed(invert(e.inner)); },
          [](const std::vector<StructuredMap>& fs) {
            std::vector<StructuredMap> inv;
            inv.reserve(fs.size());
            for (auto it = fs.rbegin(); it != fs.rend(); ++it) inv.push_back(it->inverse());
            return composite(std::move(inv));
          },
          [](const FinitePLMap& f) { return finite(invert(f)); },
      },
      node_->data);
}

const PeriodicLift* StructuredMap::as_lift() const {
  if (const auto* l = std::get_if<PeriodicLift>(&node_->data)) return l;
  if (const auto* e = std::get_if<EtaData>(&node_->data)) return &e->core;
  return nullptr;
}

const FinitePLMap* StructuredMap::eta_inner() const {
  if (const auto* e = std::get_if<EtaData>(&node_->data)) return &e->inner;
  return nullptr;
}

const std::vector<StructuredMap>& StructuredMap::factors() const {
  static const std::vector<StructuredMap> none;
  if (const auto* fs = std::get_if<std::vector<StructuredMap>>(&node_->data)) return *fs;
  return none;
}

namespace {

std::vector<Rational> integers_in(const Interval& w) {
  std::vector<Rational> out;
  const mpz_class first = w.lo.is_integer() ? w.lo.floor() : w.lo.floor() + 1;
  const mpz_class last = w.hi.floor();
  for (mpz_class n = first; n <= last; ++n) out.emplace_back(mpq_class(n));
  return out;
}

std::vector<Rational> lift_breakpoints(const PeriodicLift& l, const Interval& w) {
  std::vector<Rational> out;
  const auto core = l.core_breakpoints();
  for (mpz_class n = w.lo.floor(); n <= w.hi.floor(); ++n) {
    const Rational shift{mpq_class(n)};
    for (const auto& b : core) {
      Rational x = b + shift;
      if (w.contains(x)) out.push_back(std::move(x));
    }
  }
  return out;
}

Interval image_window(const StructuredMap& f, const Interval& w) {
  Rational a = f(w.lo);
  Rational b = f(w.hi);
  if (b < a) std::swap(a, b);
  return Interval(std::move(a), std::move(b));
}

void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<Rational> StructuredMap::candidate_breakpoints(const Interval& w) const {
  std::vector<Rational> out = std::visit(
      overloaded{
          [&](H0Tag) {
            std::vector<Rational> v;
            for (auto& n : integers_in(w))
              if (Rational{2} <= abs(n)) v.push_back(std::move(n));
            return v;
          },
          [&](H0InverseTag) {
            // h0(B(h0)) = {+-2^m : m >= 1}
            std::vector<Rational> v;
            for (int sign : {-1, 1}) {
              for (std::int64_t m = 1;; ++m) {
                Rational p = Rational(sign) * Rational::pow2(m);
                if (sign > 0 ? w.hi < p : p < w.lo) break;
                if (w.contains(p)) v.push_back(std::move(p));
              }
            }
            return v;
          },
          [&](H1Tag) {
            std::vector<Rational> v;
            for (auto& n : integers_in(w))
              if (!n.is_zero()) v.push_back(std::move(n));
            return v;
          },
          [&](H1InverseTag) {
            if (w.lo.sign() <= 0 || Rational{1} <= w.hi)
              throw DomainError("h1^-1 breakpoints need a window inside (0, 1)");
            std::vector<Rational> v;
            const Interval pre(h1_inverse_eval(w.lo), h1_inverse_eval(w.hi));
            for (const auto& n : integers_in(pre))
              if (!n.is_zero()) v.push_back(h1_eval(n));
            return v;
          },
          [&](const PeriodicLift& l) { return lift_breakpoints(l, w); },
          [&](const EtaData& e) { return lift_breakpoints(e.core, w); },
          [&](const std::vector<StructuredMap>& fs) {
            // B(a o T) is contained in B(T) u T^-1(B(a)); walk from the
            // innermost factor outwards, pulling candidates back each time.
            std::vector<Rational> v;
            std::vector<StructuredMap> inverses;
            Interval cur = w;
            for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
              for (auto c : it->candidate_breakpoints(cur)) {
                for (auto inv = inverses.rbegin(); inv != inverses.rend(); ++inv) c = (*inv)(c);
                v.push_back(std::move(c));
              }
              cur = image_window(*it, cur);
              inverses.push_back(it->inverse());
            }
            return v;
          },
          [&](const FinitePLMap& f) {
            std::vector<Rational> v;
            for (const auto& b : f.breakpoints())
              if (w.contains(b)) v.push_back(b);
            return v;
          },
      },
      node_->data);
  sort_unique(out);
  return out;
}

std::vector<Rational> StructuredMap::breakpoints(const Interval& w) const {
  const auto candidates = candidate_breakpoints(w);
  // The map is linear between consecutive anchors, so interior candidates
  // can be tested by comparing the slopes on either side.
  std::vector<Rational> anchors;
  anchors.reserve(candidates.size() + 2);
  anchors.push_back(w.lo);
  anchors.insert(anchors.end(), candidates.begin(), candidates.end());
  anchors.push_back(w.hi);
  sort_unique(anchors);
  std::vector<Rational> values;
  values.reserve(anchors.size());
  for (const auto& a : anchors) values.push_back((*this)(a));

  std::vector<Rational> out;
  for (const auto& c : candidates) {
    if (c == w.lo || c == w.hi) {
      out.push_back(c);
      continue;
    }
    const auto i = static_cast<std::size_t>(std::lower_bound(anchors.begin(), anchors.end(), c) -
                                            anchors.begin());
    const Rational left = (values[i] - values[i - 1]) / (anchors[i] - anchors[i - 1]);
    const Rational right = (values[i + 1] - values[i]) / (anchors[i + 1] - anchors[i]);
    if (left != right) out.push_back(c);
  }
  return out;
}

// --- eta / lifts / psi -----------------------------------------------------

StructuredMap eta_embed(const FinitePLMap& f) {
  const Support s = f.support();
  if (!s.bounded())
    throw InvariantError("eta_embed needs a compactly supported map");
  if (s.empty()) {
    return StructuredMap(std::make_shared<StructuredMap::Node>(
        StructuredMap::Node{EtaData{f, PeriodicLift()}}));
  }
  // h1 f h1^-1 is linear between images under h1 of B(f), of integers in the
  // support, and of their f-preimages.
  const Interval& supp = *s.interval;
  std::vector<Rational> pre = f.breakpoints();
  pre.push_back(supp.lo);
  pre.push_back(supp.hi);
  const FinitePLMap f_inv = invert(f);
  for (const auto& n : integers_in(supp)) {
    pre.push_back(n);
    pre.push_back(f_inv(n));
  }
  sort_unique(pre);

  std::vector<Rational> ts{Rational{0}}, vs{Rational{0}};
  for (const auto& p : pre) {
    ts.push_back(h1_eval(p));
    vs.push_back(h1_eval(f(p)));
  }
  ts.push_back(Rational{1});
  vs.push_back(Rational{1});
  PeriodicLift core = PeriodicLift::from_knots(std::move(ts), std::move(vs));
  return StructuredMap(std::make_shared<StructuredMap::Node>(
      StructuredMap::Node{EtaData{f, std::move(core)}}));
}

StructuredMap lift_from_circle_core(const FinitePLMap& core) {
  if (!core.orientation_preserving())
    throw InvariantError("lift core must be orientation preserving");
  std::vector<Rational> ts{Rational{0}}, vs{core(Rational{0})};
  for (const auto& b : core.breakpoints()) {
    if (Rational{0} < b && b < Rational{1}) {
      ts.push_back(b);
      vs.push_back(core(b));
    }
  }
  ts.push_back(Rational{1});
  vs.push_back(core(Rational{1}));
  return StructuredMap::lift(PeriodicLift::from_knots(std::move(ts), std::move(vs)));
}

StructuredMap psi_conjugate(const StructuredMap& lift) {
  if (lift.as_lift() == nullptr)
    throw std::invalid_argument("psi_conjugate needs a periodic lift");
  return StructuredMap::composite({StructuredMap::h0(), lift, StructuredMap::h0_inverse()});
}

std::optional<GrowthWitness> find_growth_witness(const StructuredMap& lift,
                                                 const std::vector<Rational>& probes) {
  if (lift.as_lift() == nullptr) throw std::invalid_argument("growth witness needs a periodic lift");
  const std::int64_t q = abs(lift(Rational{0})).floor_i64() + 2;
  for (const auto& x : probes) {
    if (x.sign() < 0 || Rational{1} <= x)
      throw std::invalid_argument("growth probes must lie in [0, 1)");
    const Rational fx = lift(x);
    if (fx == x) continue;
    const std::int64_t k = fx.floor_i64();
    return GrowthWitness{x, k, fx - Rational(k), q};
  }
  return std::nullopt;
}

std::pair<StructuredMap, GrowthWitness> orient_upwards(const StructuredMap& lift,
                                                       const GrowthWitness& w) {
  if (w.x < lift(w.x)) return {lift, w};
  StructuredMap inv = lift.inverse();
  const std::int64_t q = abs(inv(Rational{0})).floor_i64() + 2;
  return {inv, GrowthWitness{w.y, -w.k, w.x, q}};
}

Rational growth_formula(const StructuredMap& lift, const GrowthWitness& w, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("growth_formula needs n >= 1");
  if (n + w.k < 0) throw std::invalid_argument("growth_formula needs n + k >= 0");
  const StructuredMap f0 = psi_conjugate(lift);
  const Rational p = Rational::pow2(n) * (Rational{1} + w.x);
  const Rational direct = f0(p);
  const Rational closed = Rational::pow2(n + w.k) * (Rational{1} + w.y);
  if (direct != closed) {
    std::ostringstream os;
    os << "growth formula mismatch at n = " << n << ": direct " << direct << ", closed form "
       << closed;
    throw GrowthFormulaMismatch(os.str());
  }
  return direct - p;
}

Interval conjugate_slope_bounds(const StructuredMap& lift) {
  const PeriodicLift* l = lift.as_lift();
  if (l == nullptr) throw std::invalid_argument("conjugate_slope_bounds needs a periodic lift");
  const auto slopes = l->core_slopes();
  const auto [lo, hi] = std::minmax_element(slopes.begin(), slopes.end());
  const std::int64_t q = abs((*l)(Rational{0})).floor_i64() + 2;
  return Interval(Rational::pow2(-q) * *lo, Rational::pow2(q) * *hi);
}

namespace {

GrowthRow growth_row(const StructuredMap& f0, const Rational& x, std::int64_t n) {
  GrowthRow r;
  r.n = n;
  r.point = Rational::pow2(n) * (Rational{1} + x);
  r.value = f0(r.point);
  r.displacement = r.value - r.point;
  return r;
}

}  // namespace

std::vector<GrowthRow> growth_table(const StructuredMap& lift, const Rational& x,
                                    std::int64_t n_max) {
  const StructuredMap f0 = psi_conjugate(lift);
  return kernels::parallel_map(static_cast<std::size_t>(std::max<std::int64_t>(n_max, 0)),
                               [&](std::size_t i) {
                                 return growth_row(f0, x, static_cast<std::int64_t>(i) + 1);
                               });
}

std::vector<GrowthRow> growth_table_serial(const StructuredMap& lift, const Rational& x,
                                           std::int64_t n_max) {
  const StructuredMap f0 = psi_conjugate(lift);
  return kernels::serial_map(static_cast<std::size_t>(std::max<std::int64_t>(n_max, 0)),
                             [&](std::size_t i) {
                               return growth_row(f0, x, static_cast<std::int64_t>(i) + 1);
                             });
}

std::string growth_csv(const std::vector<GrowthRow>& rows, int digits) {
  std::ostringstream os;
  os << "n,point,value,displacement,point_decimal,value_decimal,displacement_decimal\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.point << ',' << r.value << ',' << r.displacement << ','
       << r.point.to_decimal(digits) << ',' << r.value.to_decimal(digits) << ','
       << r.displacement.to_decimal(digits) << '\n';
  }
  return os.str();
}

}  // namespace qiline
