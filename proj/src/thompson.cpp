#include "qiline/thompson.hpp"

#include "qiline/kernels.hpp"

#include <cctype>
#include <mutex>
#include <sstream>

namespace qiline {

ThompsonWord::ThompsonWord(std::vector<Letter> letters) {
  for (const auto& l : letters) {
    if (l.index < 0) throw std::invalid_argument("generator index must be non-negative");
    if (l.exponent != 1 && l.exponent != -1) throw std::invalid_argument("letter exponent must be +-1");
    if (!letters_.empty() && letters_.back().index == l.index && letters_.back().exponent == -l.exponent)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }
}

ThompsonWord ThompsonWord::generator(std::int64_t i, int exponent) {
  return ThompsonWord({Letter{i, exponent}});
}

ThompsonWord ThompsonWord::parse(std::string_view text) {
  std::vector<Letter> letters;
  std::size_t pos = 0;
  const auto fail = [&](const std::string& why) {
    return std::invalid_argument("bad word '" + std::string(text) + "' at offset " +
                                 std::to_string(pos) + ": " + why);
  };
  const auto skip_space = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*'))
      ++pos;
  };
  const auto read_int = [&]() -> std::int64_t {
    const std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    const std::size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits) throw fail("expected an integer");
    return std::stoll(std::string(text.substr(start, pos - start)));
  };

  skip_space();
  if (pos < text.size() && (text.substr(pos) == "1" || text.substr(pos) == "e")) return {};
  while (true) {
    skip_space();
    if (pos >= text.size()) break;
    if (text[pos] != 'x') throw fail("expected 'x'");
    ++pos;
    const std::int64_t index = read_int();
    if (index < 0) throw fail("negative generator index");
    std::int64_t power = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      power = read_int();
      if (power == 0) throw fail("zero exponent");
    }
    const int sign = power < 0 ? -1 : 1;
    for (std::int64_t r = 0; r < (power < 0 ? -power : power); ++r) letters.push_back({index, sign});
  }
  return ThompsonWord(std::move(letters));
}

ThompsonWord ThompsonWord::inverse() const {
  std::vector<Letter> inv;
  inv.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) inv.push_back({it->index, -it->exponent});
  return ThompsonWord(std::move(inv));
}

ThompsonWord ThompsonWord::expanded() const {
  std::vector<Letter> out;
  for (const auto& l : letters_) {
    if (l.index < 2) {
      out.push_back(l);
      continue;
    }
    const std::int64_t m = l.index - 1;
    for (std::int64_t r = 0; r < m; ++r) out.push_back({0, 1});
    out.push_back({1, l.exponent});
    for (std::int64_t r = 0; r < m; ++r) out.push_back({0, -1});
  }
  return ThompsonWord(std::move(out));
}

std::string ThompsonWord::to_string() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << ' ';
    os << 'x' << letters_[i].index;
    if (letters_[i].exponent < 0) os << "^-1";
  }
  return os.str();
}

ThompsonWord operator*(const ThompsonWord& a, const ThompsonWord& b) {
  std::vector<Letter> all = a.letters_;
  all.insert(all.end(), b.letters_.begin(), b.letters_.end());
  return ThompsonWord(std::move(all));
}

// --- realization -----------------------------------------------------------

namespace {

FinitePLMap x0_map() {
  return FinitePLMap::compactly_supported(
      {Rational{0}, Rational(1, 2), Rational(3, 4), Rational{1}},
      {Rational{0}, Rational(1, 4), Rational(1, 2), Rational{1}});
}

FinitePLMap x1_map() {
  return FinitePLMap::compactly_supported(
      {Rational(1, 2), Rational(3, 4), Rational(7, 8), Rational{1}},
      {Rational(1, 2), Rational(5, 8), Rational(3, 4), Rational{1}});
}

class GeneratorCache {
public:
  FinitePLMap get(std::int64_t i) {
    std::lock_guard lock(mutex_);
    if (maps_.empty()) {
      maps_.push_back(x0_map());
      maps_.push_back(x1_map());
    }
    // x_n = x_0^-1 o x_{n-1} o x_0
    while (static_cast<std::int64_t>(maps_.size()) <= i)
      maps_.push_back(compose(invert(maps_[0]), compose(maps_.back(), maps_[0])));
    return maps_[static_cast<std::size_t>(i)];
  }

private:
  std::mutex mutex_;
  std::vector<FinitePLMap> maps_;
};

GeneratorCache& generator_cache() {
  static GeneratorCache cache;
  return cache;
}

}  // namespace

FinitePLMap generator(std::int64_t i) {
  if (i < 0) throw std::invalid_argument("generator index must be non-negative");
  return generator_cache().get(i);
}

FinitePLMap realize(const ThompsonWord& w) {
  FinitePLMap out;
  for (const auto& l : w.letters()) {
    const FinitePLMap g = generator(l.index);
    out = compose(l.exponent > 0 ? g : invert(g), out);
  }
  return out;
}

bool check_relation(std::int64_t i, std::int64_t j) {
  if (!(0 <= i && i < j)) throw std::invalid_argument("relation needs 0 <= i < j");
  const ThompsonWord lhs({Letter{i, 1}, Letter{j, 1}, Letter{i, -1}});
  return realize(lhs) == generator(j + 1);
}

namespace {

std::vector<std::pair<std::int64_t, std::int64_t>> relation_pairs(std::int64_t j_max) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (std::int64_t i = 0; i <= j_max; ++i)
    for (std::int64_t j = i + 1; j <= j_max; ++j) pairs.emplace_back(i, j);
  return pairs;
}

}  // namespace

std::vector<RelationResult> check_relations(std::int64_t j_max) {
  const auto pairs = relation_pairs(j_max);
  // Fill the generator cache up front so workers only read it.
  if (j_max >= 0) generator(j_max + 1);
  return kernels::parallel_map(pairs.size(), [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    return RelationResult{i, j, check_relation(i, j)};
  });
}

std::vector<RelationResult> check_relations_serial(std::int64_t j_max) {
  const auto pairs = relation_pairs(j_max);
  return kernels::serial_map(pairs.size(), [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    return RelationResult{i, j, check_relation(i, j)};
  });
}

DyadicCertificate certify_dyadic(const FinitePLMap& f) {
  DyadicCertificate c;
  c.breakpoints_dyadic = true;
  for (const auto& b : f.breakpoints()) c.breakpoints_dyadic = c.breakpoints_dyadic && b.is_dyadic();
  c.slopes_powers_of_two = true;
  for (const auto& s : f.slope_set())
    c.slopes_powers_of_two = c.slopes_powers_of_two && s.sign() > 0 && s.is_power_of_two();
  const Support s = f.support();
  c.support_in_unit_interval =
      s.empty() || (s.kind == Support::Kind::Bounded && Rational{0} <= s.interval->lo &&
                    s.interval->hi <= Rational{1});
  return c;
}

bool word_problem(const ThompsonWord& w) { return realize(w).is_identity(); }

StructuredMap embed_to_qi(const ThompsonWord& w) { return psi_conjugate(eta_embed(realize(w))); }

std::vector<Rational> dyadic_probes(std::int64_t denominator) {
  if (denominator < 1) throw std::invalid_argument("probe denominator must be positive");
  std::vector<Rational> out;
  for (std::int64_t j = 0; j <= denominator; ++j) out.push_back(h1_eval(Rational(j, denominator)));
  return out;
}

std::optional<EmbeddingWitness> embedding_witness(const ThompsonWord& w) {
  const FinitePLMap f = realize(w);
  if (f.is_identity()) return std::nullopt;
  const StructuredMap lift = eta_embed(f);
  for (std::int64_t den = 16;; den *= 2) {
    if (auto found = find_growth_witness(lift, dyadic_probes(den))) {
      auto [oriented, witness] = orient_upwards(lift, *found);
      return EmbeddingWitness{std::move(oriented), witness, den};
    }
    if (den > (std::int64_t{1} << 40))
      throw std::logic_error("no growth witness found for nontrivial word " + w.to_string());
  }
}

}  // namespace qiline
