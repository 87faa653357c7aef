#pragma once

// Thompson's group F = < x_0, x_1, ... | x_i x_j x_i^-1 = x_{j+1}, i < j >
// realized by dyadic PL homeomorphisms supported in [0, 1].
//
// Words act on the right: in the word u v the letter u acts first, so
// realize(u v) = realize(v) o realize(u). With this convention the standard
// maps below satisfy the defining relations literally, and
// x_n = x_0^(n-1) x_1 x_0^-(n-1) as words.

#include "qiline/pl_map.hpp"
#include "qiline/structured_map.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qiline {

struct Letter {
  std::int64_t index = 0;
  int exponent = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A freely reduced word in the generators x_i.
class ThompsonWord {
public:
  ThompsonWord() = default;
  explicit ThompsonWord(std::vector<Letter> letters);

  /// Parses e.g. "x0 x1 x0^-1" or "x2^-3"; "", "1" and "e" denote the empty
  /// word. Throws std::invalid_argument on malformed input.
  static ThompsonWord parse(std::string_view text);
  static ThompsonWord generator(std::int64_t i, int exponent = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }
  ThompsonWord inverse() const;
  /// Rewrites every x_n with n >= 2 in terms of x_0 and x_1.
  ThompsonWord expanded() const;
  std::string to_string() const;

  friend ThompsonWord operator*(const ThompsonWord& a, const ThompsonWord& b);
  friend bool operator==(const ThompsonWord&, const ThompsonWord&) = default;

private:
  std::vector<Letter> letters_;
};

/// Standard PL realization of x_i. x_0 has knots (1/2, 1/4), (3/4, 1/2) and
/// is the identity outside [0, 1]; x_1 is a half-size copy of x_0 on [1/2, 1];
/// x_n = x_0^-(n-1) o x_1 o x_0^(n-1) as maps.
FinitePLMap generator(std::int64_t i);

FinitePLMap realize(const ThompsonWord& w);

/// realize(x_i x_j x_i^-1) == realize(x_{j+1}).
bool check_relation(std::int64_t i, std::int64_t j);

struct RelationResult {
  std::int64_t i = 0;
  std::int64_t j = 0;
  bool holds = false;
};

/// All relations with 0 <= i < j <= j_max, ordered by (i, j), checked in
/// parallel.
std::vector<RelationResult> check_relations(std::int64_t j_max);
std::vector<RelationResult> check_relations_serial(std::int64_t j_max);

struct DyadicCertificate {
  bool breakpoints_dyadic = false;
  bool slopes_powers_of_two = false;
  bool support_in_unit_interval = false;

  bool all() const { return breakpoints_dyadic && slopes_powers_of_two && support_in_unit_interval; }
};

DyadicCertificate certify_dyadic(const FinitePLMap& f);

/// True iff w represents the identity.
bool word_problem(const ThompsonWord& w);

/// psi(eta(realize(w))).
StructuredMap embed_to_qi(const ThompsonWord& w);

/// {h1(j / denominator) : 0 <= j <= denominator}, ascending, all in [1/2, 2/3].
std::vector<Rational> dyadic_probes(std::int64_t denominator);

struct EmbeddingWitness {
  /// The lift of eta(realize(w)), or its inverse, chosen so that it moves
  /// witness.x upwards.
  StructuredMap lift;
  GrowthWitness witness;
  /// Probe denominator that produced the witness.
  std::int64_t denominator = 16;
};

/// Searches the probes h1(d), d dyadic with denominator 16, 32, ... until a
/// moved point is found. Returns nullopt for the trivial element; for any
/// other word the search terminates.
std::optional<EmbeddingWitness> embedding_witness(const ThompsonWord& w);

}  // namespace qiline
