// qiline: command-line front end.
//
//   qiline map compose F G        serialize F o G
//   qiline map invert F
//   qiline map eval F --at X
//   qiline approximate --oracle NAME [--c C] [--n N] [--out PATH]
//   qiline growth (--word W | --lift CORE) [--n N] [--digits D]
//   qiline relations [--jmax J]
//   qiline word-problem --word W
//   qiline realize --word W
//
// Exit status: 0 success, 1 contract violation, 2 usage or parse error.

#include "qiline/io.hpp"
#include "qiline/pl_map.hpp"
#include "qiline/qi_analysis.hpp"
#include "qiline/qi_approx.hpp"
#include "qiline/structured_map.hpp"
#include "qiline/thompson.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>

using namespace qiline;

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class FileParseError : public UsageError {
public:
  using UsageError::UsageError;
};

// Contract violations detected by the tool itself.
class ContractError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string load(const std::string& path) {
  try {
    return read_file(path);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

FinitePLMap load_map(const std::string& path) {
  try {
    return parse_pl_map(load(path));
  } catch (const ParseError& e) {
    throw FileParseError(path + ": " + e.what());
  }
}

Rational parse_rational(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  try {
    write_file(path, text);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

// --- approximate ------------------------------------------------------------

struct ApproxConfig {
  std::string oracle = "identity";
  std::optional<std::int64_t> c;
  std::int64_t n = 10;
  std::string out;
  std::uint64_t seed = 1;
  std::string slope = "2";
  std::int64_t noise = 1;
  std::string map_path;
  std::string table_path;
  bool negate = false;
};

struct BuiltOracle {
  QIOracle oracle;
  std::vector<kernels::RationalPair> check_pairs;
};

BuiltOracle make_oracle(const ApproxConfig& cfg) {
  std::optional<QIOracle> o;
  std::vector<kernels::RationalPair> pairs;
  if (cfg.oracle == "identity") {
    o = identity_oracle();
  } else if (cfg.oracle == "linear") {
    o = linear_oracle(parse_rational(cfg.slope));
  } else if (cfg.oracle == "finite-pl") {
    if (cfg.map_path.empty()) throw UsageError("--oracle finite-pl needs --map FILE");
    FinitePLMap f = load_map(cfg.map_path);
    if (cfg.negate) f = compose(FinitePLMap::affine(Rational{-1}, Rational{0}), f);
    o = pl_map_oracle(f);
  } else if (cfg.oracle == "sqrt-drift") {
    o = sqrt_drift_oracle();
  } else if (cfg.oracle == "bounded-noise") {
    o = bounded_noise_oracle(cfg.noise, cfg.seed);
  } else if (cfg.oracle == "block-swap") {
    o = block_swap_oracle();
  } else if (cfg.oracle == "table") {
    if (cfg.table_path.empty()) throw UsageError("--oracle table needs --table FILE");
    std::map<std::int64_t, Rational> table;
    for (const auto& [x, y] : parse_pairs(load(cfg.table_path))) {
      if (!x.is_integer()) throw UsageError("table keys must be integers, got " + x.to_string());
      table[x.floor_i64()] = cfg.negate ? -y : y;
    }
    if (table.size() < 2) throw UsageError("table oracle needs at least two entries");
    if (!cfg.c) throw UsageError("--oracle table needs --c");
    std::vector<std::int64_t> keys;
    for (const auto& kv : table) keys.push_back(kv.first);
    for (std::size_t i = 1; i < keys.size(); ++i) pairs.emplace_back(Rational(keys[i - 1]), Rational(keys[i]));
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
    for (int i = 0; i < 1000; ++i) {
      const auto a = keys[pick(rng)], b = keys[pick(rng)];
      if (a != b) pairs.emplace_back(Rational(a), Rational(b));
    }
    o = table_oracle(std::move(table), *cfg.c);
  } else {
    throw UsageError("unknown oracle '" + cfg.oracle +
                     "' (identity, linear, finite-pl, sqrt-drift, bounded-noise, block-swap, table)");
  }
  if (cfg.negate && cfg.oracle != "finite-pl" && cfg.oracle != "table") o = negated(*o);
  if (cfg.c) {
    if (*cfg.c < 2) throw UsageError("--c must be an integer >= 2");
    o = QIOracle(o->name, o->eval, *cfg.c);
  }
  if (pairs.empty()) pairs = sample_integer_pairs(cfg.seed, 1000, -1000000, 1000000);
  return {*o, std::move(pairs)};
}

std::string grid_csv(const ApproximationGrid& grid) {
  std::ostringstream os;
  os << "k,x_k,y_k,eval_y_k\n";
  for (std::int64_t k = -grid.n; k <= grid.n; ++k)
    os << k << ',' << grid.x(k * grid.block()) << ',' << grid.y(k) << ',' << grid.f_at(k) << '\n';
  return os.str();
}

int cmd_approximate(const ApproxConfig& cfg) {
  if (cfg.n < 1) throw UsageError("--n must be >= 1");
  const auto built = make_oracle(cfg);
  const QIOracle& f = built.oracle;
  const auto check = self_check(f, built.check_pairs);
  if (!check.holds) {
    std::ostringstream os;
    os << "oracle '" << f.name << "' is not a " << f.c << "-quasi-isometry: inequality fails at ("
       << check.violated->first << ", " << check.violated->second << ")";
    throw ContractError(os.str());
  }
  const auto grid = build_grid(f, cfg.n);
  const auto g = pl_approximate(grid);
  const auto window = approximation_slope_window(f.c);
  for (const auto& s : g.slope_set())
    if (!window.contains(s))
      throw ContractError("slope " + s.to_string() + " outside [" + window.lo.to_string() + ", " +
                          window.hi.to_string() + "]");
  const Rational sup = agreement_report(f, g, grid);
  std::cerr << "oracle " << f.name << ", C = " << f.c << ", N = " << cfg.n << ": " << g.breakpoints().size()
            << " breakpoints, slopes in [" << window.lo << ", " << window.hi << "], sup |f - g| = " << sup
            << " <= " << agreement_bound(f.c) << "\n";
  if (cfg.out.empty()) {
    std::cout << serialize(g) << "\n" << grid_csv(grid);
  } else {
    emit(serialize(g), cfg.out);
    emit(grid_csv(grid), cfg.out + ".grid.csv");
  }
  return 0;
}

// --- growth -----------------------------------------------------------------

struct GrowthConfig {
  std::optional<std::string> word;
  std::string lift_path;
  std::optional<std::string> x;
  std::int64_t n = 20;
  int digits = 20;
  std::string out;
};

int cmd_growth(const GrowthConfig& cfg) {
  if (cfg.n < 1) throw UsageError("--n must be >= 1");
  if (cfg.digits < 1) throw UsageError("--digits must be >= 1");
  if (cfg.word.has_value() == !cfg.lift_path.empty()) throw UsageError("growth needs exactly one of --word, --lift");

  std::optional<StructuredMap> lift;
  std::optional<GrowthWitness> witness;
  if (cfg.word) {
    const auto w = ThompsonWord::parse(*cfg.word);
    if (auto ew = embedding_witness(w)) {
      if (*ew->lift.as_lift() != *eta_embed(realize(w)).as_lift())
        std::cerr << "word moves the probe downwards; tabulating its inverse " << w.inverse().to_string() << "\n";
      lift = ew->lift;
      witness = ew->witness;
    } else {
      lift = eta_embed(realize(w));
    }
  } else {
    lift = lift_from_circle_core(load_map(cfg.lift_path));
    std::vector<Rational> probes;
    for (std::int64_t j = 0; j < 64; ++j) probes.emplace_back(j, 64);
    if (auto found = find_growth_witness(*lift, probes)) {
      if ((*lift)(found->x) < found->x) std::cerr << "lift moves the probe downwards; tabulating its inverse\n";
      auto [up, w] = orient_upwards(*lift, *found);
      lift = up;
      witness = w;
    }
  }
  Rational x = witness ? witness->x : Rational{0};
  if (cfg.x) {
    x = parse_rational(*cfg.x);
    if (x.sign() < 0 || Rational{1} <= x) throw UsageError("--x must lie in [0, 1)");
    witness.reset();
  }
  const auto rows = growth_table(*lift, x, cfg.n);
  if (witness) {
    std::cerr << "witness x = " << witness->x << ", k = " << witness->k << ", y = " << witness->y
              << ", q = " << witness->q << "\n";
    for (std::int64_t n = 1; n <= cfg.n; ++n) growth_formula(*lift, *witness, n);
  }
  emit(growth_csv(rows, cfg.digits), cfg.out);
  return 0;
}

// --- relations ----------------------------------------------------------------

int cmd_relations(std::int64_t j_max) {
  if (j_max < 0) throw UsageError("--jmax must be >= 0");
  const auto results = check_relations(j_max);
  std::map<std::pair<std::int64_t, std::int64_t>, bool> cell;
  bool all = true;
  for (const auto& r : results) {
    cell[{r.i, r.j}] = r.holds;
    all = all && r.holds;
  }
  if (j_max >= 1) {
    std::cout << "i\\j";
    for (std::int64_t j = 1; j <= j_max; ++j) std::cout << ' ' << j;
    std::cout << '\n';
    for (std::int64_t i = 0; i < j_max; ++i) {
      std::cout << i << "  ";
      for (std::int64_t j = 1; j <= j_max; ++j) {
        const auto it = cell.find({i, j});
        std::cout << ' ' << (it == cell.end() ? '.' : (it->second ? 'P' : 'F'));
      }
      std::cout << '\n';
    }
  }
  std::size_t held = 0;
  for (const auto& r : results) held += r.holds ? 1 : 0;
  std::cout << held << "/" << results.size() << " relations hold\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact PL maps, quasi-isometry approximation and Thompson group embeddings"};
  app.require_subcommand(1);

  std::string out;
  int digits = 20;

  auto* map = app.add_subcommand("map", "PL map algebra");
  map->require_subcommand(1);
  std::string fa, fb, at;
  auto* compose_cmd = map->add_subcommand("compose", "F o G");
  compose_cmd->add_option("F", fa, "outer map file")->required();
  compose_cmd->add_option("G", fb, "inner map file")->required();
  compose_cmd->add_option("--out", out, "output file (default stdout)");
  auto* invert_cmd = map->add_subcommand("invert", "F^-1");
  invert_cmd->add_option("F", fa, "map file")->required();
  invert_cmd->add_option("--out", out, "output file (default stdout)");
  auto* eval_cmd = map->add_subcommand("eval", "F(x)");
  eval_cmd->add_option("F", fa, "map file")->required();
  eval_cmd->add_option("--at,x", at, "point, e.g. 7/3")->required();
  eval_cmd->add_option("--digits", digits, "also print a decimal with this many significant digits");

  ApproxConfig acfg;
  std::int64_t c_value = 0;
  auto* approx = app.add_subcommand("approximate", "bounded-slope PL approximation of an oracle");
  approx->add_option("--oracle", acfg.oracle,
                     "identity | linear | finite-pl | sqrt-drift | bounded-noise | block-swap | table");
  auto* c_opt = approx->add_option("--c", c_value, "quasi-isometry constant (default: the family's own)");
  approx->add_option("--n", acfg.n, "window: grid points y_k for |k| <= N");
  approx->add_option("--out", acfg.out, "map file; the grid goes to OUT.grid.csv (default stdout)");
  approx->add_option("--seed", acfg.seed, "seed for noise and self-check sampling");
  approx->add_option("--slope", acfg.slope, "slope of the linear oracle");
  approx->add_option("--r", acfg.noise, "noise amplitude R of bounded-noise");
  approx->add_option("--map", acfg.map_path, "map file for finite-pl");
  approx->add_option("--table", acfg.table_path, "two-column integer,rational file for table");
  approx->add_flag("--negate", acfg.negate, "approximate -f (for end-reversing input)");

  GrowthConfig gcfg;
  std::string word, x_text;
  auto* growth = app.add_subcommand("growth", "displacement table of psi(lift) along 2^n (1 + x)");
  growth->alias("embed-growth");
  auto* word_opt = growth->add_option("--word", word, "Thompson word, e.g. \"x0 x1^-1\"");
  growth->add_option("--lift", gcfg.lift_path, "circle core map file on [0, 1]");
  auto* x_opt = growth->add_option("--x", x_text, "probe in [0, 1) (default: a growth witness)");
  growth->add_option("--n", gcfg.n, "rows n = 1..N");
  growth->add_option("--digits", gcfg.digits, "significant digits of the decimal columns");
  growth->add_option("--out", gcfg.out, "CSV file (default stdout)");

  std::int64_t j_max = 6;
  auto* relations = app.add_subcommand("relations", "check x_i x_j x_i^-1 = x_{j+1} for 0 <= i < j <= jmax");
  relations->add_option("--jmax", j_max, "largest j");

  auto* wp = app.add_subcommand("word-problem", "decide whether a word is trivial");
  wp->add_option("--word", word, "Thompson word")->required();
  auto* realize_cmd = app.add_subcommand("realize", "PL map of a word");
  realize_cmd->add_option("--word", word, "Thompson word")->required();
  realize_cmd->add_option("--out", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*compose_cmd) {
      emit(serialize(compose(load_map(fa), load_map(fb))), out);
    } else if (*invert_cmd) {
      emit(serialize(invert(load_map(fa))), out);
    } else if (*eval_cmd) {
      if (digits < 1) throw UsageError("--digits must be >= 1");
      const Rational v = load_map(fa)(parse_rational(at));
      std::cout << v;
      if (eval_cmd->count("--digits")) std::cout << ' ' << v.to_decimal(digits);
      std::cout << '\n';
    } else if (*approx) {
      if (c_opt->count()) acfg.c = c_value;
      return cmd_approximate(acfg);
    } else if (*growth) {
      if (word_opt->count()) gcfg.word = word;
      if (x_opt->count()) gcfg.x = x_text;
      return cmd_growth(gcfg);
    } else if (*relations) {
      return cmd_relations(j_max);
    } else if (*wp) {
      std::cout << (word_problem(ThompsonWord::parse(word)) ? "trivial" : "nontrivial") << '\n';
    } else if (*realize_cmd) {
      emit(serialize(realize(ThompsonWord::parse(word))), out);
    }
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const FileParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 1;
  } catch (const ScanExceeded& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return 1;
  } catch (const OracleDomainError& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return 1;
  } catch (const ContractError& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return 1;
  } catch (const GrowthFormulaMismatch& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
