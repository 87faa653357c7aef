#include "qiline/io.hpp"
#include "qiline/qi_approx.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qiline;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int status = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qiline_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  CliResult run(const std::string& args) const {
    const std::string err_path = path("stderr.txt");
    const std::string cmd = std::string(QILINE_CLI) + " " + args + " 2>" + err_path;
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.err = slurp(err_path);
    return r;
  }

  fs::path dir_;
};

const char* kTent = "left_slope = 1\nright_slope = 3\n(0, 0)\n(1, 2)\n";

}  // namespace

TEST_F(Cli, ComposeWithInverseIsIdentity) {
  const auto f = write("f.map", kTent);
  ASSERT_EQ(run("map invert " + f + " --out " + path("g.map")).status, 0);
  const auto r = run("map compose " + f + " " + path("g.map"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, serialize(FinitePLMap::identity()));
}

TEST_F(Cli, EvalExact) {
  const auto r = run("map eval " + write("f.map", kTent) + " --at 7/3");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "6\n");
  EXPECT_EQ(run("map eval " + write("f.map", kTent) + " --at 1/3").out, "2/3\n");
}

TEST_F(Cli, RoundTripByteIdentical) {
  const auto f = write("f.map", "# comment\nleft_slope=1\nright_slope = 3\n( 0,0 )\n(1/2, 1)\n(1, 2)\n");
  const auto once = run("map invert " + f + " --out " + path("a.map"));
  ASSERT_EQ(once.status, 0);
  const auto twice = run("map invert " + path("a.map") + " --out " + path("b.map"));
  ASSERT_EQ(twice.status, 0);
  const auto thrice = run("map invert " + path("b.map"));
  EXPECT_EQ(slurp(path("a.map")), thrice.out);
  EXPECT_EQ(slurp(path("b.map")), std::string(kTent));
  EXPECT_EQ(serialize(parse_pl_map(slurp(path("a.map")))), slurp(path("a.map")));
}

TEST_F(Cli, ParseAndInvariantErrors) {
  auto r = run("map invert " + write("bad.map", "left_slope = 1\nright_slope = 1\n(0, 1\n"));
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  r = run("map invert " + write("bad.map", "left_slope = 1\nright_slope = 1\n(0, 1)\n(1, 0)\n"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("invariant"), std::string::npos) << r.err;
  EXPECT_EQ(run("map invert " + path("missing.map")).status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("approximate --n notanumber").status, 2);
  EXPECT_EQ(run("approximate --oracle nope").status, 2);
}

TEST_F(Cli, ApproximateIdentityGrid) {
  const auto r = run("approximate --oracle identity --c 2 --n 4 --out " + path("id.map"));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(parse_pl_map(slurp(path("id.map"))).is_identity());
  std::istringstream csv(slurp(path("id.map.grid.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "k,x_k,y_k,eval_y_k");
  for (int k = -4; k <= 4; ++k) {
    std::getline(csv, line);
    const std::string v = std::to_string(8 * k);
    EXPECT_EQ(line, std::to_string(k) + "," + v + "," + v + "," + v);
  }
}

TEST_F(Cli, ApproximateSqrtDriftSlopes) {
  const auto r = run("approximate --oracle sqrt-drift --c 2 --n 50 --out " + path("sq.map"));
  ASSERT_EQ(r.status, 0) << r.err;
  const auto g = parse_pl_map(slurp(path("sq.map")));
  for (const auto& s : g.slope_set()) EXPECT_TRUE(approximation_slope_window(2).contains(s)) << s;
  // deterministic
  ASSERT_EQ(run("approximate --oracle sqrt-drift --c 2 --n 50 --out " + path("sq2.map")).status, 0);
  EXPECT_EQ(slurp(path("sq.map")), slurp(path("sq2.map")));
  EXPECT_EQ(slurp(path("sq.map.grid.csv")), slurp(path("sq2.map.grid.csv")));
}

TEST_F(Cli, ApproximateOtherFamilies) {
  EXPECT_EQ(run("approximate --oracle bounded-noise --r 2 --seed 9 --n 5").status, 0);
  EXPECT_EQ(run("approximate --oracle block-swap --n 5").status, 0);
  EXPECT_EQ(run("approximate --oracle linear --slope 1/3 --n 5").status, 0);
  EXPECT_EQ(run("approximate --oracle finite-pl --map " + write("f.map", kTent) + " --n 3").status, 0);
  // end-reversing input is approximated after negation
  const auto rev = write("r.map", "left_slope = -2\nright_slope = -2\nintercept = 0\n");
  EXPECT_EQ(run("approximate --oracle finite-pl --map " + rev + " --n 3").status, 2);
  EXPECT_EQ(run("approximate --oracle finite-pl --negate --map " + rev + " --n 3").status, 0);
}

TEST_F(Cli, ApproximateRejectsBadConstant) {
  const auto r = run("approximate --oracle linear --slope 3 --c 2 --n 3");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("not a 2-quasi-isometry"), std::string::npos) << r.err;
}

TEST_F(Cli, TableMissingInteger) {
  const auto t = write("t.csv", "x,f\n0,0\n1,1\n2,2\n3,3\n");
  const auto r = run("approximate --oracle table --table " + t + " --c 2 --n 1");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("no entry for integer 4"), std::string::npos) << r.err;
}

TEST_F(Cli, TableCoveringTheGrid) {
  std::string text;
  for (int x = -40; x <= 40; ++x) text += std::to_string(x) + "," + std::to_string(2 * x) + "\n";
  const auto r = run("approximate --oracle table --table " + write("t.csv", text) + " --c 2 --n 2");
  EXPECT_EQ(r.status, 0) << r.err;
}

TEST_F(Cli, GrowthTranslationLift) {
  const auto core = write("t1.map", "left_slope = 1\nright_slope = 1\nintercept = 1\n");
  const auto r = run("growth --lift " + core + " --n 12");
  ASSERT_EQ(r.status, 0) << r.err;
  std::istringstream csv(r.out);
  std::string line;
  std::getline(csv, line);
  for (int n = 1; n <= 12; ++n) {
    std::getline(csv, line);
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    ASSERT_EQ(cols.size(), 7u);
    EXPECT_EQ(cols[3], Rational::pow2(n).to_string());
  }
}

TEST_F(Cli, GrowthWords) {
  auto r = run("growth --word '' --n 10");
  ASSERT_EQ(r.status, 0) << r.err;
  std::istringstream empty(r.out);
  std::string line;
  std::getline(empty, line);
  while (std::getline(empty, line)) EXPECT_NE(line.find(",0,"), std::string::npos) << line;

  r = run("embed-growth --word x0 --n 20 --digits 5");
  ASSERT_EQ(r.status, 0) << r.err;
  std::istringstream csv(r.out);
  std::getline(csv, line);
  Rational prev{0};
  int rows = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    const Rational d = Rational::parse(cols[3]);
    EXPECT_LT(Rational{0}, d);
    if (rows > 0) EXPECT_LE(Rational{2} * prev, d);
    prev = d;
    ++rows;
  }
  EXPECT_EQ(rows, 20);
  EXPECT_EQ(run("growth --n 3").status, 2);
  EXPECT_EQ(run("growth --word x0 --digits 0").status, 2);
}

TEST_F(Cli, Relations) {
  auto r = run("relations --jmax 3");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("6/6 relations hold"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find('F'), std::string::npos);
  r = run("relations --jmax 0");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "0/0 relations hold\n");
  const auto t0 = std::chrono::steady_clock::now();
  r = run("relations --jmax 6");
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 10.0);
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("21/21 relations hold"), std::string::npos) << r.out;
}

TEST_F(Cli, WordProblemAndRealize) {
  EXPECT_EQ(run("word-problem --word 'x0 x1 x0^-1 x2^-1'").out, "trivial\n");
  EXPECT_EQ(run("word-problem --word 'x0 x1 x0^-1 x1^-1'").out, "nontrivial\n");
  EXPECT_EQ(run("word-problem --word ''").out, "trivial\n");
  EXPECT_EQ(run("word-problem --word 'y1'").status, 2);
  const auto r = run("realize --word 'x0 x1 x0^-1'");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, run("realize --word x2").out);
}
