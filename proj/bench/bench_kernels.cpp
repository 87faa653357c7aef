// Serial reference kernels against their OpenMP versions.

#include "qiline/kernels.hpp"
#include "qiline/qi_approx.hpp"
#include "qiline/structured_map.hpp"
#include "qiline/thompson.hpp"

#include <benchmark/benchmark.h>

using namespace qiline;

namespace {

struct AgreementCase {
  QIOracle oracle = sqrt_drift_oracle();
  ApproximationGrid grid;
  FinitePLMap g;
  AgreementCase() : grid(build_grid(oracle, 200)), g(pl_approximate(grid)) {}
};

const AgreementCase& agreement_case() {
  static const AgreementCase c;
  return c;
}

void BM_AgreementSerial(benchmark::State& state) {
  const auto& c = agreement_case();
  for (auto _ : state) benchmark::DoNotOptimize(agreement_report_serial(c.oracle, c.g, c.grid));
}

void BM_AgreementParallel(benchmark::State& state) {
  const auto& c = agreement_case();
  for (auto _ : state) benchmark::DoNotOptimize(agreement_report(c.oracle, c.g, c.grid));
}

const std::vector<kernels::RationalPair>& pairs() {
  static const auto p = sample_integer_pairs(3, 20000, -1000000, 1000000);
  return p;
}

const QIOracle noise_oracle = bounded_noise_oracle(2, 5);
const kernels::PointMap noise = [](const Rational& x) { return noise_oracle(x.floor_i64()); };

void BM_QIScanSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::first_qi_violation_serial(noise, Rational{5}, pairs()));
}

void BM_QIScanParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::first_qi_violation(noise, Rational{5}, pairs()));
}

StructuredMap growth_lift() {
  return eta_embed(realize(ThompsonWord::parse("x0 x1^-1 x2 x0 x3^-1")));
}

void BM_GrowthSerial(benchmark::State& state) {
  const auto lift = growth_lift();
  for (auto _ : state) benchmark::DoNotOptimize(growth_table_serial(lift, Rational(3, 5), state.range(0)));
}

void BM_GrowthParallel(benchmark::State& state) {
  const auto lift = growth_lift();
  for (auto _ : state) benchmark::DoNotOptimize(growth_table(lift, Rational(3, 5), state.range(0)));
}

void BM_RelationsSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_relations_serial(state.range(0)));
}

void BM_RelationsParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_relations(state.range(0)));
}

}  // namespace

BENCHMARK(BM_AgreementSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AgreementParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QIScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QIScanParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GrowthSerial)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GrowthParallel)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RelationsSerial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RelationsParallel)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
