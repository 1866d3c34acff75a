#include "cmf/analytic.hpp"
#include "cmf/census.hpp"

#include <benchmark/benchmark.h>

using namespace cmf;

namespace {

CMExtension example() { return CMExtension::make(Field::quadratic(2)->from_surd(-5, -2)); }

void BM_QuarticCensusSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_quartic_cm_serial(st.range(0)).total);
}

void BM_QuarticCensusParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_quartic_cm(st.range(0)).total);
}

void BM_WeilRowSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(weil_census_row_serial(2, static_cast<int>(st.range(0))).kept);
}

void BM_WeilRowParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(weil_census_row(2, static_cast<int>(st.range(0))).kept);
}

void BM_ShintaniSerial(benchmark::State& st) {
    auto E = example();
    auto eps = fundamental_totally_positive_unit(E.F);
    for (auto _ : st) benchmark::DoNotOptimize(shintani_set_serial(E.F, eps, E.rel_disc).size());
}

void BM_ShintaniParallel(benchmark::State& st) {
    auto E = example();
    auto eps = fundamental_totally_positive_unit(E.F);
    for (auto _ : st) benchmark::DoNotOptimize(shintani_set(E.F, eps, E.rel_disc).size());
}

// jobs = 1 is the serial reference for the Barnes sum and the quadrature
void BM_LerchQuartic(benchmark::State& st) {
    auto E = example();
    auto T = character_table(E);
    for (auto _ : st) benchmark::DoNotOptimize(lerch_real_quadratic(E, T, 1, 1, 128, static_cast<int>(st.range(0))));
}

void BM_HeckeOracle(benchmark::State& st) {
    auto E = example();
    for (auto _ : st) benchmark::DoNotOptimize(hecke_L_quadratic(E, 96, static_cast<int>(st.range(0))).sign);
}

}  // namespace

BENCHMARK(BM_QuarticCensusSerial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuarticCensusParallel)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeilRowSerial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeilRowParallel)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShintaniSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ShintaniParallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LerchQuartic)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HeckeOracle)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
