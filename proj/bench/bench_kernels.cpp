// Serial reference vs OpenMP kernels on zoo chains.

#include <benchmark/benchmark.h>

#include "mixhit/kernel_core.hpp"
#include "mixhit/serial_reference.hpp"
#include "mixhit/times.hpp"
#include "mixhit/zoo.hpp"

using namespace mixhit;

namespace {

const ZooChain& chain(int n) {
    static const ZooChain c10 = build_zoo_chain("random_reversible(10,3)");
    static const ZooChain c12 = build_zoo_chain("random_reversible(12,4)");
    static const ZooChain c16 = build_zoo_chain("hypercube(4)");
    return n == 10 ? c10 : n == 12 ? c12 : c16;
}

void BM_ContractionSerial(benchmark::State& st) {
    const auto& c = chain(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(serial::contraction_profile(c.kernel, c.pi, 200));
}

void BM_ContractionParallel(benchmark::State& st) {
    const auto& c = chain(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(contraction_profile(c.kernel, c.pi, 200));
}

void BM_MaxHittingSerial(benchmark::State& st) {
    const auto& c = chain(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(serial::max_hitting_time(c.kernel, c.pi, 0.25));
}

void BM_MaxHittingParallel(benchmark::State& st) {
    const auto& c = chain(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(max_hitting_time(c.kernel, c.pi, 0.25));
}

void BM_LargeHittingSerial(benchmark::State& st) {
    const auto& c = chain(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(serial::large_hitting_time(c.kernel, c.pi, 0.25));
}

void BM_LargeHittingParallel(benchmark::State& st) {
    const auto& c = chain(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(large_hitting_time(c.kernel, c.pi, 0.25));
}

}  // namespace

BENCHMARK(BM_ContractionSerial)->Arg(10)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ContractionParallel)->Arg(10)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxHittingSerial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxHittingParallel)->Arg(10)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LargeHittingSerial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LargeHittingParallel)->Arg(10)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
