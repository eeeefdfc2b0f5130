// Parallel kernels against their serial references on the legislation KB.

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "imx/engine.hpp"
#include "imx/knowledge_base.hpp"
#include "imx/simulate.hpp"

namespace {

const imx::Engine& legislation() {
    static const imx::Engine engine = [] {
        std::ifstream in(IMX_DATA_DIR "/legislation.kb");
        std::stringstream ss;
        ss << in.rdbuf();
        return imx::Engine(imx::parse_kb(ss.str()));
    }();
    return engine;
}

void BM_PossibleValues(benchmark::State& st) {
    const auto& e = legislation();
    const auto base = e.kb().empty_structure();
    for (auto _ : st) benchmark::DoNotOptimize(e.possible_values(base, imx::TheorySet::Both));
}

void BM_PossibleValuesSerial(benchmark::State& st) {
    const auto& e = legislation();
    const auto base = e.kb().empty_structure();
    for (auto _ : st) benchmark::DoNotOptimize(imx::serial::possible_values(e, base, imx::TheorySet::Both));
}

void BM_Simulate(benchmark::State& st) {
    const imx::SimulationConfig config{1, static_cast<std::size_t>(st.range(0)), 1000};
    for (auto _ : st) benchmark::DoNotOptimize(imx::simulate(legislation(), imx::SimMode::Guided, config));
}

void BM_SimulateSerial(benchmark::State& st) {
    const imx::SimulationConfig config{1, static_cast<std::size_t>(st.range(0)), 1000};
    for (auto _ : st) benchmark::DoNotOptimize(imx::serial::simulate(legislation(), imx::SimMode::Guided, config));
}

}  // namespace

BENCHMARK(BM_PossibleValues)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PossibleValuesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Simulate)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateSerial)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
