// Copyright (c) dcbound contributors.
// SPDX-License-Identifier: Apache-2.0
// Serial versus OpenMP exploration of a valuation grid.
#include <fstream>
#include <sstream>

#include <benchmark/benchmark.h>
#include <omp.h>

#include "dcbound/oracle.hpp"

namespace {

dcbound::Dcp load(const std::string& name) {
    std::ifstream in(std::string(DCBOUND_DATA_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return dcbound::parse_dcp_or_throw(ss.str());
}

struct Workload {
    dcbound::Dcp dcp;
    std::vector<dcbound::Valuation> grid;
};

const Workload& workload() {
    static const Workload w = [] {
        auto dcp = load("example_2.dcp");
        auto grid = dcbound::valuation_grid(dcp.sym_consts(), 0, 8);
        return Workload{std::move(dcp), std::move(grid)};
    }();
    return w;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto& w = workload();
    for (auto _ : state) benchmark::DoNotOptimize(dcbound::explore_all_serial(w.dcp, w.grid));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.grid.size()));
}

void BM_SweepParallel(benchmark::State& state) {
    const auto& w = workload();
    omp_set_num_threads(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dcbound::explore_all_parallel(w.dcp, w.grid));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.grid.size()));
}

} // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
