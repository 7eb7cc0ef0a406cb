// Copyright 2026 The qihe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial vs OpenMP multistart on the brute-force oracle and the generic
// thermalizability search.

#include <benchmark/benchmark.h>

#include "qihe/control.hpp"
#include "qihe/oracle.hpp"

namespace {

using namespace qihe;

Execution mode_of(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_BruteForceSu(benchmark::State& state) {
    const auto rho = random_density_matrix(HilbertSpace::distinguishable(2), 3, 11);
    const auto cs = ControlSet::local_common(2);
    OracleOptions opt;
    opt.restarts = static_cast<int>(state.range(1));
    opt.execution = mode_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_su(rho, cs, opt).bits);
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_BruteForceSu)->ArgsProduct({{0, 1}, {8, 32}})->Unit(benchmark::kMillisecond);

void BM_CtSearchGeneric(benchmark::State& state) {
    const auto rho = random_density_matrix(HilbertSpace::distinguishable(2), 4, 5);
    const auto cs = ControlSet::local_independent(2);
    CtSearchOptions opt;
    opt.restarts = static_cast<int>(state.range(1));
    opt.execution = mode_of(state);
    const ThermalContext ctx;
    for (auto _ : state) benchmark::DoNotOptimize(ct_search_generic(cs, rho, ctx, opt).best_residual);
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_CtSearchGeneric)->ArgsProduct({{0, 1}, {8, 32}})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
