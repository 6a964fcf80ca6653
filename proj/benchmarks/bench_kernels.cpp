// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the sparse-array-completion authors

#include <benchmark/benchmark.h>

#include "sac/beampattern.hpp"
#include "sac/completion.hpp"
#include "sac/linalg.hpp"
#include "sac/rng.hpp"

namespace {

void BM_BeampatternCurve(benchmark::State &state)
{
    const auto nested = sac::make_geometry(sac::GeometryKind::nested, state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(sac::compute_bound_curve(nested, 10001));
}
BENCHMARK(BM_BeampatternCurve)->Arg(10)->Arg(20)->Arg(40);

void BM_HermitianEig(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    std::vector<sac::cd> t(n);
    sac::Rng rng(1);
    for (auto &v : t)
        v = sac::cd(rng.uniform_sym(), rng.uniform_sym());
    t[0] = n;
    const auto m = sac::toeplitz_build(t);
    for (auto _ : state)
        benchmark::DoNotOptimize(sac::hermitian_eig(m));
}
BENCHMARK(BM_HermitianEig)->Arg(30)->Arg(64)->Arg(132);

void BM_SolveTraceMin(benchmark::State &state)
{
    const int sensors = static_cast<int>(state.range(0));
    const int m = sensors / 2;
    const auto geometry = sac::make_geometry(sac::GeometryKind::nested, sensors);
    sac::SourceScene scene{0.3, 1.0, 0.1};
    sac::Rng rng(2);
    const auto meas = sac::synthesize(scene, geometry, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sac::solve_trace_min({meas, m * m + m, scene.epsilon}, {}));
}
BENCHMARK(BM_SolveTraceMin)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
