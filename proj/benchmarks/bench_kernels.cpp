#include <algorithm>

#include <benchmark/benchmark.h>

#include <gridless2d/bench_metrics.hpp>
#include <gridless2d/linalg.hpp>
#include <gridless2d/multilevel_toeplitz.hpp>
#include <gridless2d/sdp_rwtm.hpp>
#include <gridless2d/vandermonde_mapp.hpp>

using namespace gridless2d;

namespace
{

SceneDims square(const benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    return {n, n};
}

ToeplitzCoeffs paper_coeffs(SceneDims d)
{
    ScattererSet scene;
    for (const auto& f : preset_frequencies("airbus18"))
        scene.push_back({f.fx, f.fy, 1.0});
    return coeffs_from_scene(scene, d);
}

void BM_Assemble(benchmark::State& state)
{
    const ToeplitzCoeffs u = paper_coeffs(square(state));
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble(u));
}
BENCHMARK(BM_Assemble)->Arg(8)->Arg(14);

void BM_Adjoint(benchmark::State& state)
{
    const SceneDims d = square(state);
    const CMatrix T   = assemble(paper_coeffs(d));
    for (auto _ : state)
        benchmark::DoNotOptimize(adjoint(T, d));
}
BENCHMARK(BM_Adjoint)->Arg(8)->Arg(14);

void BM_PsdProjection(benchmark::State& state)
{
    const SceneDims d = square(state);
    const int n       = d.size() + 1;
    const CMatrix A   = CMatrix::Random(n, n);
    const CMatrix H   = 0.5 * (A + A.adjoint());
    for (auto _ : state)
        benchmark::DoNotOptimize(psd_projection(H));
}
BENCHMARK(BM_PsdProjection)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);

// cost per ADMM iteration on the 18-point scene with 90 samples
void BM_AdmmIterations(benchmark::State& state)
{
    const SceneDims d          = {14, 14};
    const DataMatrix S         = synthesize(with_random_phases(preset_frequencies("airbus18"), 0), d);
    const ObservationMask mask = random_mask(d, 90, 0);
    const auto obs             = apply_mask(S, mask);
    SolverConfig cfg           = experiment_solver_config();
    cfg.max_inner_iter         = static_cast<int>(state.range(0));
    const CMatrix winv         = CMatrix::Identity(d.size(), d.size());
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_weighted_trace(obs, mask, winv, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AdmmIterations)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Mapp(benchmark::State& state)
{
    const ToeplitzCoeffs u = paper_coeffs(square(state));
    for (auto _ : state)
        benchmark::DoNotOptimize(mapp_decompose(u, 18));
}
BENCHMARK(BM_Mapp)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_MatchFrequencies(benchmark::State& state)
{
    const auto truth = preset_frequencies("airbus19close");
    auto est         = truth;
    std::reverse(est.begin(), est.end());
    for (auto _ : state)
        benchmark::DoNotOptimize(match_frequencies(truth, est));
}
BENCHMARK(BM_MatchFrequencies);

} // namespace

BENCHMARK_MAIN();
