#include <benchmark/benchmark.h>

#include <random>

#include "gl4bessel/decompositions.hpp"
#include "gl4bessel/interchange.hpp"
#include "gl4bessel/mellin_barnes.hpp"
#include "gl4bessel/request.hpp"
#include "gl4bessel/series.hpp"

using namespace gl4;

namespace {

Exec mode(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

SpectralParams params(unsigned seed) {
    std::mt19937_64 rng(seed);
    return sample_tempered(rng, 1);
}

void BM_CoefficientLattice(benchmark::State& state) {
    const auto w = WeylElement::from_name("1111");
    const Mu mu = params(1).mu;
    for (auto _ : state) benchmark::DoNotOptimize(coefficient_lattice(w, mu, 10, CoefForm::a, mode(state)));
}

void BM_MellinBarnes121(benchmark::State& state) {
    const auto w = WeylElement::from_name("121");
    const auto p = params(2);
    YPoint y;
    y.y = {0.05, 1.0, -0.02};
    ContourConfig cfg = ContourConfig::defaults(w);
    cfg.t_max = 40;
    for (auto _ : state) benchmark::DoNotOptimize(mb_eval(w, y, p, cfg, mode(state)));
}

void BM_DecompositionSampling(benchmark::State& state) {
    const auto w = WeylElement::from_name("1111");
    for (auto _ : state) benchmark::DoNotOptimize(check_decompositions(w, 20000, 7, mode(state)));
}

void BM_InterchangeSubsets(benchmark::State& state) {
    const Phase phase = builtin_phase("211");
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_cases(phase, mode(state)));
}

void BM_TableBatch(benchmark::State& state) {
    std::vector<EvalRequest> rows;
    for (unsigned i = 0; i < 32; ++i) {
        EvalRequest r;
        r.w = WeylElement::from_name(i % 2 ? "31" : "22");
        r.params = params(100 + i);
        r.y.y = {1.0, 1.0, 1.0};
        r.y.y[free_coordinates(r.w).front()] = 0.01 * (1 + i % 5);
        r.method = Method::both;
        r.contour = ContourConfig::defaults(r.w);
        rows.push_back(r);
    }
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_batch(rows, mode(state)));
}

}  // namespace

// Argument 0 runs the serial reference, 1 the OpenMP kernel.
BENCHMARK(BM_CoefficientLattice)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MellinBarnes121)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecompositionSampling)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InterchangeSubsets)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TableBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
