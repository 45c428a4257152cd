#include <benchmark/benchmark.h>

#include <cmath>

#include "biwave/dirac.hpp"
#include "biwave/dirac_oracle.hpp"
#include "biwave/norms.hpp"
#include "biwave/specfun.hpp"
#include "biwave/transform.hpp"

namespace {

using biwave::cplx;

void bm_cgamma(benchmark::State& state) {
    cplx z(2.3, 1.7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(biwave::cgamma(z));
        z += cplx(1e-12, 0.0);
    }
}
BENCHMARK(bm_cgamma);

void bm_pole_term_eval(benchmark::State& state) {
    biwave::WaveletParams p(0.6);
    auto F = biwave::forward_atom(p, biwave::Atom(1.0, 1.0, cplx(0.0, 1.0)));
    cplx zb(0.7, -0.4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(F.eval(zb));
        zb += cplx(1e-12, 0.0);
    }
}
BENCHMARK(bm_pole_term_eval);

void bm_forward_quadrature(benchmark::State& state) {
    biwave::WaveletParams p(0.6);
    auto f = [](double q) { return cplx(std::exp(-q), 0.0); };
    cplx zb(double(state.range(0)), -0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(biwave::forward_quadrature(p, f, zb));
}
BENCHMARK(bm_forward_quadrature)->Arg(0)->Arg(4)->Arg(32);

void bm_quantize(benchmark::State& state) {
    biwave::dirac::DiracParams p(1.0, 0.6, -1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(biwave::dirac::quantize(p, 3));
}
BENCHMARK(bm_quantize);

void bm_shooting_mismatch(benchmark::State& state) {
    biwave::dirac::DiracParams p(1.0, 0.6, -1.0);
    double eps = biwave::dirac::spectrum(p, 1) * 1.0000001;
    for (auto _ : state)
        benchmark::DoNotOptimize(biwave::oracle::matching_mismatch(p, eps));
}
BENCHMARK(bm_shooting_mismatch);

void bm_bergman_norm(benchmark::State& state) {
    biwave::WaveletParams p(0.6);
    auto F = biwave::forward_atom(p, biwave::Atom(1.0, 1.0, cplx(0.0, 1.0)));
    auto dF = F.derivative();
    auto grid = biwave::HalfPlaneGrid::make();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            biwave::bergman_norm(dF, 2.0 * p.gamma + 1.0, grid));
}
BENCHMARK(bm_bergman_norm);

} // namespace

BENCHMARK_MAIN();
