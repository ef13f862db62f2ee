#include <benchmark/benchmark.h>

#include "ccym/action.hpp"
#include "ccym/expansion.hpp"
#include "ccym/geometry.hpp"
#include "ccym/mode_ode.hpp"

using namespace ccym;

namespace {
GridPtr torus(int d, int active) {
    std::vector<int> pts(d - 1, 2);
    pts[0] = active;
    pts[1] = active;
    return Grid::make(pts);
}
}  // namespace

static void BM_SpectralPartial(benchmark::State& st) {
    auto g = Grid::make({static_cast<int>(st.range(0)), static_cast<int>(st.range(0)), 2, 2});
    auto A = random_connection(g, LieAlgebraSpec::su(2), 1, 2, 0.5, {0, 1});
    for (auto _ : st) benchmark::DoNotOptimize(spectral_partial(A, 0));
}
BENCHMARK(BM_SpectralPartial)->Arg(8)->Arg(16)->Arg(24);

static void BM_CurvaturePackage(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    std::vector<int> pts(n, 2);
    pts[0] = pts[1] = 16;
    auto g = Grid::make(pts);
    std::vector<int> m(n, 0);
    m[0] = 1;
    m[1] = 1;
    auto metric = conformally_flat_metric(fourier_sum(g, {{0.1, m, true}}));
    for (auto _ : st) benchmark::DoNotOptimize(curvature_package(metric));
}
BENCHMARK(BM_CurvaturePackage)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_MagneticExpandFlat(benchmark::State& st) {
    const int d = static_cast<int>(st.range(0));
    auto g = torus(d, 12);
    auto bg = CollarBackground::flat(d, g);
    auto A0 = random_connection(g, LieAlgebraSpec::su(2), 2, 1, 0.3, {0, 1});
    for (auto _ : st) benchmark::DoNotOptimize(magnetic_expand(bg, A0, d - 4, LieAlgebraSpec::su(2)));
}
BENCHMARK(BM_MagneticExpandFlat)->DenseRange(5, 8)->Unit(benchmark::kMillisecond);

static void BM_ObstructionCurved(benchmark::State& st) {
    const int d = 7;
    auto g = torus(d, static_cast<int>(st.range(0)));
    std::vector<int> m(d - 1, 0);
    m[0] = 1;
    auto geo = curvature_package(conformally_flat_metric(fourier_sum(g, {{0.05, m, true}})), {false});
    auto bg = CollarBackground::curved(d, geo);
    auto A0 = random_connection(g, LieAlgebraSpec::su(2), 2, 1, 0.2, {0, 1});
    for (auto _ : st) benchmark::DoNotOptimize(obstruction_extract(magnetic_expand(bg, A0, d - 4, LieAlgebraSpec::su(2))));
}
BENCHMARK(BM_ObstructionCurved)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_RegulatedAction(benchmark::State& st) {
    const int d = static_cast<int>(st.range(0));
    auto g = torus(d, 12);
    auto e = magnetic_expand(CollarBackground::flat(d, g), random_connection(g, LieAlgebraSpec::u1(), 4, 1, 0.3, {0, 1}),
                             d - 4);
    RegulatedAction S(e);
    for (auto _ : st) benchmark::DoNotOptimize(S(1e-3, 0.5));
}
BENCHMARK(BM_RegulatedAction)->DenseRange(5, 7);

static void BM_MaxwellDtn(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(maxwell_dtn(static_cast<int>(st.range(0)), 1.3));
}
BENCHMARK(BM_MaxwellDtn)->DenseRange(5, 10);

BENCHMARK_MAIN();
