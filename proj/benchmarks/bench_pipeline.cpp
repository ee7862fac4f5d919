#include <benchmark/benchmark.h>

#include "veerkit/blowup.hpp"
#include "veerkit/carried.hpp"
#include "veerkit/duality.hpp"
#include "veerkit/homology.hpp"
#include "veerkit/stable_track.hpp"
#include "veerkit/triangulation.hpp"

using namespace veerkit;

namespace {

const char* const kSignatures[] = {
    "cPcbbbiht_12",
    "eLMkbcddddedde_2100",
    "gLLAQcdecfffhsermws_122201",
};

const VeeringTriangulation& tri(int i) {
    static const std::vector<VeeringTriangulation> all = [] {
        std::vector<VeeringTriangulation> v;
        for (const char* s : kSignatures) v.push_back(parse_taut_signature(s));
        return v;
    }();
    return all[i];
}

void BM_Parse(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(parse_taut_signature(kSignatures[state.range(0)]));
}
BENCHMARK(BM_Parse)->DenseRange(0, 2);

void BM_Homology(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(homology_h1(tri(state.range(0))));
}
BENCHMARK(BM_Homology)->DenseRange(0, 2);

void BM_CarriedCone(benchmark::State& state) {
    const auto h = homology_h1(tri(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(carried_cone(tri(state.range(0)), h));
}
BENCHMARK(BM_CarriedCone)->DenseRange(0, 2);

void BM_MinimalLoops(benchmark::State& state) {
    const StableTrack track(tri(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_minimal_stable_loops(track));
}
BENCHMARK(BM_MinimalLoops)->DenseRange(0, 2);

void BM_DualityCheck(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(run_duality_check(tri(state.range(0)), "", true));
}
BENCHMARK(BM_DualityCheck)->DenseRange(0, 2);

void BM_FiberSearch(benchmark::State& state) {
    const auto& t = tri(0);
    const auto h = homology_h1(t);
    const auto cc = carried_cone(t, h);
    ZVec w(t.num_faces());
    for (const ZVec& r : cc.weights.extreme_rays())
        for (int f = 0; f < t.num_faces(); ++f) w[f] += Int(state.range(0)) * r[f];
    for (auto _ : state) benchmark::DoNotOptimize(is_fiber_class(t, h, w));
}
BENCHMARK(BM_FiberSearch)->RangeMultiplier(2)->Range(1, 8);

void BM_Fill(benchmark::State& state) {
    const int q = int(state.range(0));
    const auto star = PseudoAnosovTree::star(q);
    std::vector<int> counts(2 * q, 0);
    for (int r = 0; r < 2 * q; ++r) counts[r] = 1;
    const auto fam = EvenFamily::from_counts(counts);
    for (auto _ : state) benchmark::DoNotOptimize(fill_even_family(star, fam, 1));
}
BENCHMARK(BM_Fill)->DenseRange(3, 8);

}  // namespace

BENCHMARK_MAIN();
