#include <benchmark/benchmark.h>

#include <numbers>

#include "quadtile/angles.hpp"
#include "quadtile/combinatorics.hpp"
#include "quadtile/constructors.hpp"
#include "quadtile/geometry.hpp"
#include "quadtile/symmetry.hpp"
#include "quadtile/tilingmap.hpp"

using namespace quadtile;

static void BM_search_avcs(benchmark::State& state) {
    const int f = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(search_avcs(f, f / 2));
}
BENCHMARK(BM_search_avcs)->Arg(6)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_solve_angle_system(benchmark::State& state) {
    auto sys = parse_signature_list("αβ²,α²δ²,γ⁴");
    for (auto _ : state) benchmark::DoNotOptimize(solve_angle_system(sys, true));
}
BENCHMARK(BM_solve_angle_system);

static void BM_pq_earth_map(benchmark::State& state) {
    const int f = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pq_earth_map(f));
}
BENCHMARK(BM_pq_earth_map)->Arg(24)->Arg(200)->Arg(1000);

static void BM_family_beta2delta(benchmark::State& state) {
    const int f = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(family_beta2delta(f));
}
BENCHMARK(BM_family_beta2delta)->Arg(24)->Arg(200);

static void BM_classify(benchmark::State& state) {
    TilingMap m = pq_earth_map(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(classify(m));
}
BENCHMARK(BM_classify)->Arg(24)->Arg(200);

static void BM_isomorphic(benchmark::State& state) {
    TilingMap m = family_alphadelta(200);
    TilingMap p = mirror(m);
    for (auto _ : state) benchmark::DoNotOptimize(isomorphic(m, p));
}
BENCHMARK(BM_isomorphic);

static void BM_realize(benchmark::State& state) {
    const int f = static_cast<int>(state.range(0));
    TilingMap m = pq_earth_map(f);
    SphericalQuad q = closed_form_family(f);
    for (auto _ : state) benchmark::DoNotOptimize(realize(m, q));
}
BENCHMARK(BM_realize)->Arg(24)->Arg(200);

static void BM_cube_exclusions(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(cube_exclusions());
}
BENCHMARK(BM_cube_exclusions);
BENCHMARK_MAIN();
