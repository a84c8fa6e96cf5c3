#include <benchmark/benchmark.h>

#include <random>

#include "destab/gauge.hpp"
#include "destab/gl.hpp"
#include "destab/torus.hpp"

using namespace destab;

namespace {

PolyhedralCone random_cone(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    std::uniform_int_distribution<int> e(-3, 3);
    std::vector<Vec> rows;
    for (std::size_t j = 0; j < m; ++j) {
        Vec a(n);
        for (auto& x : a) x = Rat(e(rng));
        rows.push_back(a);
    }
    return PolyhedralCone(n, rows);
}

void BM_project_cone(benchmark::State& state) {
    const std::size_t n = state.range(0);
    const std::size_t m = state.range(1);
    std::mt19937_64 rng(1);
    auto q = InnerProduct::identity(n);
    PolyhedralCone cone = random_cone(rng, n, m);
    std::uniform_int_distribution<int> e(-5, 5);
    Vec u(n);
    for (auto& x : u) x = Rat(e(rng));
    for (auto _ : state) {
        auto p = project_cone(q, cone, u);
        benchmark::DoNotOptimize(p.point.norm_sq);
    }
}
BENCHMARK(BM_project_cone)->Args({2, 4})->Args({4, 6})->Args({6, 8})->Args({8, 10});

void BM_enumerate_strata(benchmark::State& state) {
    const std::size_t m = state.range(0);
    WeightSystem ws;
    ws.dim = 3;
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> e(-3, 3);
    while (ws.weights.size() < m) {
        Vec chi(3);
        for (auto& x : chi) x = Rat(e(rng));
        if (vec_is_zero(chi)) continue;
        bool dup = false;
        for (const auto& w : ws.weights) dup = dup || w.chi == chi;
        if (!dup) ws.weights.push_back({"w" + std::to_string(ws.weights.size()), chi});
    }
    StabilityParam tau{{Rat(1), Rat(-2), Rat(1)}};
    auto q = InnerProduct::identity(3);
    for (auto _ : state) {
        auto strata = enumerate_strata(ws, tau, q);
        benchmark::DoNotOptimize(strata.size());
    }
}
BENCHMARK(BM_enumerate_strata)->Arg(6)->Arg(8)->Arg(10);

void BM_hom_optimal(benchmark::State& state) {
    const std::size_t r = state.range(0);
    Mat f(r - 1, r);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> e(-5, 5);
    for (std::size_t i = 0; i + 1 < r; ++i)
        for (std::size_t j = 0; j < r; ++j) f.at(i, j) = e(rng);
    HomProblem p{f, Rat(1)};
    for (auto _ : state) {
        auto res = hom_optimal(p);
        benchmark::DoNotOptimize(res.kernel_dim);
    }
}
BENCHMARK(BM_hom_optimal)->Arg(4)->Arg(6)->Arg(8);

void BM_global_optimal(benchmark::State& state) {
    // chain lattice with a refining diamond
    std::vector<LatticeNode> nodes = {{"0", 0, 0, false}, {"A", 1, 3, false},
                                      {"B", 2, 4, false}, {"C", 1, 2, false},
                                      {"D", 3, 4, false}, {"E", 4, 2, false}};
    std::vector<std::pair<std::string, std::string>> order = {
        {"A", "B"}, {"C", "B"}, {"B", "D"}, {"D", "E"}};
    SubobjectLattice lat(nodes, order);
    for (auto _ : state) {
        auto glob = global_optimal_over_lattice(lat, std::nullopt);
        benchmark::DoNotOptimize(glob.lambda_inf.sign);
    }
}
BENCHMARK(BM_global_optimal);

} // namespace

BENCHMARK_MAIN();
