#include <benchmark/benchmark.h>

#include <random>

#include "sofic/int_linalg.hpp"
#include "sofic/k_invariants.hpp"
#include "sofic/labeled_graph.hpp"
#include "sofic/presentations.hpp"

namespace {

sofic::int_matrix random_matrix(std::size_t n, int lo, int hi, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(lo, hi);
    sofic::int_matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
    return m;
}

// Strongly connected random labeled graph: a Hamiltonian cycle plus noise.
sofic::labeled_graph random_graph(std::size_t n, std::size_t extra, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> vdist(0, n - 1);
    std::uniform_int_distribution<int> ldist(0, 2);
    std::vector<std::string> vertices;
    for (std::size_t i = 0; i < n; ++i) vertices.push_back("q" + std::to_string(i));
    std::vector<sofic::edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        edges.push_back({vertices[i], vertices[(i + 1) % n], std::to_string(ldist(rng))});
    for (std::size_t i = 0; i < extra; ++i)
        edges.push_back({vertices[vdist(rng)], vertices[vdist(rng)], std::to_string(ldist(rng))});
    return sofic::labeled_graph(vertices, edges);
}

void bm_smith_normal_form(benchmark::State& state) {
    auto m = random_matrix(static_cast<std::size_t>(state.range(0)), -9, 9, 42);
    for (auto _ : state) {
        auto snf = sofic::smith_normal_form(m);
        benchmark::DoNotOptimize(snf.invariant_factors);
    }
}
BENCHMARK(bm_smith_normal_form)->Arg(4)->Arg(6)->Arg(8);

void bm_mat_pow(benchmark::State& state) {
    auto m = random_matrix(8, 0, 3, 7);
    for (auto _ : state) {
        auto p = sofic::mat_pow(m, static_cast<unsigned>(state.range(0)));
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(bm_mat_pow)->Arg(10)->Arg(50);

void bm_right_fischer_cover(benchmark::State& state) {
    auto g = random_graph(static_cast<std::size_t>(state.range(0)), 12, 3);
    for (auto _ : state) {
        auto cover = sofic::right_fischer_cover(g);
        benchmark::DoNotOptimize(cover);
    }
}
BENCHMARK(bm_right_fischer_cover)->Arg(5)->Arg(8);

void bm_count_periodic_points(benchmark::State& state) {
    auto g = random_graph(5, 8, 11);
    for (auto _ : state) {
        auto count = sofic::count_periodic_points(g, static_cast<unsigned>(state.range(0)));
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(bm_count_periodic_points)->Arg(4)->Arg(6);

void bm_duality_report(benchmark::State& state) {
    auto g = random_graph(6, 10, 5);
    for (auto _ : state) {
        auto report = sofic::make_duality_report(g);
        benchmark::DoNotOptimize(report.obstruction_found);
    }
}
BENCHMARK(bm_duality_report);

} // namespace

BENCHMARK_MAIN();
