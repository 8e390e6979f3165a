// Micro-benchmark for the enumeration core: raw kernel throughput
// (scalar vs the dispatched variant) and a few end-to-end counting
// workloads. Numbers are wall-clock; run on an idle machine.

#include <homlab/graph.hpp>
#include <homlab/hom.hpp>
#include <homlab/kernels.hpp>

#include <chrono>
#include <cstdio>
#include <random>

using namespace homlab;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void bench_kernels() {
    std::mt19937_64 rng(42);
    constexpr int reps = 2'000'000;
    alignas(32) uint64_t rows[64];
    for (auto& r : rows) r = rng();
    uint64_t cands = rng(), mask = rng();

    volatile uint64_t sink = 0;
    auto t0 = clock_type::now();
    for (int i = 0; i < reps; ++i)
        sink += kernels::masked_popcount_sum_scalar(rows, cands ^ i, mask + i);
    double scalar = seconds_since(t0);

    t0 = clock_type::now();
    for (int i = 0; i < reps; ++i)
        sink += kernels::masked_popcount_sum(rows, cands ^ i, mask + i);
    double dispatched = seconds_since(t0);

    std::printf("kernel (%s): scalar %.0f ns/call, dispatched %.0f ns/call, speedup %.2fx\n",
                kernels::active_kernel_name().c_str(), scalar / reps * 1e9, dispatched / reps * 1e9,
                scalar / dispatched);
}

Graph random_graph(std::mt19937_64& rng, int n, double prob) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    Graph g(names);
    std::bernoulli_distribution coin(prob);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) g.add_edge(i, j);
    return g;
}

void bench_counting() {
    std::mt19937_64 rng(7);
    HomOptions big;
    big.budget = 30'000'000'000ull;

    struct Load {
        const char* name;
        Graph src, tgt;
    };
    std::vector<Load> loads;
    loads.push_back({"10 -> 8 sparse", random_graph(rng, 10, 0.25), random_graph(rng, 8, 0.4)});
    loads.push_back({"12 -> 6 sparse", random_graph(rng, 12, 0.2), random_graph(rng, 6, 0.5)});
    loads.push_back({"8 -> 12 dense", random_graph(rng, 8, 0.5), random_graph(rng, 12, 0.6)});

    for (auto& load : loads) {
        auto t0 = clock_type::now();
        unsigned long long count = count_homs(load.src, load.tgt, big).value;
        double dt = seconds_since(t0);
        std::printf("count_homs %-14s = %llu  (%.3f s)\n", load.name, count, dt);
    }
}

} // namespace

int main() {
    bench_kernels();
    bench_counting();
    return 0;
}
