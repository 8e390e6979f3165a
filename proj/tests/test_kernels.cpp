#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <homlab/kernels.hpp>

#include <array>
#include <random>

using namespace homlab;

// Every vector variant must agree with the scalar reference bit for bit.

TEST_CASE("kernel equivalence on random inputs") {
    std::mt19937_64 rng(12345);
    std::array<uint64_t, 64> rows{};
    for (int rep = 0; rep < 5000; ++rep) {
        for (auto& r : rows) r = rng();
        int m = 1 + static_cast<int>(rng() % 64);
        uint64_t valid = m == 64 ? ~0ull : (1ull << m) - 1;
        uint64_t cands = rng() & valid;
        uint64_t mask = rng() & valid;
        uint64_t ref = kernels::masked_popcount_sum_scalar(rows.data(), cands, mask);
#ifdef HOMLAB_HAVE_AVX2_SOURCES
        if (__builtin_cpu_supports("avx2"))
            CHECK(kernels::masked_popcount_sum_avx2(rows.data(), cands, mask) == ref);
#endif
        CHECK(kernels::masked_popcount_sum(rows.data(), cands, mask) == ref);
    }
}

TEST_CASE("kernel edge cases") {
    std::array<uint64_t, 64> rows{};
    for (int i = 0; i < 64; ++i) rows[i] = ~0ull;
    CHECK(kernels::masked_popcount_sum_scalar(rows.data(), 0, ~0ull) == 0);
    CHECK(kernels::masked_popcount_sum(rows.data(), 0, ~0ull) == 0);
    CHECK(kernels::masked_popcount_sum(rows.data(), ~0ull, 0) == 0);
    CHECK(kernels::masked_popcount_sum(rows.data(), ~0ull, ~0ull) == 64ull * 64ull);
    CHECK(kernels::masked_popcount_sum(rows.data(), 1ull << 63, 1) == 1);
}

TEST_CASE("dispatch reports a kernel") {
    const std::string& name = kernels::active_kernel_name();
    CHECK((name == "scalar" || name == "avx2"));
#ifdef HOMLAB_HAVE_AVX2_SOURCES
    if (__builtin_cpu_supports("avx2")) CHECK(name == "avx2");
#endif
}
