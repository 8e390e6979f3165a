#ifndef HOMLAB_KERNELS_HPP
#define HOMLAB_KERNELS_HPP

#include <cstdint>
#include <string>

namespace homlab::kernels {

// Inner loop of the homomorphism enumerator. With two free source vertices
// left, the count contributed by a partial assignment is
//
//     sum over set bits w of cands:  popcount(rows[w] & mask)
//
// where cands are the candidate images of the second-to-last vertex, rows is
// the target adjacency table and mask holds the candidates of the last
// vertex. rows must stay readable through index 63 (vector variants load in
// blocks of four lanes); the enumerator keeps its table padded to 64 entries.
// The scalar kernel is the reference; vector variants must match it bit for
// bit on every input (equivalence-tested in tests/test_kernels.cpp).

using MaskedPopcountSumFn = uint64_t (*)(const uint64_t* rows, uint64_t cands, uint64_t mask);

uint64_t masked_popcount_sum_scalar(const uint64_t* rows, uint64_t cands, uint64_t mask);
#ifdef HOMLAB_HAVE_AVX2_SOURCES
uint64_t masked_popcount_sum_avx2(const uint64_t* rows, uint64_t cands, uint64_t mask);
#endif

/// Best implementation for this machine, chosen once at startup.
MaskedPopcountSumFn masked_popcount_sum_impl();

/// Dispatch target name ("scalar", "avx2"); surfaced for tests and --version.
const std::string& active_kernel_name();

inline uint64_t masked_popcount_sum(const uint64_t* rows, uint64_t cands, uint64_t mask) {
    static const MaskedPopcountSumFn fn = masked_popcount_sum_impl();
    return fn(rows, cands, mask);
}

} // namespace homlab::kernels

#endif
