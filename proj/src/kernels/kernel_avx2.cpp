#include <homlab/kernels.hpp>

#include <immintrin.h>

namespace homlab::kernels {

namespace {

// Per-lane popcount of 4 u64 values (nibble lookup + psadbw).
inline __m256i popcount_epi64(__m256i v) {
    const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                            0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_and_si256(v, low);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
    return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

} // namespace

uint64_t masked_popcount_sum_avx2(const uint64_t* rows, uint64_t cands, uint64_t mask) {
    if (!cands) return 0;
    int top = 63 - __builtin_clzll(cands);
    const __m256i vmask = _mm256_set1_epi64x(static_cast<long long>(mask));
    __m256i acc = _mm256_setzero_si256();
    for (int base = 0; base <= top; base += 4) {
        // zero out lanes whose candidate bit is clear
        __m256i gate = _mm256_setr_epi64x(-static_cast<long long>((cands >> base) & 1),
                                          -static_cast<long long>((cands >> (base + 1)) & 1),
                                          -static_cast<long long>((cands >> (base + 2)) & 1),
                                          -static_cast<long long>((cands >> (base + 3)) & 1));
        __m256i r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rows + base));
        __m256i v = _mm256_and_si256(_mm256_and_si256(r, vmask), gate);
        acc = _mm256_add_epi64(acc, popcount_epi64(v));
    }
    alignas(32) uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

} // namespace homlab::kernels
