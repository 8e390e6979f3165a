#include <homlab/kernels.hpp>

namespace homlab::kernels {

uint64_t masked_popcount_sum_scalar(const uint64_t* rows, uint64_t cands, uint64_t mask) {
    uint64_t total = 0;
    while (cands) {
        int w = __builtin_ctzll(cands);
        cands &= cands - 1;
        total += static_cast<uint64_t>(__builtin_popcountll(rows[w] & mask));
    }
    return total;
}

} // namespace homlab::kernels
