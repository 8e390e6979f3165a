// Runtime kernel selection. No intrinsics here; each variant lives in its
// own translation unit compiled with the matching -m flags.

#include <homlab/kernels.hpp>

namespace homlab::kernels {

namespace {

std::string g_active = "scalar";

} // namespace

MaskedPopcountSumFn masked_popcount_sum_impl() {
#ifdef HOMLAB_HAVE_AVX2_SOURCES
    if (__builtin_cpu_supports("avx2")) {
        g_active = "avx2";
        return &masked_popcount_sum_avx2;
    }
#endif
    g_active = "scalar";
    return &masked_popcount_sum_scalar;
}

const std::string& active_kernel_name() {
    (void)masked_popcount_sum(nullptr, 0, 0); // force selection
    return g_active;
}

} // namespace homlab::kernels
