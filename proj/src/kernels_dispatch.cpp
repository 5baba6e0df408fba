#include <atomic>
#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(_M_X64)
#include <cpuid.h>
#endif

#include "cutscape/kernels.hpp"

namespace cutscape::kernels {

// Defined in kernels_avx2.cpp; null when that TU was built without AVX2.
const KernelTable* avx2_table_impl();

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(_M_X64)
    unsigned eax = 0, ebx = 0, ecx = 0, edx = 0;
    if (!__get_cpuid(1, &eax, &ebx, &ecx, &edx)) return false;
    const bool fma = (ecx & bit_FMA) != 0;
    const bool osxsave = (ecx & bit_OSXSAVE) != 0;
    if (!fma || !osxsave) return false;
    // OS must preserve YMM state (XCR0 bits 1 and 2).
    unsigned xcr0_lo = 0, xcr0_hi = 0;
    __asm__("xgetbv" : "=a"(xcr0_lo), "=d"(xcr0_hi) : "c"(0u));
    (void)xcr0_hi;
    if ((xcr0_lo & 0x6u) != 0x6u) return false;
    if (!__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) return false;
    return (ebx & bit_AVX2) != 0;
#else
    return false;
#endif
}

const KernelTable* pick_table() {
    const KernelTable* avx2 = avx2_table_impl();
    const char* env = std::getenv("CUTSCAPE_SIMD");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_table();
        if (std::strcmp(env, "avx2") == 0 && avx2 != nullptr &&
            cpu_has_avx2_fma())
            return avx2;
        // "auto" or anything unrecognized falls through to detection.
    }
    if (avx2 != nullptr && cpu_has_avx2_fma()) return avx2;
    return &scalar_table();
}

std::atomic<const KernelTable*> g_forced{nullptr};

}  // namespace

const KernelTable* avx2_table() {
    return cpu_has_avx2_fma() ? avx2_table_impl() : nullptr;
}

const KernelTable& active() {
    const KernelTable* forced = g_forced.load(std::memory_order_acquire);
    if (forced != nullptr) return *forced;
    static const KernelTable* chosen = pick_table();
    return *chosen;
}

void force_table(const KernelTable* t) {
    g_forced.store(t, std::memory_order_release);
}

}  // namespace cutscape::kernels
