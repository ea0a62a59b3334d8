#include "soko/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace soko::kern {

bool avx2_supported() {
#if defined(SOKO_WITH_AVX2) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

#if !defined(SOKO_WITH_AVX2)
const Ops& avx2_ops() { return scalar_ops(); }
#endif

namespace {

const Ops* auto_select() {
    if (const char* e = std::getenv("SOKO_KERNEL")) {
        if (std::strcmp(e, "scalar") == 0) return &scalar_ops();
        if (std::strcmp(e, "avx2") == 0 && avx2_supported()) return &avx2_ops();
    }
    return avx2_supported() ? &avx2_ops() : &scalar_ops();
}

std::atomic<const Ops*> g_active{nullptr};

}  // namespace

const Ops& ops() {
    const Ops* p = g_active.load(std::memory_order_acquire);
    if (!p) {
        p = auto_select();
        g_active.store(p, std::memory_order_release);
    }
    return *p;
}

void force(const char* name) {
    if (!name) {
        g_active.store(auto_select(), std::memory_order_release);
    } else if (std::strcmp(name, "scalar") == 0) {
        g_active.store(&scalar_ops(), std::memory_order_release);
    } else if (std::strcmp(name, "avx2") == 0 && avx2_supported()) {
        g_active.store(&avx2_ops(), std::memory_order_release);
    }
}

}  // namespace soko::kern
