#include "qrep/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace qrep::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(QREP_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* initial_table() {
    const KernelTable* best = avx2() ? avx2() : &detail::kScalar;
    if (const char* env = std::getenv("QREP_KERNELS")) {
        const std::string want{env};
        if (want == "scalar") return &detail::kScalar;
        if (want == "avx2" && avx2()) return avx2();
    }
    return best;
}

std::atomic<const KernelTable*>& current() {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

const KernelTable& scalar() { return detail::kScalar; }

const KernelTable* avx2() {
#if defined(QREP_WITH_AVX2)
    static const bool ok = cpu_has_avx2();
    return ok ? &detail::kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

bool select(Variant v) {
    const KernelTable* t = v == Variant::Scalar ? &detail::kScalar : avx2();
    if (t == nullptr) return false;
    current().store(t, std::memory_order_relaxed);
    return true;
}

std::string_view name(Variant v) {
    switch (v) {
        case Variant::Scalar: return "scalar";
        case Variant::Avx2: return "avx2";
    }
    return "unknown";
}

}  // namespace qrep::kernels
