#include <cstdlib>
#include <string>

#include "gstbc/kernels.hpp"

namespace gstbc::kernels {

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

const KernelTable& scalar_table() {
    static const KernelTable table{Isa::Scalar, &detail::squared_distances_scalar, &detail::nearest_scalar};
    return table;
}

const KernelTable* avx2_table() {
#if defined(GSTBC_HAVE_AVX2)
    static const KernelTable table{Isa::Avx2, &detail::squared_distances_avx2, &detail::nearest_avx2};
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &table : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable* neon_table() {
#if defined(GSTBC_HAVE_NEON)
    static const KernelTable table{Isa::Neon, &detail::squared_distances_neon, &detail::nearest_neon};
    return &table;
#else
    return nullptr;
#endif
}

const KernelTable& active() {
    static const KernelTable& chosen = []() -> const KernelTable& {
        if (const char* env = std::getenv("GSTBC_ISA"); env != nullptr && std::string(env) == "scalar")
            return scalar_table();
        if (const KernelTable* t = avx2_table()) return *t;
        if (const KernelTable* t = neon_table()) return *t;
        return scalar_table();
    }();
    return chosen;
}

}  // namespace gstbc::kernels
