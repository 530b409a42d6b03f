#include <cstdlib>
#include <stdexcept>
#include <string>

#include "blindsearch/kernels.hpp"

namespace blindsearch::kernels {

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool isa_supported(Isa isa) {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if defined(BLINDSEARCH_HAVE_AVX2)
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

namespace {

Isa select_isa() {
    if (const char* forced = std::getenv("BLINDSEARCH_KERNEL"); forced && *forced) {
        const std::string name(forced);
        if (name == "scalar") return Isa::scalar;
        if (name == "avx2") {
            if (!isa_supported(Isa::avx2)) {
                throw std::runtime_error("BLINDSEARCH_KERNEL=avx2 but the CPU or build lacks AVX2/FMA");
            }
            return Isa::avx2;
        }
        if (name != "auto") throw std::runtime_error("unknown BLINDSEARCH_KERNEL value: " + name);
    }
    return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

}  // namespace

Isa active_isa() {
    static const Isa isa = select_isa();
    return isa;
}

PhaseSumFn phase_sum_fn(Isa isa) {
    switch (isa) {
        case Isa::scalar: return &phase_sum_scalar;
        case Isa::avx2:
#if defined(BLINDSEARCH_HAVE_AVX2)
            return &phase_sum_avx2;
#else
            break;
#endif
    }
    throw std::runtime_error("phase-sum kernel not compiled in: " + std::string(isa_name(isa)));
}

}  // namespace blindsearch::kernels
