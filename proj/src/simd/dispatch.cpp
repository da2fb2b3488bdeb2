#include "phasequant/simd.hpp"

#include "phasequant/errors.hpp"

#include <cstdlib>
#include <string>

namespace phq::simd {

#ifndef PHQ_HAVE_AVX2
const Kernels* avx2_kernels() { return nullptr; }
#endif

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    static const bool has = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return has;
#else
    return false;
#endif
}

bool isa_available(Isa isa) {
    if (isa == Isa::scalar) return true;
    return avx2_kernels() != nullptr && cpu_has_avx2();
}

const Kernels& kernels_for(Isa isa) {
    if (!isa_available(isa)) throw InvalidArgument("instruction set not available: " + std::string(isa_name(isa)));
    return isa == Isa::avx2 ? *avx2_kernels() : scalar_kernels();
}

const Kernels& kernels() {
    static const Kernels& chosen = [] () -> const Kernels& {
        const char* env = std::getenv("PHQ_SIMD");
        if (env && std::string(env) == "scalar") return scalar_kernels();
        return isa_available(Isa::avx2) ? *avx2_kernels() : scalar_kernels();
    }();
    return chosen;
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

namespace {
constexpr std::size_t kLeaf = 64;
}

cplx pairwise_wsum(std::size_t n, const double* w, const cplx* f) {
    if (n <= kLeaf) return kernels().wsum(n, w, f);
    const std::size_t h = n / 2;
    return pairwise_wsum(h, w, f) + pairwise_wsum(n - h, w + h, f + h);
}

double pairwise_wabs(std::size_t n, const double* w, const cplx* f) {
    if (n <= kLeaf) return kernels().wabs(n, w, f);
    const std::size_t h = n / 2;
    return pairwise_wabs(h, w, f) + pairwise_wabs(n - h, w + h, f + h);
}

} // namespace phq::simd
