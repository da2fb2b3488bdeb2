#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace phq::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

// Dense complex/real vector primitives. Pointers may be unaligned.
struct Kernels {
    Isa isa;
    // y += a * x
    void (*axpy)(std::size_t n, cplx a, const cplx* x, cplx* y);
    // sum_i x_i * y_i
    cplx (*dotu)(std::size_t n, const cplx* x, const cplx* y);
    // sum_i conj(x_i) * y_i
    cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
    // sum_i w_i * f_i, real weights
    cplx (*wsum)(std::size_t n, const double* w, const cplx* f);
    // sum_i |f_i| * w_i
    double (*wabs)(std::size_t n, const double* w, const cplx* f);
    // out_i = a_i * b_i
    void (*mul)(std::size_t n, const cplx* a, const cplx* b, cplx* out);
};

const Kernels& scalar_kernels();
// Null when the binary was built without AVX2 support.
const Kernels* avx2_kernels();

bool cpu_has_avx2();
bool isa_available(Isa isa);
const Kernels& kernels_for(Isa isa);

// Chosen once: AVX2 when the CPU supports it, unless PHQ_SIMD=scalar.
const Kernels& kernels();
std::string_view isa_name(Isa isa);

// Fixed-tree pairwise sums; the tree shape depends only on n.
cplx pairwise_wsum(std::size_t n, const double* w, const cplx* f);
double pairwise_wabs(std::size_t n, const double* w, const cplx* f);

} // namespace phq::simd
