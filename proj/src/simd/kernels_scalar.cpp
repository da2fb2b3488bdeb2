#include "phasequant/simd.hpp"

#include <cmath>

namespace phq::simd {

namespace {

void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

cplx dotu(std::size_t n, const cplx* x, const cplx* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    }
    return {re, im};
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
        im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
    }
    return {re, im};
}

cplx wsum(std::size_t n, const double* w, const cplx* f) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += w[i] * f[i].real();
        im += w[i] * f[i].imag();
    }
    return {re, im};
}

double wabs(std::size_t n, const double* w, const cplx* f) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * std::hypot(f[i].real(), f[i].imag());
    return s;
}

void mul(std::size_t n, const cplx* a, const cplx* b, cplx* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double re = a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
        const double im = a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
        out[i] = {re, im};
    }
}

const Kernels table{Isa::scalar, axpy, dotu, dotc, wsum, wabs, mul};

} // namespace

const Kernels& scalar_kernels() { return table; }

} // namespace phq::simd
