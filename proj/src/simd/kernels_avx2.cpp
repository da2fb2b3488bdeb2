// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "phasequant/simd.hpp"

#include <immintrin.h>

#include <cmath>

namespace phq::simd {

namespace {

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

// [w0, w0, w1, w1] from two consecutive reals
inline __m256d dup_pair(const double* w) {
    return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w)), 0x50);
}

inline cplx hsum_interleaved(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return {_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
}

void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(dp(x + i));
        __m256d xs = _mm256_permute_pd(xv, 0x5);
        __m256d t = _mm256_fmaddsub_pd(xv, ar, _mm256_mul_pd(xs, ai));
        _mm256_storeu_pd(dp(y + i), _mm256_add_pd(_mm256_loadu_pd(dp(y + i)), t));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

// acc1 += x * re(y), acc2 += swap(x) * im(y); combined with addsub.
cplx dotu(std::size_t n, const cplx* x, const cplx* y) {
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(dp(x + i));
        __m256d yv = _mm256_loadu_pd(dp(y + i));
        acc1 = _mm256_fmadd_pd(xv, _mm256_movedup_pd(yv), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), _mm256_permute_pd(yv, 0xF), acc2);
    }
    cplx s = hsum_interleaved(_mm256_addsub_pd(acc1, acc2));
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
    const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_xor_pd(_mm256_loadu_pd(dp(x + i)), conj_mask);
        __m256d yv = _mm256_loadu_pd(dp(y + i));
        acc1 = _mm256_fmadd_pd(xv, _mm256_movedup_pd(yv), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), _mm256_permute_pd(yv, 0xF), acc2);
    }
    cplx s = hsum_interleaved(_mm256_addsub_pd(acc1, acc2));
    for (; i < n; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

cplx wsum(std::size_t n, const double* w, const cplx* f) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(dup_pair(w + i), _mm256_loadu_pd(dp(f + i)), acc0);
        acc1 = _mm256_fmadd_pd(dup_pair(w + i + 2), _mm256_loadu_pd(dp(f + i + 2)), acc1);
    }
    for (; i + 2 <= n; i += 2) acc0 = _mm256_fmadd_pd(dup_pair(w + i), _mm256_loadu_pd(dp(f + i)), acc0);
    cplx s = hsum_interleaved(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += w[i] * f[i];
    return s;
}

double wabs(std::size_t n, const double* w, const cplx* f) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(dp(f + i));
        __m256d b = _mm256_loadu_pd(dp(f + i + 2));
        // [|f0|^2, |f2|^2, |f1|^2, |f3|^2]
        __m256d m = _mm256_sqrt_pd(_mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b)));
        __m256d wv = _mm256_permute4x64_pd(_mm256_loadu_pd(w + i), 0xD8);
        acc = _mm256_fmadd_pd(wv, m, acc);
    }
    __m128d s2 = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    double s = _mm_cvtsd_f64(s2) + _mm_cvtsd_f64(_mm_unpackhi_pd(s2, s2));
    for (; i < n; ++i) s += w[i] * std::sqrt(f[i].real() * f[i].real() + f[i].imag() * f[i].imag());
    return s;
}

void mul(std::size_t n, const cplx* a, const cplx* b, cplx* out) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d av = _mm256_loadu_pd(dp(a + i));
        __m256d bv = _mm256_loadu_pd(dp(b + i));
        __m256d t = _mm256_fmaddsub_pd(av, _mm256_movedup_pd(bv),
                                       _mm256_mul_pd(_mm256_permute_pd(av, 0x5), _mm256_permute_pd(bv, 0xF)));
        _mm256_storeu_pd(dp(out + i), t);
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

const Kernels table{Isa::avx2, axpy, dotu, dotc, wsum, wabs, mul};

} // namespace

const Kernels* avx2_kernels() { return &table; }

} // namespace phq::simd
