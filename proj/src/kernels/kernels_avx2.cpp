// AVX2/FMA kernel variants. Compiled unconditionally on x86-64 via per-function
// target attributes; dispatch checks cpu support at runtime.

#include "afcdm/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace afcdm::kernels {

namespace {

#define AFCDM_AVX2 __attribute__((target("avx2,fma")))

AFCDM_AVX2 void v_add(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) dst[i] = a[i] + b[i];
}

AFCDM_AVX2 void v_sub(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) dst[i] = a[i] - b[i];
}

AFCDM_AVX2 void v_mul(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}

AFCDM_AVX2 void v_div(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_div_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) dst[i] = a[i] / b[i];
}

AFCDM_AVX2 void v_scale_add(double* dst, const double* a, double s, double t, std::size_t n) {
    // unfused mul+add keeps results bit-identical to the scalar reference
    const __m256d vs = _mm256_set1_pd(s);
    const __m256d vt = _mm256_set1_pd(t);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(a + i), vs), vt));
    for (; i < n; ++i) dst[i] = a[i] * s + t;
}

AFCDM_AVX2 void v_fmadd(double* dst, const double* a, const double* b, const double* c, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i),
                                                  _mm256_loadu_pd(c + i)));
    for (; i < n; ++i) dst[i] = std::fma(a[i], b[i], c[i]);
}

// four independent Kahan lanes, compensated combine at the end
AFCDM_AVX2 double v_dot_kahan(const double* w, const double* f, std::size_t n) {
    __m256d sum = _mm256_setzero_pd();
    __m256d comp = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vf = _mm256_loadu_pd(f + i);
        const __m256d term = w ? _mm256_mul_pd(_mm256_loadu_pd(w + i), vf) : vf;
        const __m256d y = _mm256_sub_pd(term, comp);
        const __m256d t = _mm256_add_pd(sum, y);
        comp = _mm256_sub_pd(_mm256_sub_pd(t, sum), y);
        sum = t;
    }
    double s[4], c[4];
    _mm256_storeu_pd(s, sum);
    _mm256_storeu_pd(c, comp);
    double acc = 0.0, acomp = 0.0;
    auto fold = [&](double term) {
        const double y = term - acomp;
        const double t = acc + y;
        acomp = (t - acc) - y;
        acc = t;
    };
    for (int k = 0; k < 4; ++k) fold(s[k] - c[k]);
    for (; i < n; ++i) fold(w ? w[i] * f[i] : f[i]);
    return acc;
}

AFCDM_AVX2 double v_max_abs(const double* f, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        m = _mm256_max_pd(m, _mm256_andnot_pd(signmask, _mm256_loadu_pd(f + i)));
    double lanes[4];
    _mm256_storeu_pd(lanes, m);
    double r = lanes[0];
    for (int k = 1; k < 4; ++k) r = lanes[k] > r ? lanes[k] : r;
    for (; i < n; ++i) {
        const double v = std::fabs(f[i]);
        if (v > r) r = v;
    }
    return r;
}

AFCDM_AVX2 void v_stencil5(double* dst, const double* f, const double* c, std::size_t n) {
    if (n < 5) return;
    const __m256d c0 = _mm256_set1_pd(c[0]), c1 = _mm256_set1_pd(c[1]), c2 = _mm256_set1_pd(c[2]),
                  c3 = _mm256_set1_pd(c[3]), c4 = _mm256_set1_pd(c[4]);
    std::size_t i = 2;
    for (; i + 4 + 2 <= n; i += 4) {
        __m256d acc = _mm256_mul_pd(c0, _mm256_loadu_pd(f + i - 2));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(c1, _mm256_loadu_pd(f + i - 1)));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(c2, _mm256_loadu_pd(f + i)));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(c3, _mm256_loadu_pd(f + i + 1)));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(c4, _mm256_loadu_pd(f + i + 2)));
        _mm256_storeu_pd(dst + i, acc);
    }
    for (; i + 2 < n; ++i)
        dst[i] = c[0] * f[i - 2] + c[1] * f[i - 1] + c[2] * f[i] + c[3] * f[i + 1] + c[4] * f[i + 2];
}

#undef AFCDM_AVX2

}  // namespace

const Table* avx2_table_if_supported() {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return nullptr;
    static const Table t{v_add, v_sub, v_mul, v_div, v_scale_add,
                         v_fmadd, v_dot_kahan, v_max_abs, v_stencil5, "avx2"};
    return &t;
}

}  // namespace afcdm::kernels

#else

namespace afcdm::kernels {
const Table* avx2_table_if_supported() { return nullptr; }
}  // namespace afcdm::kernels

#endif
