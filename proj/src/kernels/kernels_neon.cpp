// NEON (aarch64) kernel variants; double-precision, 2 lanes.

#include "afcdm/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

namespace afcdm::kernels {

namespace {

void n_add(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] + b[i];
}
void n_sub(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] - b[i];
}
void n_mul(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}
void n_div(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vdivq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] / b[i];
}
void n_scale_add(double* dst, const double* a, double s, double t, std::size_t n) {
    // unfused mul+add keeps results bit-identical to the scalar reference
    const float64x2_t vs = vdupq_n_f64(s), vt = vdupq_n_f64(t);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vaddq_f64(vmulq_f64(vld1q_f64(a + i), vs), vt));
    for (; i < n; ++i) dst[i] = a[i] * s + t;
}
void n_fmadd(double* dst, const double* a, const double* b, const double* c, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(dst + i, vfmaq_f64(vld1q_f64(c + i), vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) dst[i] = std::fma(a[i], b[i], c[i]);
}

double n_dot_kahan(const double* w, const double* f, std::size_t n) {
    float64x2_t sum = vdupq_n_f64(0.0), comp = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t term = vld1q_f64(f + i);
        if (w) term = vmulq_f64(vld1q_f64(w + i), term);
        const float64x2_t y = vsubq_f64(term, comp);
        const float64x2_t t = vaddq_f64(sum, y);
        comp = vsubq_f64(vsubq_f64(t, sum), y);
        sum = t;
    }
    double acc = 0.0, acomp = 0.0;
    auto fold = [&](double term) {
        const double y = term - acomp;
        const double t = acc + y;
        acomp = (t - acc) - y;
        acc = t;
    };
    fold(vgetq_lane_f64(sum, 0) - vgetq_lane_f64(comp, 0));
    fold(vgetq_lane_f64(sum, 1) - vgetq_lane_f64(comp, 1));
    for (; i < n; ++i) fold(w ? w[i] * f[i] : f[i]);
    return acc;
}

double n_max_abs(const double* f, std::size_t n) {
    float64x2_t m = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(f + i)));
    double r = vgetq_lane_f64(m, 0);
    const double r1 = vgetq_lane_f64(m, 1);
    if (r1 > r) r = r1;
    for (; i < n; ++i) {
        const double v = std::fabs(f[i]);
        if (v > r) r = v;
    }
    return r;
}

void n_stencil5(double* dst, const double* f, const double* c, std::size_t n) {
    if (n < 5) return;
    const float64x2_t c0 = vdupq_n_f64(c[0]), c1 = vdupq_n_f64(c[1]), c2 = vdupq_n_f64(c[2]),
                      c3 = vdupq_n_f64(c[3]), c4 = vdupq_n_f64(c[4]);
    std::size_t i = 2;
    for (; i + 2 + 2 <= n; i += 2) {
        float64x2_t acc = vmulq_f64(c0, vld1q_f64(f + i - 2));
        acc = vaddq_f64(acc, vmulq_f64(c1, vld1q_f64(f + i - 1)));
        acc = vaddq_f64(acc, vmulq_f64(c2, vld1q_f64(f + i)));
        acc = vaddq_f64(acc, vmulq_f64(c3, vld1q_f64(f + i + 1)));
        acc = vaddq_f64(acc, vmulq_f64(c4, vld1q_f64(f + i + 2)));
        vst1q_f64(dst + i, acc);
    }
    for (; i + 2 < n; ++i)
        dst[i] = c[0] * f[i - 2] + c[1] * f[i - 1] + c[2] * f[i] + c[3] * f[i + 1] + c[4] * f[i + 2];
}

}  // namespace

const Table* neon_table_if_supported() {
    static const Table t{n_add, n_sub, n_mul, n_div, n_scale_add,
                         n_fmadd, n_dot_kahan, n_max_abs, n_stencil5, "neon"};
    return &t;
}

}  // namespace afcdm::kernels

#else

namespace afcdm::kernels {
const Table* neon_table_if_supported() { return nullptr; }
}  // namespace afcdm::kernels

#endif
