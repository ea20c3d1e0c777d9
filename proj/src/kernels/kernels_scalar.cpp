#include "afcdm/kernels.hpp"

#include <cmath>

namespace afcdm::kernels {

namespace {

void s_add(double* dst, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}
void s_sub(double* dst, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] - b[i];
}
void s_mul(double* dst, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}
void s_div(double* dst, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] / b[i];
}
void s_scale_add(double* dst, const double* a, double s, double t, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * s + t;
}
void s_fmadd(double* dst, const double* a, const double* b, const double* c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = std::fma(a[i], b[i], c[i]);
}

double s_dot_kahan(const double* w, const double* f, std::size_t n) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double term = w ? w[i] * f[i] : f[i];
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double s_max_abs(const double* f, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = std::fabs(f[i]);
        if (v > m) m = v;
    }
    return m;
}

void s_stencil5(double* dst, const double* f, const double* c, std::size_t n) {
    for (std::size_t i = 2; i + 2 < n; ++i)
        dst[i] = c[0] * f[i - 2] + c[1] * f[i - 1] + c[2] * f[i] + c[3] * f[i + 1] + c[4] * f[i + 2];
}

}  // namespace

const Table& scalar_table() {
    static const Table t{s_add, s_sub, s_mul, s_div, s_scale_add,
                         s_fmadd, s_dot_kahan, s_max_abs, s_stencil5, "scalar"};
    return t;
}

}  // namespace afcdm::kernels
