#pragma once
// Data-parallel inner loops for field arithmetic: elementwise ops, reductions,
// 5-point stencil sweeps. Scalar reference kernels plus SIMD variants
// (AVX2/FMA on x86-64, NEON on aarch64) selected at runtime; the scalar table
// stays available so backends can be equivalence-tested against it.

#include <cstddef>
#include <string>

namespace afcdm::kernels {

struct Table {
    // dst[i] = a[i] op b[i]
    void (*add)(double* dst, const double* a, const double* b, std::size_t n);
    void (*sub)(double* dst, const double* a, const double* b, std::size_t n);
    void (*mul)(double* dst, const double* a, const double* b, std::size_t n);
    void (*div)(double* dst, const double* a, const double* b, std::size_t n);
    // dst[i] = a[i]*s + t
    void (*scale_add)(double* dst, const double* a, double s, double t, std::size_t n);
    // dst[i] = fma(a[i], b[i], c[i])
    void (*fmadd)(double* dst, const double* a, const double* b, const double* c, std::size_t n);
    // compensated (Kahan) sum of w[i]*f[i]; w == nullptr means plain sum of f
    double (*dot_kahan)(const double* w, const double* f, std::size_t n);
    double (*max_abs)(const double* f, std::size_t n);
    // dst[i] = c0*f[i-2] + c1*f[i-1] + c2*f[i] + c3*f[i+1] + c4*f[i+2],
    // i = 2..n-3 (caller handles boundaries)
    void (*stencil5)(double* dst, const double* f, const double* c, std::size_t n);
    const char* name;
};

const Table& scalar_table();
const Table& active_table();   // best backend for this CPU (avx2 > neon > scalar)

// Force a backend by name ("scalar", "avx2", "neon"); returns false if the
// backend is unavailable on this machine. Used by tests and AFCDM_KERNELS env.
bool set_backend(const std::string& name);
std::string backend_name();

}  // namespace afcdm::kernels
