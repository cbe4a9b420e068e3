#include "abst/kernels.hpp"

#include <stdexcept>

namespace abst::kern {

namespace scalar {

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

}  // namespace scalar

namespace {

struct Vtable {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*scale)(double, double*, std::size_t);
};

constexpr Vtable kScalar{scalar::dot, scalar::sum, scalar::axpy, scalar::scale};

#if defined(__x86_64__)
constexpr Vtable kAvx2{avx2::dot, avx2::sum, avx2::axpy, avx2::scale};

// FMA required as well: the AVX2 dot kernel uses fused multiply-add.
bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

Backend pick_default() {
#if defined(__x86_64__)
    if (cpu_has_avx2()) return Backend::Avx2;
#endif
    return Backend::Scalar;
}

Backend g_backend = pick_default();
const Vtable* g_vt =
#if defined(__x86_64__)
    g_backend == Backend::Avx2 ? &kAvx2 :
#endif
    &kScalar;

}  // namespace

Backend active_backend() { return g_backend; }

void set_backend(Backend b) {
    switch (b) {
        case Backend::Scalar:
            g_backend = b;
            g_vt = &kScalar;
            return;
        case Backend::Avx2:
#if defined(__x86_64__)
            if (cpu_has_avx2()) {
                g_backend = b;
                g_vt = &kAvx2;
                return;
            }
#endif
            throw std::runtime_error("kern: AVX2 backend not supported on this CPU");
    }
    throw std::runtime_error("kern: unknown backend");
}

std::string backend_name() {
    return g_backend == Backend::Avx2 ? "avx2" : "scalar";
}

double dot(const double* x, const double* y, std::size_t n) { return g_vt->dot(x, y, n); }
double sum(const double* x, std::size_t n) { return g_vt->sum(x, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { g_vt->axpy(a, x, y, n); }
void scale(double a, double* x, std::size_t n) { g_vt->scale(a, x, n); }

void matvec(const double* m, const double* v, double* out,
            std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) out[r] = g_vt->dot(m + r * cols, v, cols);
}

}  // namespace abst::kern
