#pragma once

#include <cstddef>
#include <string>

// Double-precision inner-loop kernels backing the cosine scans and the
// recurrent-network matrix/vector products. Scalar versions are the
// reference; the AVX2 variants are equivalence-tested against them and
// selected at runtime from CPU features.
//
// Reduction order: scalar kernels accumulate strictly left to right.
// AVX2 kernels keep four interleaved partial sums (stride-4 lanes over
// 4-wide vectors) that are combined pairwise at the end, then the
// scalar tail is added left to right.

namespace abst::kern {

enum class Backend { Scalar, Avx2 };

Backend active_backend();
void set_backend(Backend b);    // throws if unsupported on this CPU
std::string backend_name();

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
double sum(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);  // y += a*x
void scale(double a, double* x, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__)
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
double sum(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
}  // namespace avx2
#endif

// Dispatched entry points.
double dot(const double* x, const double* y, std::size_t n);
double sum(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);

// out[r] = dot(m[r*cols .. ], v) for r in [0, rows); rows are contiguous.
void matvec(const double* m, const double* v, double* out,
            std::size_t rows, std::size_t cols);

}  // namespace abst::kern
