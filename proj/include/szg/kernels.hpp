#pragma once

#include <cstddef>

// Low-level array kernels used by the quadrature and Gram-assembly inner
// loops.  Every kernel has a scalar reference implementation with a fixed
// left-to-right summation order; wider variants (AVX2 on x86) are selected
// at runtime from CPU features.  Verification suites force the scalar lane
// so that reports are bit-for-bit reproducible across machines.
namespace szg::simd {

enum class Lane { Auto, Scalar, Avx2 };

// Selects the active lane.  Auto picks the widest supported one.
void set_lane(Lane lane);
Lane active_lane();
const char* lane_name();
bool cpu_has_avx2();

// sum_i x[i]*y[i]
double dot(const double* x, const double* y, std::size_t n);
// sum_i w[i]*x[i]*y[i]
double wdot(const double* x, const double* y, const double* w, std::size_t n);
// y[i] += a*x[i]
void axpy(double a, const double* x, double* y, std::size_t n);
// x[i] *= a
void scale(double a, double* x, std::size_t n);

namespace detail {
double dot_scalar(const double* x, const double* y, std::size_t n);
double wdot_scalar(const double* x, const double* y, const double* w, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void scale_scalar(double a, double* x, std::size_t n);
#ifdef SZG_BUILD_AVX2
double dot_avx2(const double* x, const double* y, std::size_t n);
double wdot_avx2(const double* x, const double* y, const double* w, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void scale_avx2(double a, double* x, std::size_t n);
#endif
}  // namespace detail

}  // namespace szg::simd
