#include "szg/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
#include <cpuid.h>
#define SZG_X86 1
#endif

namespace szg::simd {

namespace {

using DotFn = double (*)(const double*, const double*, std::size_t);
using WdotFn = double (*)(const double*, const double*, const double*, std::size_t);
using AxpyFn = void (*)(double, const double*, double*, std::size_t);
using ScaleFn = void (*)(double, double*, std::size_t);

struct Table {
  DotFn dot;
  WdotFn wdot;
  AxpyFn axpy;
  ScaleFn scale;
  Lane lane;
  const char* name;
};

constexpr Table kScalar{detail::dot_scalar, detail::wdot_scalar, detail::axpy_scalar,
                        detail::scale_scalar, Lane::Scalar, "scalar"};
#ifdef SZG_BUILD_AVX2
constexpr Table kAvx2{detail::dot_avx2, detail::wdot_avx2, detail::axpy_avx2,
                      detail::scale_avx2, Lane::Avx2, "avx2"};
#endif

bool detect_avx2() {
#if defined(SZG_X86)
  unsigned eax, ebx, ecx, edx;
  if (!__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) return false;
  bool avx2 = (ebx & (1u << 5)) != 0;
  if (!__get_cpuid(1, &eax, &ebx, &ecx, &edx)) return false;
  bool fma = (ecx & (1u << 12)) != 0;
  return avx2 && fma;
#else
  return false;
#endif
}

const Table& widest() {
#ifdef SZG_BUILD_AVX2
  static const bool have = detect_avx2();
  if (have) return kAvx2;
#endif
  return kScalar;
}

const Table* g_active = nullptr;

const Table& active() {
  if (!g_active) g_active = &widest();
  return *g_active;
}

}  // namespace

bool cpu_has_avx2() { return detect_avx2(); }

void set_lane(Lane lane) {
  switch (lane) {
    case Lane::Auto:
      g_active = &widest();
      break;
    case Lane::Scalar:
      g_active = &kScalar;
      break;
    case Lane::Avx2:
#ifdef SZG_BUILD_AVX2
      if (detect_avx2()) {
        g_active = &kAvx2;
        break;
      }
#endif
      g_active = &kScalar;  // fall back when unavailable
      break;
  }
}

Lane active_lane() { return active().lane; }
const char* lane_name() { return active().name; }

double dot(const double* x, const double* y, std::size_t n) { return active().dot(x, y, n); }
double wdot(const double* x, const double* y, const double* w, std::size_t n) {
  return active().wdot(x, y, w, n);
}
void axpy(double a, const double* x, double* y, std::size_t n) { active().axpy(a, x, y, n); }
void scale(double a, double* x, std::size_t n) { active().scale(a, x, n); }

}  // namespace szg::simd
