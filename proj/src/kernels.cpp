#include "setmc/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

namespace setmc::kernels {

namespace detail {

void pb_update_scalar(double* mass, int count, double p) {
  const double q = 1.0 - p;
  mass[count + 1] = mass[count] * p;
  for (int a = count; a >= 1; --a) {
    // fma so the scalar and AVX2 paths round identically
    mass[a] = std::fma(mass[a], q, mass[a - 1] * p);
  }
  mass[0] *= q;
}

void step_probs_scalar(const double* alpha, const double* cost, int n,
                       double mu, double add, double* out) {
  for (int i = 0; i < n; ++i) out[i] = (mu / cost[i]) * (alpha[i] + add);
}

void step_probs_capped_scalar(const double* alpha, int n, double add,
                              double* out) {
  for (int i = 0; i < n; ++i) out[i] = std::min(alpha[i] + add, 1.0);
}

#if defined(SETMC_KERNELS_AVX2)
void pb_update_avx2(double* mass, int count, double p);
void step_probs_avx2(const double* alpha, const double* cost, int n, double mu,
                     double add, double* out);
void step_probs_capped_avx2(const double* alpha, int n, double add,
                            double* out);
#endif

struct Vtable {
  void (*pb_update)(double*, int, double);
  void (*step_probs)(const double*, const double*, int, double, double,
                     double*);
  void (*step_probs_capped)(const double*, int, double, double*);
};

constexpr Vtable kScalar{pb_update_scalar, step_probs_scalar,
                         step_probs_capped_scalar};
#if defined(SETMC_KERNELS_AVX2)
constexpr Vtable kAvx2{pb_update_avx2, step_probs_avx2,
                       step_probs_capped_avx2};
#endif

bool avx2_usable() {
#if defined(SETMC_KERNELS_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<const Vtable*> g_vtable{nullptr};
std::atomic<Backend> g_backend{Backend::Scalar};

const Vtable* vtable() {
  const Vtable* v = g_vtable.load(std::memory_order_acquire);
  if (v) return v;
#if defined(SETMC_KERNELS_AVX2)
  if (avx2_usable()) {
    g_backend.store(Backend::Avx2, std::memory_order_relaxed);
    g_vtable.store(&kAvx2, std::memory_order_release);
    return &kAvx2;
  }
#endif
  g_backend.store(Backend::Scalar, std::memory_order_relaxed);
  g_vtable.store(&kScalar, std::memory_order_release);
  return &kScalar;
}

}  // namespace detail

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
  }
  return "?";
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::Scalar};
  if (detail::avx2_usable()) out.push_back(Backend::Avx2);
  return out;
}

Backend active_backend() {
  detail::vtable();
  return detail::g_backend.load(std::memory_order_relaxed);
}

void force_backend(Backend b) {
  switch (b) {
    case Backend::Scalar:
      detail::g_backend.store(Backend::Scalar);
      detail::g_vtable.store(&detail::kScalar);
      return;
    case Backend::Avx2:
#if defined(SETMC_KERNELS_AVX2)
      if (detail::avx2_usable()) {
        detail::g_backend.store(Backend::Avx2);
        detail::g_vtable.store(&detail::kAvx2);
        return;
      }
#endif
      throw std::invalid_argument("kernels: avx2 backend unavailable");
  }
  throw std::invalid_argument("kernels: unknown backend");
}

void pb_update(double* mass, int count, double p) {
  detail::vtable()->pb_update(mass, count, p);
}

void step_probs(const double* alpha, const double* cost, int n, double mu,
                double add, double* out) {
  detail::vtable()->step_probs(alpha, cost, n, mu, add, out);
}

void step_probs_capped(const double* alpha, int n, double add, double* out) {
  detail::vtable()->step_probs_capped(alpha, n, add, out);
}

}  // namespace setmc::kernels
