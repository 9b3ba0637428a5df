#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "artrec/kernels.hpp"

namespace artrec::kernels {

namespace {

// -1: no override; otherwise an Isa value.
std::atomic<int> g_override{-1};

Isa from_environment() {
  const char* env = std::getenv("ARTREC_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return detected_isa();
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

Isa detected_isa() {
#ifdef ARTREC_HAVE_AVX2_KERNELS
  static const bool has_avx2 = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  if (has_avx2) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

Isa active_isa() {
  const int o = g_override.load(std::memory_order_relaxed);
  if (o >= 0) return static_cast<Isa>(o);
  static const Isa env_isa = from_environment();
  return env_isa;
}

void force_isa(std::optional<Isa> isa) {
  if (!isa) {
    g_override.store(-1);
    return;
  }
  Isa chosen = *isa;
  if (chosen == Isa::Avx2 && detected_isa() != Isa::Avx2) chosen = Isa::Scalar;
  g_override.store(static_cast<int>(chosen));
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
#ifdef ARTREC_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::Avx2) return avx2::dot(a.data(), b.data(), a.size());
#endif
  return scalar::dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: length mismatch");
#ifdef ARTREC_HAVE_AVX2_KERNELS
  if (active_isa() == Isa::Avx2) {
    avx2::axpy(alpha, x.data(), y.data(), x.size());
    return;
  }
#endif
  scalar::axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace artrec::kernels
