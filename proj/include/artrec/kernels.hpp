#pragma once

#include <optional>
#include <span>

// Numeric inner loops shared by similarity construction and scoring.
// Each kernel has a portable scalar reference and, on x86-64, an AVX2+FMA
// variant chosen at runtime from CPUID. The variants agree to rounding
// (tests pin the bound); each one is deterministic on its own.

namespace artrec::kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);

/// Best variant the CPU supports.
Isa detected_isa();
/// Variant used by dot/axpy: the override if set, else ARTREC_SIMD=scalar
/// from the environment, else detected_isa().
Isa active_isa();
/// Pin a variant (tests, benchmarking). Requesting Avx2 on a CPU without it
/// falls back to Scalar.
void force_isa(std::optional<Isa> isa);

double dot(std::span<const double> a, std::span<const double> b);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define ARTREC_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace artrec::kernels
