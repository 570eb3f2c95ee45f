#pragma once

// Elementwise inner loops shared by the time steppers and the spectral
// solvers. Every kernel has a scalar reference and vector variants (AVX2 on
// x86-64, NEON on AArch64) picked at runtime. The vector variants perform
// the same IEEE operations in the same order per element (no FMA, no
// horizontal reductions), so all variants agree bit for bit.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace nhm::numkit::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

/// Best variant supported by this CPU and build.
Isa detected_isa();
bool isa_available(Isa isa);
/// Variant currently used by the dispatching entry points.
Isa active_isa();
/// Pin the dispatch to a variant (tests, benchmarks). Returns the previous one.
/// Throws InvalidArgument if the variant is unavailable.
Isa force_isa(Isa isa);

// out = y + a·x
void scaled_sum(std::span<const double> y, double a, std::span<const double> x, std::span<double> out);
// y += a·x
void axpy(double a, std::span<const double> x, std::span<double> y);
// y += (h/6)·((k1 + 2k2) + (2k3 + k4))
void rk4_combine(std::span<double> y, double h, std::span<const double> k1, std::span<const double> k2,
                 std::span<const double> k3, std::span<const double> k4);
// out = a ⊙ b
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
// out = a × b for structure-of-arrays 3-vectors
void cross3(std::span<const double> ax, std::span<const double> ay, std::span<const double> az,
            std::span<const double> bx, std::span<const double> by, std::span<const double> bz,
            std::span<double> ox, std::span<double> oy, std::span<double> oz);
// c[k] *= m[k]
void scale_complex(std::span<std::complex<double>> c, std::span<const double> m);
// c[k] *= i·m[k]
void scale_complex_imag(std::span<std::complex<double>> c, std::span<const double> m);

// Per-variant entry points, exposed for the equivalence tests.
#define NHM_KERNEL_DECLS                                                                                     \
    void scaled_sum(const double* y, double a, const double* x, double* out, std::size_t n);                 \
    void axpy(double a, const double* x, double* y, std::size_t n);                                          \
    void rk4_combine(double* y, double h, const double* k1, const double* k2, const double* k3,              \
                     const double* k4, std::size_t n);                                                       \
    void multiply(const double* a, const double* b, double* out, std::size_t n);                             \
    void cross3(const double* ax, const double* ay, const double* az, const double* bx, const double* by,    \
                const double* bz, double* ox, double* oy, double* oz, std::size_t n);                        \
    void scale_complex(double* c, const double* m, std::size_t n);                                           \
    void scale_complex_imag(double* c, const double* m, std::size_t n);

namespace scalar { NHM_KERNEL_DECLS }
namespace avx2 { NHM_KERNEL_DECLS }
namespace neon { NHM_KERNEL_DECLS }

#undef NHM_KERNEL_DECLS

} // namespace nhm::numkit::kernels
