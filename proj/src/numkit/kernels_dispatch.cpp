#include <atomic>

#include "nhm/error.hpp"
#include "nhm/numkit/kernels.hpp"

namespace nhm::numkit::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(NHM_BUILD_AVX2) && (defined(__x86_64__) || defined(__i386__)) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

bool cpu_has_neon() {
#if defined(__aarch64__) && defined(__ARM_NEON)
    return true; // mandatory on AArch64
#else
    return false;
#endif
}

std::atomic<Isa>& active_slot() {
    static std::atomic<Isa> slot{detected_isa()};
    return slot;
}

} // namespace

std::string_view to_string(Isa isa) {
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2: return cpu_has_avx2();
    case Isa::Neon: return cpu_has_neon();
    }
    return false;
}

Isa detected_isa() {
    if (cpu_has_avx2()) return Isa::Avx2;
    if (cpu_has_neon()) return Isa::Neon;
    return Isa::Scalar;
}

Isa active_isa() { return active_slot().load(std::memory_order_relaxed); }

Isa force_isa(Isa isa) {
    if (!isa_available(isa))
        throw Error(ErrorKind::InvalidArgument, std::string("kernel variant not available: ") +
                                                    std::string(to_string(isa)));
    return active_slot().exchange(isa);
}

namespace {

void require_same(std::size_t a, std::size_t b) {
    if (a != b) throw Error(ErrorKind::DimensionMismatch, "kernel operand sizes differ");
}

double* as_doubles(std::span<std::complex<double>> c) { return reinterpret_cast<double*>(c.data()); }

} // namespace

#define NHM_DISPATCH(call)                                                                                   \
    switch (active_isa()) {                                                                                  \
    case Isa::Avx2: avx2::call; break;                                                                       \
    case Isa::Neon: neon::call; break;                                                                       \
    default: scalar::call; break;                                                                            \
    }

void scaled_sum(std::span<const double> y, double a, std::span<const double> x, std::span<double> out) {
    require_same(y.size(), x.size());
    require_same(y.size(), out.size());
    NHM_DISPATCH(scaled_sum(y.data(), a, x.data(), out.data(), y.size()))
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    require_same(x.size(), y.size());
    NHM_DISPATCH(axpy(a, x.data(), y.data(), y.size()))
}

void rk4_combine(std::span<double> y, double h, std::span<const double> k1, std::span<const double> k2,
                 std::span<const double> k3, std::span<const double> k4) {
    require_same(y.size(), k1.size());
    require_same(y.size(), k2.size());
    require_same(y.size(), k3.size());
    require_same(y.size(), k4.size());
    NHM_DISPATCH(rk4_combine(y.data(), h, k1.data(), k2.data(), k3.data(), k4.data(), y.size()))
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    require_same(a.size(), b.size());
    require_same(a.size(), out.size());
    NHM_DISPATCH(multiply(a.data(), b.data(), out.data(), a.size()))
}

void cross3(std::span<const double> ax, std::span<const double> ay, std::span<const double> az,
            std::span<const double> bx, std::span<const double> by, std::span<const double> bz,
            std::span<double> ox, std::span<double> oy, std::span<double> oz) {
    const std::size_t n = ax.size();
    for (std::size_t s : {ay.size(), az.size(), bx.size(), by.size(), bz.size(), ox.size(), oy.size(), oz.size()})
        require_same(n, s);
    NHM_DISPATCH(cross3(ax.data(), ay.data(), az.data(), bx.data(), by.data(), bz.data(), ox.data(), oy.data(),
                        oz.data(), n))
}

void scale_complex(std::span<std::complex<double>> c, std::span<const double> m) {
    require_same(c.size(), m.size());
    NHM_DISPATCH(scale_complex(as_doubles(c), m.data(), c.size()))
}

void scale_complex_imag(std::span<std::complex<double>> c, std::span<const double> m) {
    require_same(c.size(), m.size());
    NHM_DISPATCH(scale_complex_imag(as_doubles(c), m.data(), c.size()))
}

#undef NHM_DISPATCH

} // namespace nhm::numkit::kernels
