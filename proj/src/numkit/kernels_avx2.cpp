// Built with -mavx2 (and never -mfma) when the compiler targets x86-64; the
// dispatcher only calls into this file after a CPUID check.

#include "nhm/numkit/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace nhm::numkit::kernels::avx2 {

void scaled_sum(const double* y, double a, const double* x, double* out, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(out + i, r);
    }
    scalar::scaled_sum(y + i, a, x + i, out + i, n - i);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(y + i, r);
    }
    scalar::axpy(a, x + i, y + i, n - i);
}

void rk4_combine(double* y, double h, const double* k1, const double* k2, const double* k3, const double* k4,
                 std::size_t n) {
    const __m256d w = _mm256_set1_pd(h / 6.0);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d left = _mm256_add_pd(_mm256_loadu_pd(k1 + i), _mm256_mul_pd(two, _mm256_loadu_pd(k2 + i)));
        const __m256d right = _mm256_add_pd(_mm256_mul_pd(two, _mm256_loadu_pd(k3 + i)), _mm256_loadu_pd(k4 + i));
        const __m256d s = _mm256_add_pd(left, right);
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(w, s)));
    }
    scalar::rk4_combine(y + i, h, k1 + i, k2 + i, k3 + i, k4 + i, n - i);
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    scalar::multiply(a + i, b + i, out + i, n - i);
}

void cross3(const double* ax, const double* ay, const double* az, const double* bx, const double* by,
            const double* bz, double* ox, double* oy, double* oz, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vax = _mm256_loadu_pd(ax + i), vay = _mm256_loadu_pd(ay + i), vaz = _mm256_loadu_pd(az + i);
        const __m256d vbx = _mm256_loadu_pd(bx + i), vby = _mm256_loadu_pd(by + i), vbz = _mm256_loadu_pd(bz + i);
        const __m256d x = _mm256_sub_pd(_mm256_mul_pd(vay, vbz), _mm256_mul_pd(vaz, vby));
        const __m256d y = _mm256_sub_pd(_mm256_mul_pd(vaz, vbx), _mm256_mul_pd(vax, vbz));
        const __m256d z = _mm256_sub_pd(_mm256_mul_pd(vax, vby), _mm256_mul_pd(vay, vbx));
        _mm256_storeu_pd(ox + i, x);
        _mm256_storeu_pd(oy + i, y);
        _mm256_storeu_pd(oz + i, z);
    }
    scalar::cross3(ax + i, ay + i, az + i, bx + i, by + i, bz + i, ox + i, oy + i, oz + i, n - i);
}

namespace {
// [m0, m0, m1, m1]
inline __m256d load_pair_duplicated(const double* m) {
    return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(m)), 0x50);
}
} // namespace

void scale_complex(double* c, const double* m, std::size_t n) {
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2)
        _mm256_storeu_pd(c + 2 * k, _mm256_mul_pd(_mm256_loadu_pd(c + 2 * k), load_pair_duplicated(m + k)));
    scalar::scale_complex(c + 2 * k, m + k, n - k);
}

void scale_complex_imag(double* c, const double* m, std::size_t n) {
    const __m256d negate_re = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d swapped = _mm256_permute_pd(_mm256_loadu_pd(c + 2 * k), 0x5); // [im, re, im, re]
        const __m256d prod = _mm256_mul_pd(swapped, load_pair_duplicated(m + k));
        _mm256_storeu_pd(c + 2 * k, _mm256_xor_pd(prod, negate_re));
    }
    scalar::scale_complex_imag(c + 2 * k, m + k, n - k);
}

} // namespace nhm::numkit::kernels::avx2

#else

// Non-x86 build: the symbols exist so the dispatch table links, but they are
// never selected.
namespace nhm::numkit::kernels::avx2 {
void scaled_sum(const double* y, double a, const double* x, double* out, std::size_t n) { scalar::scaled_sum(y, a, x, out, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { scalar::axpy(a, x, y, n); }
void rk4_combine(double* y, double h, const double* k1, const double* k2, const double* k3, const double* k4, std::size_t n) { scalar::rk4_combine(y, h, k1, k2, k3, k4, n); }
void multiply(const double* a, const double* b, double* out, std::size_t n) { scalar::multiply(a, b, out, n); }
void cross3(const double* ax, const double* ay, const double* az, const double* bx, const double* by, const double* bz, double* ox, double* oy, double* oz, std::size_t n) { scalar::cross3(ax, ay, az, bx, by, bz, ox, oy, oz, n); }
void scale_complex(double* c, const double* m, std::size_t n) { scalar::scale_complex(c, m, n); }
void scale_complex_imag(double* c, const double* m, std::size_t n) { scalar::scale_complex_imag(c, m, n); }
} // namespace nhm::numkit::kernels::avx2

#endif
