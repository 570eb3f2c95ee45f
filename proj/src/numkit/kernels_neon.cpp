#include "nhm/numkit/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

namespace nhm::numkit::kernels::neon {

void scaled_sum(const double* y, double a, const double* x, double* out, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
    scalar::scaled_sum(y + i, a, x + i, out + i, n - i);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
    scalar::axpy(a, x + i, y + i, n - i);
}

void rk4_combine(double* y, double h, const double* k1, const double* k2, const double* k3, const double* k4,
                 std::size_t n) {
    const float64x2_t w = vdupq_n_f64(h / 6.0);
    const float64x2_t two = vdupq_n_f64(2.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t left = vaddq_f64(vld1q_f64(k1 + i), vmulq_f64(two, vld1q_f64(k2 + i)));
        const float64x2_t right = vaddq_f64(vmulq_f64(two, vld1q_f64(k3 + i)), vld1q_f64(k4 + i));
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(w, vaddq_f64(left, right))));
    }
    scalar::rk4_combine(y + i, h, k1 + i, k2 + i, k3 + i, k4 + i, n - i);
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    scalar::multiply(a + i, b + i, out + i, n - i);
}

void cross3(const double* ax, const double* ay, const double* az, const double* bx, const double* by,
            const double* bz, double* ox, double* oy, double* oz, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t vax = vld1q_f64(ax + i), vay = vld1q_f64(ay + i), vaz = vld1q_f64(az + i);
        const float64x2_t vbx = vld1q_f64(bx + i), vby = vld1q_f64(by + i), vbz = vld1q_f64(bz + i);
        vst1q_f64(ox + i, vsubq_f64(vmulq_f64(vay, vbz), vmulq_f64(vaz, vby)));
        vst1q_f64(oy + i, vsubq_f64(vmulq_f64(vaz, vbx), vmulq_f64(vax, vbz)));
        vst1q_f64(oz + i, vsubq_f64(vmulq_f64(vax, vby), vmulq_f64(vay, vbx)));
    }
    scalar::cross3(ax + i, ay + i, az + i, bx + i, by + i, bz + i, ox + i, oy + i, oz + i, n - i);
}

// One complex number per 128-bit register.
void scale_complex(double* c, const double* m, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) vst1q_f64(c + 2 * k, vmulq_f64(vld1q_f64(c + 2 * k), vdupq_n_f64(m[k])));
}

void scale_complex_imag(double* c, const double* m, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        const float64x2_t v = vld1q_f64(c + 2 * k);
        const float64x2_t swapped = vextq_f64(v, v, 1); // [im, re]
        const float64x2_t prod = vmulq_f64(swapped, vdupq_n_f64(m[k]));
        vst1q_f64(c + 2 * k, vsetq_lane_f64(-vgetq_lane_f64(prod, 0), prod, 0));
    }
}

} // namespace nhm::numkit::kernels::neon

#else

namespace nhm::numkit::kernels::neon {
void scaled_sum(const double* y, double a, const double* x, double* out, std::size_t n) { scalar::scaled_sum(y, a, x, out, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { scalar::axpy(a, x, y, n); }
void rk4_combine(double* y, double h, const double* k1, const double* k2, const double* k3, const double* k4, std::size_t n) { scalar::rk4_combine(y, h, k1, k2, k3, k4, n); }
void multiply(const double* a, const double* b, double* out, std::size_t n) { scalar::multiply(a, b, out, n); }
void cross3(const double* ax, const double* ay, const double* az, const double* bx, const double* by, const double* bz, double* ox, double* oy, double* oz, std::size_t n) { scalar::cross3(ax, ay, az, bx, by, bz, ox, oy, oz, n); }
void scale_complex(double* c, const double* m, std::size_t n) { scalar::scale_complex(c, m, n); }
void scale_complex_imag(double* c, const double* m, std::size_t n) { scalar::scale_complex_imag(c, m, n); }
} // namespace nhm::numkit::kernels::neon

#endif
