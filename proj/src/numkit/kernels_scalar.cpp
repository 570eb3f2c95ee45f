#include "nhm/numkit/kernels.hpp"

namespace nhm::numkit::kernels::scalar {

void scaled_sum(const double* y, double a, const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = y[i] + a * x[i];
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void rk4_combine(double* y, double h, const double* k1, const double* k2, const double* k3, const double* k4,
                 std::size_t n) {
    const double w = h / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = (k1[i] + 2.0 * k2[i]) + (2.0 * k3[i] + k4[i]);
        y[i] = y[i] + w * s;
    }
}

void multiply(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void cross3(const double* ax, const double* ay, const double* az, const double* bx, const double* by,
            const double* bz, double* ox, double* oy, double* oz, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double x = ay[i] * bz[i] - az[i] * by[i];
        const double y = az[i] * bx[i] - ax[i] * bz[i];
        const double z = ax[i] * by[i] - ay[i] * bx[i];
        ox[i] = x;
        oy[i] = y;
        oz[i] = z;
    }
}

void scale_complex(double* c, const double* m, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        c[2 * k] = c[2 * k] * m[k];
        c[2 * k + 1] = c[2 * k + 1] * m[k];
    }
}

void scale_complex_imag(double* c, const double* m, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        const double re = c[2 * k];
        const double im = c[2 * k + 1];
        c[2 * k] = -(im * m[k]);
        c[2 * k + 1] = re * m[k];
    }
}

} // namespace nhm::numkit::kernels::scalar
