#include "nhm/numkit/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "nhm/error.hpp"
#include "nhm/numkit/kernels.hpp"

namespace nhm::numkit {

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

namespace {

void require_grid_size(std::size_t n) {
    if (!is_power_of_two(n))
        throw Error(ErrorKind::InvalidArgument, "grid size must be a power of two >= 2, got " + std::to_string(n));
}

void require_length(double length) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw Error(ErrorKind::InvalidArgument, "grid length must be positive and finite");
}

void require_size(std::size_t got, std::size_t want, const char* what) {
    if (got != want)
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": expected " + std::to_string(want) +
                                                      " entries, got " + std::to_string(got));
}

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Mode k of an order-p derivative: (ik)^p. Returns the real factor and
// whether it multiplies i.
struct Multiplier {
    double factor;
    bool imaginary;
};

Multiplier derivative_multiplier(double k, int order, bool nyquist) {
    if (order % 2 == 1 && nyquist) return {0.0, true};
    switch (order) {
    case 1: return {k, true};
    case 2: return {-k * k, false};
    case 3: return {-k * k * k, true};
    default: break;
    }
    throw Error(ErrorKind::InvalidArgument, "derivative order must be 1, 2 or 3");
}

void apply_multiplier(std::span<std::complex<double>> coeffs, std::span<const double> m, bool imaginary) {
    if (imaginary) kernels::scale_complex_imag(coeffs, m);
    else kernels::scale_complex(coeffs, m);
}

} // namespace

namespace detail {

struct Plan1D {
    explicit Plan1D(std::size_t n) : n(n) {
        real = fftw_alloc_real(n);
        spec = fftw_alloc_complex(n / 2 + 1);
        const int ni = static_cast<int>(n);
        std::lock_guard lock(planner_mutex());
        fwd = fftw_plan_dft_r2c_1d(ni, real, spec, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(ni, spec, real, FFTW_ESTIMATE);
    }
    ~Plan1D() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
        fftw_free(real);
        fftw_free(spec);
    }
    Plan1D(const Plan1D&) = delete;
    Plan1D& operator=(const Plan1D&) = delete;

    std::size_t n;
    double* real;
    fftw_complex* spec;
    fftw_plan fwd;
    fftw_plan inv;
    std::mutex exec;
};

struct Plan2D {
    explicit Plan2D(std::size_t n) : n(n) {
        real = fftw_alloc_real(n * n);
        spec = fftw_alloc_complex(n * (n / 2 + 1));
        const int ni = static_cast<int>(n);
        std::lock_guard lock(planner_mutex());
        fwd = fftw_plan_dft_r2c_2d(ni, ni, real, spec, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_2d(ni, ni, spec, real, FFTW_ESTIMATE);
    }
    ~Plan2D() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
        fftw_free(real);
        fftw_free(spec);
    }
    Plan2D(const Plan2D&) = delete;
    Plan2D& operator=(const Plan2D&) = delete;

    std::size_t n;
    double* real;
    fftw_complex* spec;
    fftw_plan fwd;
    fftw_plan inv;
    std::mutex exec;
};

} // namespace detail

namespace {

template <class Plan>
std::shared_ptr<Plan> cached_plan(std::size_t n) {
    static std::mutex cache_mutex;
    static std::map<std::size_t, std::shared_ptr<Plan>> cache;
    std::lock_guard lock(cache_mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<Plan>(n);
    return slot;
}

} // namespace

// ---------------------------------------------------------------------------
// Grids

PeriodicGrid1D::PeriodicGrid1D(std::size_t n, double length) : PeriodicGrid1D(n, length, std::vector<double>(n, 0.0)) {}

PeriodicGrid1D::PeriodicGrid1D(std::size_t n, double length, std::vector<double> values)
    : n_(n), length_(length), values_(std::move(values)) {
    require_grid_size(n);
    require_length(length);
    require_size(values_.size(), n, "PeriodicGrid1D values");
}

PeriodicGrid1D PeriodicGrid1D::sample(std::size_t n, double length, const std::function<double(double)>& f) {
    PeriodicGrid1D g(n, length);
    for (std::size_t j = 0; j < n; ++j) g.values_[j] = f(g.node(j));
    return g;
}

PeriodicGrid2D::PeriodicGrid2D(std::size_t n, double length)
    : PeriodicGrid2D(n, length, std::vector<double>(n * n, 0.0)) {}

PeriodicGrid2D::PeriodicGrid2D(std::size_t n, double length, std::vector<double> values)
    : n_(n), length_(length), values_(std::move(values)) {
    require_grid_size(n);
    require_length(length);
    require_size(values_.size(), n * n, "PeriodicGrid2D values");
}

PeriodicGrid2D PeriodicGrid2D::sample(std::size_t n, double length,
                                      const std::function<double(double, double)>& f) {
    PeriodicGrid2D g(n, length);
    for (std::size_t iy = 0; iy < n; ++iy)
        for (std::size_t ix = 0; ix < n; ++ix) g.at(ix, iy) = f(g.node(ix), g.node(iy));
    return g;
}

// ---------------------------------------------------------------------------
// 1-D

Spectral1D::Spectral1D(std::size_t n, double length) : n_(n), length_(length) {
    require_grid_size(n);
    require_length(length);
    plan_ = cached_plan<detail::Plan1D>(n);
}

double Spectral1D::wavenumber(std::size_t k) const noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(k) / length_;
}

void Spectral1D::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
    require_size(in.size(), n_, "Spectral1D::forward input");
    require_size(out.size(), modes(), "Spectral1D::forward output");
    std::lock_guard lock(plan_->exec);
    std::copy(in.begin(), in.end(), plan_->real);
    fftw_execute(plan_->fwd);
    const auto* spec = reinterpret_cast<const std::complex<double>*>(plan_->spec);
    std::copy(spec, spec + modes(), out.begin());
}

void Spectral1D::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
    require_size(in.size(), modes(), "Spectral1D::inverse input");
    require_size(out.size(), n_, "Spectral1D::inverse output");
    std::lock_guard lock(plan_->exec);
    std::copy(in.begin(), in.end(), reinterpret_cast<std::complex<double>*>(plan_->spec));
    fftw_execute(plan_->inv);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t j = 0; j < n_; ++j) out[j] = plan_->real[j] * scale;
}

void Spectral1D::derivative(std::span<const double> in, std::span<double> out, int order) const {
    std::vector<std::complex<double>> c(modes());
    forward(in, c);
    std::vector<double> m(modes());
    bool imaginary = false;
    for (std::size_t k = 0; k < modes(); ++k) {
        const Multiplier mk = derivative_multiplier(wavenumber(k), order, k == n_ / 2);
        m[k] = mk.factor;
        imaginary = mk.imaginary;
    }
    apply_multiplier(c, m, imaginary);
    inverse(c, out);
}

std::vector<double> Spectral1D::derivative(std::span<const double> in, int order) const {
    std::vector<double> out(n_);
    derivative(in, out, order);
    return out;
}

void Spectral1D::apply_real_multiplier(std::span<const double> in, std::span<double> out,
                                       std::span<const double> multiplier) const {
    require_size(multiplier.size(), modes(), "Spectral1D multiplier");
    std::vector<std::complex<double>> c(modes());
    forward(in, c);
    kernels::scale_complex(c, multiplier);
    inverse(c, out);
}

void Spectral1D::dealias(std::span<double> inout) const {
    std::vector<std::complex<double>> c(modes());
    forward(inout, c);
    for (std::size_t k = 0; k < modes(); ++k)
        if (3 * k >= n_) c[k] = 0.0;
    inverse(c, inout);
}

double Spectral1D::tail_energy_fraction(std::span<const double> in) const {
    std::vector<std::complex<double>> c(modes());
    forward(in, c);
    double total = 0.0, tail = 0.0;
    for (std::size_t k = 0; k < modes(); ++k) {
        const double w = (k == 0 || k == n_ / 2) ? 1.0 : 2.0;
        const double e = w * std::norm(c[k]);
        total += e;
        if (3 * k >= n_) tail += e;
    }
    return total > 0.0 ? tail / total : 0.0;
}

PeriodicGrid1D spectral_derivative(const PeriodicGrid1D& grid, int order) {
    Spectral1D ops(grid.size(), grid.length());
    PeriodicGrid1D out(grid.size(), grid.length());
    ops.derivative(grid.values(), out.values(), order);
    return out;
}

// ---------------------------------------------------------------------------
// 2-D

Spectral2D::Spectral2D(std::size_t n, double length) : n_(n), length_(length) {
    require_grid_size(n);
    require_length(length);
    plan_ = cached_plan<detail::Plan2D>(n);
}

void Spectral2D::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
    require_size(in.size(), count(), "Spectral2D::forward input");
    require_size(out.size(), modes(), "Spectral2D::forward output");
    std::lock_guard lock(plan_->exec);
    std::copy(in.begin(), in.end(), plan_->real);
    fftw_execute(plan_->fwd);
    const auto* spec = reinterpret_cast<const std::complex<double>*>(plan_->spec);
    std::copy(spec, spec + modes(), out.begin());
}

void Spectral2D::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
    require_size(in.size(), modes(), "Spectral2D::inverse input");
    require_size(out.size(), count(), "Spectral2D::inverse output");
    std::lock_guard lock(plan_->exec);
    std::copy(in.begin(), in.end(), reinterpret_cast<std::complex<double>*>(plan_->spec));
    fftw_execute(plan_->inv);
    const double scale = 1.0 / static_cast<double>(count());
    for (std::size_t j = 0; j < count(); ++j) out[j] = plan_->real[j] * scale;
}

void Spectral2D::partial(std::span<const double> in, std::span<double> out, int axis, int order) const {
    if (axis != 0 && axis != 1) throw Error(ErrorKind::InvalidArgument, "axis must be 0 (x) or 1 (y)");
    std::vector<std::complex<double>> c(modes());
    forward(in, c);
    const std::size_t cols = n_ / 2 + 1;
    const double base = 2.0 * std::numbers::pi / length_;
    std::vector<double> m(modes());
    bool imaginary = false;
    for (std::size_t iy = 0; iy < n_; ++iy) {
        for (std::size_t kx = 0; kx < cols; ++kx) {
            const bool along_x = axis == 0;
            const long idx = along_x ? static_cast<long>(kx) : signed_index(iy, n_);
            const bool nyquist = along_x ? kx == n_ / 2 : iy == n_ / 2;
            const Multiplier mk = derivative_multiplier(base * static_cast<double>(idx), order, nyquist);
            m[iy * cols + kx] = mk.factor;
            imaginary = mk.imaginary;
        }
    }
    apply_multiplier(c, m, imaginary);
    inverse(c, out);
}

std::vector<double> Spectral2D::partial(std::span<const double> in, int axis, int order) const {
    std::vector<double> out(count());
    partial(in, out, axis, order);
    return out;
}

void Spectral2D::dealias(std::span<double> inout) const {
    std::vector<std::complex<double>> c(modes());
    forward(inout, c);
    const std::size_t cols = n_ / 2 + 1;
    for (std::size_t iy = 0; iy < n_; ++iy) {
        const auto ky = static_cast<std::size_t>(std::labs(signed_index(iy, n_)));
        for (std::size_t kx = 0; kx < cols; ++kx)
            if (3 * kx >= n_ || 3 * ky >= n_) c[iy * cols + kx] = 0.0;
    }
    inverse(c, inout);
}

double Spectral2D::tail_energy_fraction(std::span<const double> in) const {
    std::vector<std::complex<double>> c(modes());
    forward(in, c);
    const std::size_t cols = n_ / 2 + 1;
    double total = 0.0, tail = 0.0;
    for (std::size_t iy = 0; iy < n_; ++iy) {
        const auto ky = static_cast<std::size_t>(std::labs(signed_index(iy, n_)));
        for (std::size_t kx = 0; kx < cols; ++kx) {
            const double w = (kx == 0 || kx == n_ / 2) ? 1.0 : 2.0;
            const double e = w * std::norm(c[iy * cols + kx]);
            total += e;
            if (3 * kx >= n_ || 3 * ky >= n_) tail += e;
        }
    }
    return total > 0.0 ? tail / total : 0.0;
}

PeriodicGrid2D spectral_partial(const PeriodicGrid2D& grid, int axis, int order) {
    Spectral2D ops(grid.size(), grid.length());
    PeriodicGrid2D out(grid.size(), grid.length());
    ops.partial(grid.values(), out.values(), axis, order);
    return out;
}

} // namespace nhm::numkit
