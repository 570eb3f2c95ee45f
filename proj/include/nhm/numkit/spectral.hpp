#pragma once

// Uniform periodic grids and Fourier-multiplier calculus on them. Sizes must
// be powers of two. Odd-order derivatives drop the Nyquist mode; even orders
// keep it with its real multiplier, so the second-derivative operator is
// symmetric and the first-derivative operator antisymmetric on the grid.

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace nhm::numkit {

bool is_power_of_two(std::size_t n);

class PeriodicGrid1D {
public:
    PeriodicGrid1D(std::size_t n, double length);
    PeriodicGrid1D(std::size_t n, double length, std::vector<double> values);

    static PeriodicGrid1D sample(std::size_t n, double length, const std::function<double(double)>& f);

    std::size_t size() const noexcept { return n_; }
    double length() const noexcept { return length_; }
    double spacing() const noexcept { return length_ / static_cast<double>(n_); }
    double node(std::size_t j) const noexcept { return static_cast<double>(j) * spacing(); }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    double operator[](std::size_t j) const { return values_[j]; }
    double& operator[](std::size_t j) { return values_[j]; }

private:
    std::size_t n_;
    double length_;
    std::vector<double> values_;
};

/// n×n samples, row-major with x varying fastest: value(ix, iy) = values[iy·n + ix].
class PeriodicGrid2D {
public:
    PeriodicGrid2D(std::size_t n, double length);
    PeriodicGrid2D(std::size_t n, double length, std::vector<double> values);

    static PeriodicGrid2D sample(std::size_t n, double length, const std::function<double(double, double)>& f);

    std::size_t size() const noexcept { return n_; }
    std::size_t count() const noexcept { return n_ * n_; }
    double length() const noexcept { return length_; }
    double spacing() const noexcept { return length_ / static_cast<double>(n_); }
    double node(std::size_t j) const noexcept { return static_cast<double>(j) * spacing(); }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    double at(std::size_t ix, std::size_t iy) const { return values_[iy * n_ + ix]; }
    double& at(std::size_t ix, std::size_t iy) { return values_[iy * n_ + ix]; }

private:
    std::size_t n_;
    double length_;
    std::vector<double> values_;
};

namespace detail {
struct Plan1D;
struct Plan2D;
} // namespace detail

class Spectral1D {
public:
    Spectral1D(std::size_t n, double length);

    std::size_t size() const noexcept { return n_; }
    std::size_t modes() const noexcept { return n_ / 2 + 1; }
    double length() const noexcept { return length_; }
    /// Angular wavenumber of half-spectrum mode k: 2πk / length.
    double wavenumber(std::size_t k) const noexcept;

    void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
    /// Normalized inverse (forward followed by inverse is the identity).
    void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

    /// order ∈ {1, 2, 3}.
    void derivative(std::span<const double> in, std::span<double> out, int order) const;
    std::vector<double> derivative(std::span<const double> in, int order) const;
    /// Multiplies each mode k by m(k), m given on the half spectrum.
    void apply_real_multiplier(std::span<const double> in, std::span<double> out,
                               std::span<const double> multiplier) const;
    /// 2/3 rule: zero every mode with 3|k| ≥ n.
    void dealias(std::span<double> inout) const;
    /// Fraction of spectral energy held by modes with 3|k| ≥ n.
    double tail_energy_fraction(std::span<const double> in) const;

private:
    std::size_t n_;
    double length_;
    std::shared_ptr<detail::Plan1D> plan_;
};

PeriodicGrid1D spectral_derivative(const PeriodicGrid1D& grid, int order);

class Spectral2D {
public:
    Spectral2D(std::size_t n, double length);

    std::size_t size() const noexcept { return n_; }
    std::size_t count() const noexcept { return n_ * n_; }
    double length() const noexcept { return length_; }
    /// Half-spectrum layout: n rows (ky) × (n/2+1) columns (kx).
    std::size_t modes() const noexcept { return n_ * (n_ / 2 + 1); }

    void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
    void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

    /// ∂^order/∂x^order (axis 0) or ∂/∂y (axis 1).
    void partial(std::span<const double> in, std::span<double> out, int axis, int order = 1) const;
    std::vector<double> partial(std::span<const double> in, int axis, int order = 1) const;
    void dealias(std::span<double> inout) const;
    double tail_energy_fraction(std::span<const double> in) const;

private:
    std::size_t n_;
    double length_;
    std::shared_ptr<detail::Plan2D> plan_;
};

PeriodicGrid2D spectral_partial(const PeriodicGrid2D& grid, int axis, int order = 1);

/// Signed integer wavenumber index of FFT slot j in a length-n transform.
inline long signed_index(std::size_t j, std::size_t n) {
    return j <= n / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
}

} // namespace nhm::numkit
