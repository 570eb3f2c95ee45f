#include "nhm/camassaholm/camassaholm.hpp"

#include <numbers>
#include <string>

#include "nhm/error.hpp"
#include "nhm/numkit/kernels.hpp"

namespace nhm::camassaholm {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

void check_size(const numkit::Spectral1D& sp, std::span<const double> f) {
    if (f.size() != sp.size()) throw Error(ErrorKind::DimensionMismatch, "field size does not match the grid");
}

std::vector<double> helmholtz_multiplier(const numkit::Spectral1D& sp, double sign) {
    std::vector<double> mult(sp.modes());
    for (std::size_t k = 0; k < mult.size(); ++k) {
        const double kk = sp.wavenumber(k);
        mult[k] = sign > 0 ? 1.0 + kk * kk : 1.0 / (1.0 + kk * kk);
    }
    return mult;
}

} // namespace

std::vector<double> helmholtz_inverse(const numkit::Spectral1D& sp, std::span<const double> m) {
    check_size(sp, m);
    std::vector<double> u(m.size());
    sp.apply_real_multiplier(m, u, helmholtz_multiplier(sp, -1.0));
    return u;
}

std::vector<double> momentum(const numkit::Spectral1D& sp, std::span<const double> u) {
    check_size(sp, u);
    std::vector<double> m(u.size());
    sp.apply_real_multiplier(u, m, helmholtz_multiplier(sp, 1.0));
    return m;
}

void ch_rhs(const numkit::Spectral1D& sp, std::span<const double> m_in, double kappa, std::span<double> out) {
    check_size(sp, m_in);
    const std::size_t n = sp.size();
    std::vector<double> m(m_in.begin(), m_in.end());
    sp.dealias(m);
    auto u = helmholtz_inverse(sp, m);
    auto ux = sp.derivative(u, 1);
    auto mx = sp.derivative(m, 1);
    std::vector<double> a(n), b(n);
    numkit::kernels::multiply(ux, m, a);
    numkit::kernels::multiply(u, mx, b);
    for (std::size_t j = 0; j < n; ++j) out[j] = -(2.0 * a[j] + b[j]) - kappa * ux[j];
    sp.dealias(out);
    numkit::require_finite(out, "Camassa–Holm derivative");
}

void ch_rhs_uform(const numkit::Spectral1D& sp, std::span<const double> u_in, double kappa, std::span<double> out) {
    check_size(sp, u_in);
    const std::size_t n = sp.size();
    std::vector<double> u(u_in.begin(), u_in.end());
    sp.dealias(u);
    auto u1 = sp.derivative(u, 1);
    auto u2 = sp.derivative(u, 2);
    auto u3 = sp.derivative(u, 3);
    for (std::size_t j = 0; j < n; ++j)
        out[j] = -(kappa * u1[j] + 3.0 * u[j] * u1[j] - 2.0 * u1[j] * u2[j] - u[j] * u3[j]);
    sp.dealias(out);
}

double ch_mean(const numkit::Spectral1D& sp, std::span<const double> m) {
    check_size(sp, m);
    double acc = 0.0;
    for (double v : m) acc += v;
    return acc * kTwoPi / static_cast<double>(sp.size());
}

double ch_energy(const numkit::Spectral1D& sp, std::span<const double> m) {
    auto u = helmholtz_inverse(sp, m);
    double acc = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) acc += u[j] * m[j];
    return 0.5 * acc * kTwoPi / static_cast<double>(sp.size());
}

trajectory::Trajectory integrate_ch(std::span<const double> m0, double kappa, double t0, double t1,
                                    const numkit::Stepper& stepper, int record_every) {
    if (!numkit::is_power_of_two(m0.size())) throw Error(ErrorKind::InvalidArgument, "grid size must be a power of two");
    numkit::Spectral1D sp(m0.size(), kTwoPi);
    std::vector<std::string> cols;
    for (std::size_t j = 0; j < m0.size(); ++j) cols.push_back("m" + std::to_string(j));
    trajectory::Trajectory traj("camassa_holm", cols, {"mean", "energy"});
    traj.meta()["n"] = m0.size();
    traj.meta()["kappa"] = kappa;
    traj.meta()["stepper"] = numkit::describe(stepper);
    numkit::Rhs rhs = [&](double, std::span<const double> y, std::span<double> d) { ch_rhs(sp, y, kappa, d); };
    std::vector<double> y(m0.begin(), m0.end());
    numkit::integrate_sampled(rhs, t0, t1, y, stepper, record_every, [&](double t, std::span<const double> s) {
        const double row[2] = {ch_mean(sp, s), ch_energy(sp, s)};
        traj.append(t, s, row);
    });
    return traj;
}

} // namespace nhm::camassaholm
