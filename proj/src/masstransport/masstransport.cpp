#include "nhm/masstransport/masstransport.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "nhm/error.hpp"

namespace nhm::masstransport {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

void check(const numkit::Spectral2D& sp, std::size_t size) {
    if (size != sp.count()) throw Error(ErrorKind::DimensionMismatch, "field does not match the grid");
}

std::size_t grid_size(std::size_t count) {
    const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(count))));
    if (n * n != count || !numkit::is_power_of_two(n))
        throw Error(ErrorKind::InvalidArgument, "field must be n×n with n a power of two");
    return n;
}

// Top third of the band that survives 2/3 dealiasing. The plain top-third
// fraction is identically zero for a dealiased field.
double retained_tail(const numkit::Spectral2D& sp, const std::vector<double>& u) {
    const std::size_t n = sp.size(), cols = n / 2 + 1;
    std::vector<std::complex<double>> c(sp.modes());
    sp.forward(u, c);
    double total = 0.0, tail = 0.0;
    for (std::size_t iy = 0; iy < n; ++iy) {
        const auto ky = static_cast<std::size_t>(std::labs(numkit::signed_index(iy, n)));
        for (std::size_t kx = 0; kx < cols; ++kx) {
            const double w = (kx == 0 || kx == n / 2) ? 1.0 : 2.0;
            const double e = w * std::norm(c[iy * cols + kx]);
            total += e;
            if (9 * std::max(kx, ky) >= 2 * n) tail += e;
        }
    }
    return total > 0.0 ? tail / total : 0.0;
}

void tail_alarm(double tail, double t) {
    if (tail > kTailAlarm)
        throw Error(ErrorKind::NonFinite, "spectral tail alarm at t = " + std::to_string(t) + " (fraction " +
                                              std::to_string(tail) + "): shock forming or underresolved");
}

} // namespace

Velocity gradient(const numkit::Spectral2D& sp, const std::vector<double>& f) {
    check(sp, f.size());
    return {sp.size(), sp.partial(f, 0), sp.partial(f, 1)};
}

Velocity burgers_rhs(const numkit::Spectral2D& sp, const Velocity& u) {
    check(sp, u.ux.size());
    check(sp, u.uy.size());
    auto ax = sp.partial(u.ux, 0), ay = sp.partial(u.ux, 1);
    auto bx = sp.partial(u.uy, 0), by = sp.partial(u.uy, 1);
    Velocity d{u.n, std::vector<double>(u.ux.size()), std::vector<double>(u.ux.size())};
    for (std::size_t q = 0; q < d.ux.size(); ++q) {
        d.ux[q] = -(u.ux[q] * ax[q] + u.uy[q] * ay[q]);
        d.uy[q] = -(u.ux[q] * bx[q] + u.uy[q] * by[q]);
    }
    sp.dealias(d.ux);
    sp.dealias(d.uy);
    numkit::require_finite(d.ux, "Burgers derivative");
    numkit::require_finite(d.uy, "Burgers derivative");
    return d;
}

std::vector<double> hj_rhs(const numkit::Spectral2D& sp, const std::vector<double>& f) {
    auto g = gradient(sp, f);
    std::vector<double> d(f.size());
    double mean = 0.0;
    for (std::size_t q = 0; q < d.size(); ++q) {
        d[q] = -0.5 * (g.ux[q] * g.ux[q] + g.uy[q] * g.uy[q]);
        mean += d[q];
    }
    mean /= static_cast<double>(d.size());
    for (double& v : d) v -= mean;
    sp.dealias(d);
    numkit::require_finite(d, "Hamilton–Jacobi derivative");
    return d;
}

double max_curl(const numkit::Spectral2D& sp, const Velocity& u) {
    auto a = sp.partial(u.uy, 0), b = sp.partial(u.ux, 1);
    double worst = 0.0;
    for (std::size_t q = 0; q < a.size(); ++q) worst = std::max(worst, std::abs(a[q] - b[q]));
    return worst;
}

std::vector<double> fourier_field(std::size_t n, const std::vector<FourierTerm>& terms, const std::string& field) {
    if (!numkit::is_power_of_two(n)) throw Error(ErrorKind::InvalidArgument, "grid size must be a power of two");
    std::vector<double> f(n * n, 0.0);
    const double h = kTwoPi / static_cast<double>(n);
    for (const auto& t : terms) {
        if (t.field != "f" && t.field != "ux" && t.field != "uy")
            throw Error(ErrorKind::Config, "unknown field '" + t.field + "' (f, ux, uy)");
        if (t.field != field) continue;
        for (std::size_t iy = 0; iy < n; ++iy)
            for (std::size_t ix = 0; ix < n; ++ix)
                f[iy * n + ix] += t.amplitude * std::cos(t.kx * h * static_cast<double>(ix) +
                                                         t.ky * h * static_cast<double>(iy) + t.phase);
    }
    return f;
}

BurgersRun integrate_burgers(const Velocity& u0, double t0, double t1, const numkit::Stepper& stepper,
                             int record_every) {
    const std::size_t n = grid_size(u0.ux.size());
    if (u0.uy.size() != u0.ux.size()) throw Error(ErrorKind::DimensionMismatch, "velocity components differ in size");
    numkit::Spectral2D sp(n, kTwoPi);
    const std::size_t c = n * n;
    auto unpack = [&](std::span<const double> y) {
        return Velocity{n, {y.begin(), y.begin() + static_cast<std::ptrdiff_t>(c)},
                        {y.begin() + static_cast<std::ptrdiff_t>(c), y.end()}};
    };
    numkit::Rhs rhs = [&](double, std::span<const double> y, std::span<double> d) {
        auto r = burgers_rhs(sp, unpack(y));
        std::copy(r.ux.begin(), r.ux.end(), d.begin());
        std::copy(r.uy.begin(), r.uy.end(), d.begin() + static_cast<std::ptrdiff_t>(c));
    };
    BurgersRun run{trajectory::Trajectory("burgers", {"curl_max", "tail", "u_max"}, {}), {}};
    run.summary.meta()["n"] = n;
    run.summary.meta()["stepper"] = numkit::describe(stepper);
    std::vector<double> y(u0.ux);
    y.insert(y.end(), u0.uy.begin(), u0.uy.end());
    numkit::integrate_sampled(rhs, t0, t1, y, stepper, record_every, [&](double t, std::span<const double> s) {
        auto u = unpack(s);
        const double tail = std::max(retained_tail(sp, u.ux), retained_tail(sp, u.uy));
        double um = 0.0;
        for (std::size_t q = 0; q < c; ++q) um = std::max(um, std::hypot(u.ux[q], u.uy[q]));
        const double row[3] = {max_curl(sp, u), tail, um};
        run.summary.append(t, row);
        tail_alarm(tail, t);
    });
    run.final_velocity = unpack(y);
    return run;
}

PotentialRun integrate_hj(const std::vector<double>& f0, double t0, double t1, const numkit::Stepper& stepper,
                          int record_every) {
    const std::size_t n = grid_size(f0.size());
    numkit::Spectral2D sp(n, kTwoPi);
    numkit::Rhs rhs = [&](double, std::span<const double> y, std::span<double> d) {
        auto r = hj_rhs(sp, {y.begin(), y.end()});
        std::copy(r.begin(), r.end(), d.begin());
    };
    PotentialRun run{trajectory::Trajectory("hamilton_jacobi", {"f_min", "f_max", "tail"}, {}), {}};
    run.summary.meta()["n"] = n;
    run.summary.meta()["stepper"] = numkit::describe(stepper);
    // gauge: start from the mean-zero representative
    std::vector<double> y(f0);
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    for (double& v : y) v -= mean;
    numkit::integrate_sampled(rhs, t0, t1, y, stepper, record_every, [&](double t, std::span<const double> s) {
        const auto [mn, mx] = std::minmax_element(s.begin(), s.end());
        // the potential's gradient carries the velocity spectrum
        const auto g = gradient(sp, {s.begin(), s.end()});
        const double tail = std::max(retained_tail(sp, g.ux), retained_tail(sp, g.uy));
        const double row[3] = {*mn, *mx, tail};
        run.summary.append(t, row);
        tail_alarm(tail, t);
    });
    run.final_potential = std::move(y);
    return run;
}

double potentiality_check(const trajectory::Trajectory& burgers_summary) {
    double worst = 0.0;
    for (double v : burgers_summary.column("curl_max")) worst = std::max(worst, v);
    return worst;
}

} // namespace nhm::masstransport
