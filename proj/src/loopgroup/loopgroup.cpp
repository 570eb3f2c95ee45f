#include "nhm/loopgroup/loopgroup.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nhm/error.hpp"
#include "nhm/numkit/kernels.hpp"

namespace nhm::loopgroup {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

std::size_t nodes(std::span<const double> f) {
    if (f.size() % 3 != 0 || !numkit::is_power_of_two(f.size() / 3))
        throw Error(ErrorKind::DimensionMismatch, "field must hold 3·n values with n a power of two");
    return f.size() / 3;
}

// out = a × b, all component-blocked
void cross_blocked(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    const std::size_t n = a.size() / 3;
    numkit::kernels::cross3(a.subspan(0, n), a.subspan(n, n), a.subspan(2 * n, n), b.subspan(0, n), b.subspan(n, n),
                            b.subspan(2 * n, n), out.subspan(0, n), out.subspan(n, n), out.subspan(2 * n, n));
}

void derivative_blocked(const numkit::Spectral1D& sp, std::span<const double> f, std::span<double> out, int order) {
    const std::size_t n = sp.size();
    for (std::size_t c = 0; c < 3; ++c) sp.derivative(f.subspan(c * n, n), out.subspan(c * n, n), order);
}

std::vector<std::string> columns(const char* prefix, std::size_t n) {
    std::vector<std::string> cols;
    for (const char* comp : {"x", "y", "z"})
        for (std::size_t j = 0; j < n; ++j) cols.push_back(std::string(prefix) + comp + std::to_string(j));
    return cols;
}

void project_to_sphere(std::span<double> L) {
    const std::size_t n = L.size() / 3;
    for (std::size_t j = 0; j < n; ++j) {
        const double r = std::sqrt(L[j] * L[j] + L[n + j] * L[n + j] + L[2 * n + j] * L[2 * n + j]);
        L[j] /= r;
        L[n + j] /= r;
        L[2 * n + j] /= r;
    }
}

} // namespace

void ll_rhs(const numkit::Spectral1D& sp, std::span<const double> L, std::span<double> out) {
    if (nodes(L) != sp.size() || out.size() != L.size())
        throw Error(ErrorKind::DimensionMismatch, "spin field size does not match the grid");
    std::vector<double> d2(L.size());
    derivative_blocked(sp, L, d2, 2);
    cross_blocked(L, d2, out);
}

void binormal_rhs(const numkit::Spectral1D& sp, std::span<const double> gamma, std::span<double> out) {
    if (nodes(gamma) != sp.size() || out.size() != gamma.size())
        throw Error(ErrorKind::DimensionMismatch, "curve size does not match the grid");
    std::vector<double> d1(gamma.size()), d2(gamma.size());
    derivative_blocked(sp, gamma, d1, 1);
    derivative_blocked(sp, gamma, d2, 2);
    cross_blocked(d1, d2, out);
}

double max_norm_deviation(std::span<const double> L) {
    const std::size_t n = nodes(L);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(std::sqrt(L[j] * L[j] + L[n + j] * L[n + j] + L[2 * n + j] * L[2 * n + j]) - 1.0));
    return worst;
}

void require_unit(std::span<const double> L) {
    if (max_norm_deviation(L) > 1e-10) throw Error(ErrorKind::InvalidArgument, "spin field is not unit length");
}

double ll_energy(const numkit::Spectral1D& sp, std::span<const double> L) {
    std::vector<double> d1(L.size());
    derivative_blocked(sp, L, d1, 1);
    double acc = 0.0;
    for (double v : d1) acc += v * v;
    return 0.5 * acc * kTwoPi / static_cast<double>(sp.size());
}

Vec3 ll_momentum(std::span<const double> L) {
    const std::size_t n = nodes(L);
    Vec3 m{0, 0, 0};
    for (std::size_t c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += L[c * n + j];
        m[c] = acc * kTwoPi / static_cast<double>(n);
    }
    return m;
}

trajectory::Trajectory integrate_ll(std::span<const double> L0, double t0, double t1, const numkit::Stepper& stepper,
                                    bool renormalize, int record_every) {
    const std::size_t n = nodes(L0);
    require_unit(L0);
    numkit::Spectral1D sp(n, kTwoPi);
    trajectory::Trajectory traj("heisenberg", columns("L", n), {"norm_dev", "energy", "momentum_x", "momentum_y", "momentum_z"});
    traj.meta()["n"] = n;
    traj.meta()["renormalize"] = renormalize;
    traj.meta()["stepper"] = numkit::describe(stepper);
    numkit::Rhs rhs = [&sp](double, std::span<const double> y, std::span<double> d) {
        ll_rhs(sp, y, d);
        numkit::require_finite(d, "spin chain derivative");
    };
    std::vector<double> y(L0.begin(), L0.end());
    numkit::Projection proj;
    if (renormalize) proj = project_to_sphere;
    numkit::integrate_sampled(rhs, t0, t1, y, stepper, record_every, [&](double t, std::span<const double> s) {
        const auto m = ll_momentum(s);
        const double row[5] = {max_norm_deviation(s), ll_energy(sp, s), m[0], m[1], m[2]};
        traj.append(t, s, row);
    }, proj);
    return traj;
}

trajectory::Trajectory integrate_binormal(std::span<const double> gamma0, double t0, double t1,
                                          const numkit::Stepper& stepper, int record_every, double period) {
    const std::size_t n = nodes(gamma0);
    if (!(period > 0)) throw Error(ErrorKind::InvalidArgument, "period must be positive");
    numkit::Spectral1D sp(n, period);
    trajectory::Trajectory traj("binormal", columns("g", n), {"length", "speed_dev"});
    traj.meta()["n"] = n;
    traj.meta()["period"] = period;
    traj.meta()["stepper"] = numkit::describe(stepper);
    numkit::Rhs rhs = [&sp](double, std::span<const double> y, std::span<double> d) {
        binormal_rhs(sp, y, d);
        numkit::require_finite(d, "binormal derivative");
    };
    std::vector<double> y(gamma0.begin(), gamma0.end()), d1(y.size());
    numkit::integrate_sampled(rhs, t0, t1, y, stepper, record_every, [&](double t, std::span<const double> s) {
        derivative_blocked(sp, s, d1, 1);
        double len = 0.0, dev = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = std::sqrt(d1[j] * d1[j] + d1[n + j] * d1[n + j] + d1[2 * n + j] * d1[2 * n + j]);
            len += v;
            dev = std::max(dev, std::abs(v - 1.0));
        }
        const double row[2] = {len * period / static_cast<double>(n), dev};
        traj.append(t, s, row);
    });
    return traj;
}

std::vector<double> magnon(std::size_t n, int k, double eps, double t) {
    const double w = k * k * std::cos(eps);
    std::vector<double> L(3 * n);
    for (std::size_t j = 0; j < n; ++j) {
        const double ph = k * (kTwoPi * static_cast<double>(j) / static_cast<double>(n)) - w * t;
        L[j] = std::sin(eps) * std::cos(ph);
        L[n + j] = std::sin(eps) * std::sin(ph);
        L[2 * n + j] = std::cos(eps);
    }
    return L;
}

double precession_frequency(const trajectory::Trajectory& traj, std::size_t node) {
    const std::size_t n = traj.state_columns().size() / 3;
    if (node >= n || traj.size() < 2) throw Error(ErrorKind::InvalidArgument, "bad node or too few samples");
    std::vector<double> phase(traj.size());
    double prev = 0.0, offset = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        auto s = traj.state(i);
        double a = std::atan2(s[n + node], s[node]);
        if (i > 0) {
            while (a + offset - prev > std::numbers::pi) offset -= kTwoPi;
            while (a + offset - prev < -std::numbers::pi) offset += kTwoPi;
        }
        phase[i] = a + offset;
        prev = phase[i];
    }
    const auto& t = traj.times();
    double mt = 0, mp = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        mt += t[i];
        mp += phase[i];
    }
    mt /= static_cast<double>(t.size());
    mp /= static_cast<double>(t.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        num += (t[i] - mt) * (phase[i] - mp);
        den += (t[i] - mt) * (t[i] - mt);
    }
    return -num / den;
}

std::vector<double> arclength_curve(const std::function<Vec3(double)>& c, const std::function<Vec3(double)>& dc,
                                    std::size_t n) {
    if (!numkit::is_power_of_two(n)) throw Error(ErrorKind::InvalidArgument, "n must be a power of two");
    // speed as a Fourier series on a fine grid, integrated mode by mode
    const std::size_t M = std::max<std::size_t>(1024, 8 * n);
    std::vector<double> speed(M);
    for (std::size_t j = 0; j < M; ++j) {
        const auto v = dc(kTwoPi * static_cast<double>(j) / static_cast<double>(M));
        speed[j] = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    }
    numkit::Spectral1D sp(M, kTwoPi);
    std::vector<std::complex<double>> hat(sp.modes());
    sp.forward(speed, hat);
    const double mean = hat[0].real() / static_cast<double>(M);
    const double total = mean * kTwoPi;
    // s(p) = mean·p + Σ_{k≥1} 2 Re(ĉ_k e^{ikp}/(ik))/M
    auto s_of = [&](double p, double& ds) {
        double s = mean * p;
        ds = mean;
        for (std::size_t k = 1; k < M / 2; ++k) {
            const std::complex<double> e(std::cos(static_cast<double>(k) * p), std::sin(static_cast<double>(k) * p));
            const std::complex<double> ck = hat[k] * (2.0 / static_cast<double>(M));
            const std::complex<double> ik(0.0, static_cast<double>(k));
            s += ((ck * (e - 1.0)) / ik).real();
            ds += (ck * e).real();
        }
        return s;
    };
    std::vector<double> out(3 * n);
    const double scale = kTwoPi / total;
    double p = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double target = total * static_cast<double>(j) / static_cast<double>(n);
        for (int it = 0; it < 50; ++it) {
            double ds = 0.0;
            const double r = s_of(p, ds) - target;
            p -= r / ds;
            if (std::abs(r) < 1e-15 * total) break;
        }
        const auto q = c(p);
        for (std::size_t k = 0; k < 3; ++k) out[k * n + j] = scale * q[k];
    }
    return out;
}

std::vector<double> perturbed_circle(std::size_t n, double amplitude, int harmonic) {
    const double m = harmonic;
    auto c = [=](double p) {
        const double r = 1.0 + amplitude * std::cos(m * p);
        return Vec3{r * std::cos(p), r * std::sin(p), 0.0};
    };
    auto dc = [=](double p) {
        const double r = 1.0 + amplitude * std::cos(m * p), dr = -amplitude * m * std::sin(m * p);
        return Vec3{dr * std::cos(p) - r * std::sin(p), dr * std::sin(p) + r * std::cos(p), 0.0};
    };
    return arclength_curve(c, dc, n);
}

double gauss_map_consistency(std::span<const double> gamma0, double t0, double t1, const numkit::Stepper& stepper,
                             int record_every) {
    const std::size_t n = nodes(gamma0);
    numkit::Spectral1D sp(n, kTwoPi);
    std::vector<double> L0(gamma0.size());
    derivative_blocked(sp, gamma0, L0, 1);
    auto curve = integrate_binormal(gamma0, t0, t1, stepper, record_every);
    auto spin = integrate_ll(L0, t0, t1, stepper, false, record_every);
    if (curve.size() != spin.size()) throw Error(ErrorKind::DimensionMismatch, "flows recorded different samples");
    std::vector<double> d1(gamma0.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        derivative_blocked(sp, curve.state(i), d1, 1);
        auto L = spin.state(i);
        for (std::size_t j = 0; j < d1.size(); ++j) worst = std::max(worst, std::abs(d1[j] - L[j]));
    }
    return worst;
}

} // namespace nhm::loopgroup
