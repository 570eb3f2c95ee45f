#include "nhm/oddfluid/oddfluid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nhm/error.hpp"

namespace nhm::oddfluid {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

constexpr double levi(int i, int j) { return i == j ? 0.0 : (i == 0 ? 1.0 : -1.0); }
constexpr double kron(int i, int j) { return i == j ? 1.0 : 0.0; }

// Base odd viscosity tensor with unit coefficients: eta part and gamma part.
constexpr double eta_base(int i, int j, int k, int l) { return -(levi(i, k) * kron(j, l) + levi(j, l) * kron(i, k)); }
constexpr double eta_ell(int i, int j, int k, int l) { return 0.5 * (kron(i, k) * levi(j, l) + kron(j, l) * levi(i, k)); }
constexpr double gamma_part(int i, int j, int k, int l) { return levi(i, j) * kron(k, l) - kron(i, j) * levi(k, l); }

double cell_area(std::size_t n) {
    const double h = kTwoPi / static_cast<double>(n);
    return h * h;
}

void check_state(const numkit::Spectral2D& sp, const FluidState& s) {
    const std::size_t c = sp.count();
    if (s.n != sp.size() || s.rho.size() != c || s.vx.size() != c || s.vy.size() != c ||
        (s.extended() && s.dl.size() != c))
        throw Error(ErrorKind::DimensionMismatch, "fluid state does not match the grid");
    for (double r : s.rho) {
        if (!std::isfinite(r)) throw Error(ErrorKind::NonFinite, "density is not finite");
        if (r <= kDensityFloor) throw Error(ErrorKind::NegativeDensity, "density fell below the floor");
    }
}

// ∂_k v_l, index 2k + l
std::array<std::vector<double>, 4> velocity_gradient(const numkit::Spectral2D& sp, const FluidState& s) {
    return {sp.partial(s.vx, 0), sp.partial(s.vy, 0), sp.partial(s.vx, 1), sp.partial(s.vy, 1)};
}

Tensor assemble(const FluidState& s, const FluidParams& p, const std::array<std::vector<double>, 4>& A,
                const std::vector<double>& pressure, StressMode mode) {
    const std::size_t c = s.rho.size();
    Tensor T;
    for (auto& t : T) t.assign(c, 0.0);
    for (std::size_t q = 0; q < c; ++q) {
        const double rho = s.rho[q];
        const double eh = p.eta_h(rho), gh = p.gamma_h(rho);
        const double ell = mode == StressMode::Extended ? s.dl[q] - 2.0 * eh : 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double acc = -pressure[q] * kron(i, j);
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) {
                        const double visc = mode == StressMode::Extended ? ell * eta_ell(i, j, k, l)
                                                                         : eh * eta_base(i, j, k, l);
                        acc += (visc + gh * gamma_part(i, j, k, l)) * A[static_cast<std::size_t>(2 * k + l)][q];
                    }
                T[static_cast<std::size_t>(2 * i + j)][q] = acc;
            }
    }
    return T;
}

std::vector<double> divergence(const numkit::Spectral2D& sp, const FluidState& s) {
    auto d = sp.partial(s.vx, 0);
    auto dy = sp.partial(s.vy, 1);
    for (std::size_t q = 0; q < d.size(); ++q) d[q] += dy[q];
    return d;
}

// Continuity and Euler equations for a given stress.
FluidState momentum_rhs(const numkit::Spectral2D& sp, const FluidState& s, const Tensor& T,
                        const std::array<std::vector<double>, 4>& A) {
    const std::size_t c = s.rho.size();
    FluidState d{s.n, std::vector<double>(c), std::vector<double>(c), std::vector<double>(c), {}};
    std::vector<double> fx(c), fy(c);
    for (std::size_t q = 0; q < c; ++q) {
        fx[q] = s.rho[q] * s.vx[q];
        fy[q] = s.rho[q] * s.vy[q];
    }
    auto dfx = sp.partial(fx, 0), dfy = sp.partial(fy, 1);
    auto t11 = sp.partial(T[0], 0), t21 = sp.partial(T[2], 1);
    auto t12 = sp.partial(T[1], 0), t22 = sp.partial(T[3], 1);
    for (std::size_t q = 0; q < c; ++q) {
        d.rho[q] = -(dfx[q] + dfy[q]);
        const double inv = 1.0 / s.rho[q];
        d.vx[q] = -(s.vx[q] * A[0][q] + s.vy[q] * A[2][q]) + inv * (t11[q] + t21[q]);
        d.vy[q] = -(s.vx[q] * A[1][q] + s.vy[q] * A[3][q]) + inv * (t12[q] + t22[q]);
    }
    return d;
}

void require_finite(const FluidState& d) {
    numkit::require_finite(d.rho, "density derivative");
    numkit::require_finite(d.vx, "velocity derivative");
    numkit::require_finite(d.vy, "velocity derivative");
    numkit::require_finite(d.dl, "spin derivative");
}

} // namespace

double PowerSeries::operator()(double rho) const {
    double acc = 0.0;
    for (const auto& [a, pw] : terms) acc += a * std::pow(rho, pw);
    return acc;
}

double PowerSeries::derivative(double rho) const {
    double acc = 0.0;
    for (const auto& [a, pw] : terms)
        if (pw != 0.0) acc += a * pw * std::pow(rho, pw - 1.0);
    return acc;
}

double InternalEnergy::eps(double rho) const {
    return kind == Kind::Isothermal ? c * c * rho * (std::log(rho) - 1.0) : kappa * rho * rho;
}

double InternalEnergy::eps_prime(double rho) const {
    return kind == Kind::Isothermal ? c * c * std::log(rho) : 2.0 * kappa * rho;
}

double InternalEnergy::pressure(double rho) const {
    return kind == Kind::Isothermal ? c * c * rho : kappa * rho * rho;
}

double FluidParams::gamma_hat(double rho) const { return gamma_h(rho) - eta_h(rho) + rho * eta_h.derivative(rho); }

void validate(const FluidParams& p) {
    if (!(p.mu > 0)) throw Error(ErrorKind::InvalidArgument, "mu must be positive");
    if (!(p.nu > 0)) throw Error(ErrorKind::InvalidArgument, "nu must be positive");
    if (p.energy.kind == InternalEnergy::Kind::Isothermal && !(p.energy.c > 0))
        throw Error(ErrorKind::InvalidArgument, "sound speed must be positive");
    if (p.energy.kind == InternalEnergy::Kind::Polytropic2 && !(p.energy.kappa > 0))
        throw Error(ErrorKind::InvalidArgument, "polytropic constant must be positive");
    for (const auto* ser : {&p.eta_h, &p.gamma_h})
        for (const auto& [a, pw] : ser->terms)
            if (!std::isfinite(a) || !std::isfinite(pw))
                throw Error(ErrorKind::InvalidArgument, "coefficient series must be finite");
}

std::string to_string(FluidSystem s) {
    switch (s) {
    case FluidSystem::Base: return "base";
    case FluidSystem::Extended: return "extended";
    case FluidSystem::Effective: return "effective";
    }
    return "base";
}

FluidSystem fluid_system_from_string(const std::string& s) {
    if (s == "base") return FluidSystem::Base;
    if (s == "extended") return FluidSystem::Extended;
    if (s == "effective") return FluidSystem::Effective;
    throw Error(ErrorKind::Config, "unknown fluid system '" + s + "' (base, extended, effective)");
}

Tensor stress_tensor(const numkit::Spectral2D& sp, const FluidState& s, const FluidParams& p, StressMode mode) {
    check_state(sp, s);
    if (mode == StressMode::Extended && !s.extended())
        throw Error(ErrorKind::InvalidArgument, "extended stress needs the spin field");
    const auto A = velocity_gradient(sp, s);
    std::vector<double> pr(s.rho.size());
    for (std::size_t q = 0; q < pr.size(); ++q) {
        pr[q] = p.energy.pressure(s.rho[q]);
        if (mode == StressMode::Extended) {
            const double dl = s.dl[q];
            pr[q] += dl * dl / (2.0 * p.nu) + 2.0 / p.nu * p.gamma_hat(s.rho[q]) * dl;
        }
    }
    return assemble(s, p, A, pr, mode);
}

FluidState base_rhs(const numkit::Spectral2D& sp, const FluidState& s, const FluidParams& p) {
    check_state(sp, s);
    const auto A = velocity_gradient(sp, s);
    std::vector<double> pr(s.rho.size());
    for (std::size_t q = 0; q < pr.size(); ++q) pr[q] = p.energy.pressure(s.rho[q]);
    auto d = momentum_rhs(sp, s, assemble(s, p, A, pr, StressMode::Base), A);
    require_finite(d);
    return d;
}

FluidState effective_rhs(const numkit::Spectral2D& sp, const FluidState& s, const FluidParams& p) {
    check_state(sp, s);
    const auto A = velocity_gradient(sp, s);
    std::vector<double> pr(s.rho.size());
    for (std::size_t q = 0; q < pr.size(); ++q)
        pr[q] = p.energy.pressure(s.rho[q]) - 8.0 / p.mu * p.gamma_hat(s.rho[q]) * (A[0][q] + A[3][q]);
    auto d = momentum_rhs(sp, s, assemble(s, p, A, pr, StressMode::Base), A);
    require_finite(d);
    return d;
}

FluidState extended_rhs(const numkit::Spectral2D& sp, const FluidState& s, const FluidParams& p) {
    if (!s.extended()) throw Error(ErrorKind::InvalidArgument, "extended system needs the spin field");
    auto T = stress_tensor(sp, s, p, StressMode::Extended);
    const auto A = velocity_gradient(sp, s);
    auto d = momentum_rhs(sp, s, T, A);
    const std::size_t c = s.rho.size();
    std::vector<double> fx(c), fy(c);
    for (std::size_t q = 0; q < c; ++q) {
        fx[q] = s.dl[q] * s.vx[q];
        fy[q] = s.dl[q] * s.vy[q];
    }
    auto dfx = sp.partial(fx, 0), dfy = sp.partial(fy, 1);
    d.dl.resize(c);
    for (std::size_t q = 0; q < c; ++q)
        d.dl[q] = -(dfx[q] + dfy[q]) - 2.0 * p.gamma_hat(s.rho[q]) * (A[0][q] + A[3][q]) - p.mu / p.nu * s.dl[q];
    require_finite(d);
    return d;
}

FluidState fluid_rhs(FluidSystem sys, const numkit::Spectral2D& sp, const FluidState& s, const FluidParams& p) {
    switch (sys) {
    case FluidSystem::Base: return base_rhs(sp, s, p);
    case FluidSystem::Extended: return extended_rhs(sp, s, p);
    case FluidSystem::Effective: return effective_rhs(sp, s, p);
    }
    return base_rhs(sp, s, p);
}

double fluid_energy(const FluidState& s, const FluidParams& p) {
    double acc = 0.0;
    for (std::size_t q = 0; q < s.rho.size(); ++q)
        acc += 0.5 * s.rho[q] * (s.vx[q] * s.vx[q] + s.vy[q] * s.vy[q]) + p.energy.eps(s.rho[q]);
    return acc * cell_area(s.n);
}

double extended_energy(const FluidState& s, const FluidParams& p) {
    double acc = 0.0;
    for (double d : s.dl) acc += d * d;
    return fluid_energy(s, p) + acc * cell_area(s.n) / (2.0 * p.nu);
}

double rayleigh(const FluidState& s, const FluidParams& p) {
    double acc = 0.0;
    for (double d : s.dl) acc += d * d;
    return acc * cell_area(s.n) * p.mu / (2.0 * p.nu * p.nu);
}

double energy_rate(const FluidState& s, const FluidState& r, const FluidParams& p) {
    double acc = 0.0;
    for (std::size_t q = 0; q < s.rho.size(); ++q) {
        const double v2 = s.vx[q] * s.vx[q] + s.vy[q] * s.vy[q];
        acc += (0.5 * v2 + p.energy.eps_prime(s.rho[q])) * r.rho[q];
        acc += s.rho[q] * (s.vx[q] * r.vx[q] + s.vy[q] * r.vy[q]);
    }
    if (s.extended() && r.extended())
        for (std::size_t q = 0; q < s.dl.size(); ++q) acc += s.dl[q] * r.dl[q] / p.nu;
    return acc * cell_area(s.n);
}

double divergence_norm(const numkit::Spectral2D& sp, const FluidState& s) {
    double acc = 0.0;
    for (double d : divergence(sp, s)) acc += d * d;
    return std::sqrt(acc * cell_area(s.n));
}

FluidState fluid_from_fourier(std::size_t n, double rho_mean, const std::vector<FourierTerm>& terms, bool extended) {
    if (!numkit::is_power_of_two(n)) throw Error(ErrorKind::InvalidArgument, "grid size must be a power of two");
    const std::size_t c = n * n;
    FluidState s{n, std::vector<double>(c, rho_mean), std::vector<double>(c, 0.0), std::vector<double>(c, 0.0), {}};
    if (extended) s.dl.assign(c, 0.0);
    const double h = kTwoPi / static_cast<double>(n);
    for (const auto& t : terms) {
        std::vector<double>* f = nullptr;
        if (t.field == "rho") f = &s.rho;
        else if (t.field == "vx") f = &s.vx;
        else if (t.field == "vy") f = &s.vy;
        else if (t.field == "dl") f = extended ? &s.dl : nullptr;
        else throw Error(ErrorKind::Config, "unknown field '" + t.field + "' (rho, vx, vy, dl)");
        if (!f) throw Error(ErrorKind::Config, "dl terms need the extended system");
        for (std::size_t iy = 0; iy < n; ++iy)
            for (std::size_t ix = 0; ix < n; ++ix)
                (*f)[iy * n + ix] += t.amplitude * std::cos(t.kx * h * static_cast<double>(ix) +
                                                            t.ky * h * static_cast<double>(iy) + t.phase);
    }
    return s;
}

std::vector<double> slaved_dl(const numkit::Spectral2D& sp, const FluidState& s, const FluidParams& p) {
    auto d = divergence(sp, s);
    for (std::size_t q = 0; q < d.size(); ++q) d[q] *= -4.0 * p.nu / p.mu * p.gamma_hat(s.rho[q]);
    return d;
}

FluidRun integrate_fluid(FluidSystem sys, const FluidState& s0, const FluidParams& p, double t0, double t1,
                         const numkit::Stepper& stepper, const FluidRunOptions& opt) {
    validate(p);
    const bool ext = sys == FluidSystem::Extended;
    if (ext != s0.extended())
        throw Error(ErrorKind::InvalidArgument, ext ? "extended system needs the spin field" : "unexpected spin field");
    numkit::Spectral2D sp(s0.n, kTwoPi);
    check_state(sp, s0);
    const std::size_t c = s0.count();
    const std::size_t nf = ext ? 4 : 3;

    auto unpack = [&](std::span<const double> y) {
        FluidState s{s0.n, {y.begin(), y.begin() + static_cast<std::ptrdiff_t>(c)},
                     {y.begin() + static_cast<std::ptrdiff_t>(c), y.begin() + static_cast<std::ptrdiff_t>(2 * c)},
                     {y.begin() + static_cast<std::ptrdiff_t>(2 * c), y.begin() + static_cast<std::ptrdiff_t>(3 * c)},
                     {}};
        if (ext) s.dl.assign(y.begin() + static_cast<std::ptrdiff_t>(3 * c), y.begin() + static_cast<std::ptrdiff_t>(4 * c));
        return s;
    };
    std::vector<double> y;
    y.reserve(nf * c + 1);
    for (const auto* f : {&s0.rho, &s0.vx, &s0.vy}) y.insert(y.end(), f->begin(), f->end());
    // extended: trailing slot carries ∫2R_μ dt, integrated with the state
    if (ext) {
        y.insert(y.end(), s0.dl.begin(), s0.dl.end());
        y.push_back(0.0);
    }

    numkit::Rhs rhs = [&](double, std::span<const double> yy, std::span<double> d) {
        const auto s = unpack(yy);
        auto r = fluid_rhs(sys, sp, s, p);
        std::vector<double>* parts[4] = {&r.rho, &r.vx, &r.vy, &r.dl};
        for (std::size_t k = 0; k < nf; ++k) {
            if (opt.dealias) sp.dealias(*parts[k]);
            std::copy(parts[k]->begin(), parts[k]->end(), d.begin() + static_cast<std::ptrdiff_t>(k * c));
        }
        if (ext) d.back() = 2 * rayleigh(s, p);
    };

    std::vector<std::string> ledger{"energy"};
    if (ext) ledger.insert(ledger.end(), {"energy_nu", "rayleigh", "dissipated"});
    FluidRun run{trajectory::Trajectory("odd_fluid", {"rho_min", "rho_max", "kinetic", "div_l2", "dl_max"}, ledger), {}, {}};
    auto& meta = run.summary.meta();
    meta["system"] = to_string(sys);
    meta["n"] = s0.n;
    meta["mu"] = p.mu;
    meta["nu"] = p.nu;
    meta["dealias"] = opt.dealias;
    meta["stepper"] = numkit::describe(stepper);

    std::size_t samples = 0;
    numkit::integrate_sampled(rhs, t0, t1, y, stepper, opt.record_every, [&](double t, std::span<const double> yy) {
        auto s = unpack(yy);
        double kin = 0.0, dlmax = 0.0;
        for (std::size_t q = 0; q < c; ++q) kin += 0.5 * s.rho[q] * (s.vx[q] * s.vx[q] + s.vy[q] * s.vy[q]);
        for (double d : s.dl) dlmax = std::max(dlmax, std::abs(d));
        const auto [mn, mx] = std::minmax_element(s.rho.begin(), s.rho.end());
        const double state[5] = {*mn, *mx, kin * cell_area(s.n), divergence_norm(sp, s), dlmax};
        std::vector<double> row{fluid_energy(s, p)};
        if (ext) {
            row.insert(row.end(), {extended_energy(s, p), rayleigh(s, p), yy.back()});
        }
        run.summary.append(t, state, row);
        if (opt.snapshot_every > 0 && samples % static_cast<std::size_t>(opt.snapshot_every) == 0)
            run.snapshots.push_back(s);
        ++samples;
    });
    run.final_state = unpack(y);
    return run;
}

std::string field_csv(std::size_t n, const std::vector<double>& values) {
    std::string out;
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
            if (ix) out += ',';
            out += trajectory::format_double(values[iy * n + ix]);
        }
        out += '\n';
    }
    return out;
}

} // namespace nhm::oddfluid
