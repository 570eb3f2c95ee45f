#include "nhm/skate/skate.hpp"

#include <cmath>
#include <numbers>

#include "nhm/error.hpp"

namespace nhm::skate {

std::string to_string(SkateSystem s) {
    switch (s) {
    case SkateSystem::Reduced: return "reduced";
    case SkateSystem::Lda: return "lda";
    case SkateSystem::Regularized: return "regularized";
    }
    return "reduced";
}

SkateSystem skate_system_from_string(const std::string& s) {
    if (s == "reduced") return SkateSystem::Reduced;
    if (s == "lda") return SkateSystem::Lda;
    if (s == "regularized") return SkateSystem::Regularized;
    throw Error(ErrorKind::Config, "unknown skate system '" + s + "' (expected reduced, lda or regularized)");
}

namespace {

void require(std::span<const double> s, std::size_t n, const char* what) {
    if (s.size() != n) throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": wrong state size");
}

void check_params(const SkateParams& p, bool regularized) {
    if (!(p.g >= 0.0)) throw Error(ErrorKind::InvalidArgument, "g must be >= 0");
    if (!(p.mu >= 0.0) || !std::isfinite(p.mu)) throw Error(ErrorKind::InvalidArgument, "mu must be finite and >= 0");
    if (regularized && !(p.nu > 0.0)) throw Error(ErrorKind::InvalidArgument, "nu must be > 0");
    if (regularized && !(p.alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be > 0");
}

} // namespace

void reduced_rhs(std::span<const double> s, const SkateParams& p, std::span<double> out) {
    require(s, kReducedSize, "reduced_rhs");
    const double th = s[2], w = s[3], rho = s[4], lam = s[5];
    const double c = std::cos(th), sn = std::sin(th);
    out[0] = rho * c;
    out[1] = rho * sn;
    out[2] = w;
    out[3] = -lam * rho;
    out[4] = -p.g * c + lam * w;
    out[5] = -rho * w + p.g * sn - p.mu * lam;
    numkit::require_finite(out, "reduced skate derivative");
}

void lda_limit_rhs(std::span<const double> s, double g, std::span<double> out) {
    require(s, kLdaSize, "lda_limit_rhs");
    const double th = s[2], w = s[3], rho = s[4];
    out[0] = rho * std::cos(th);
    out[1] = rho * std::sin(th);
    out[2] = w;
    out[3] = 0.0;
    out[4] = -g * std::cos(th);
}

void regularized_rhs(std::span<const double> s, const SkateParams& p, std::span<double> out) {
    require(s, kRegularizedSize, "regularized_rhs");
    const double th = s[2], vx = s[3], vy = s[4], w = s[5];
    const double nx = std::sin(th), ny = -std::cos(th); // blade normal
    const double tx = -ny, ty = nx;                      // blade direction
    const double phi = nx * vx + ny * vy;
    const double rho = tx * vx + ty * vy;
    // (I + n nᵀ/ν) v̇ = b
    const double bx = -p.g - phi * nx / p.alpha - w * (rho * nx + phi * tx) / p.nu;
    const double by = -phi * ny / p.alpha - w * (rho * ny + phi * ty) / p.nu;
    // Sherman–Morrison: (I + nnᵀ/ν)⁻¹ = I − nnᵀ/(ν + 1) for unit n
    const double nb = nx * bx + ny * by;
    const double k = nb / (p.nu + 1.0);
    out[0] = vx;
    out[1] = vy;
    out[2] = w;
    out[3] = bx - k * nx;
    out[4] = by - k * ny;
    out[5] = phi * rho / p.nu;
    numkit::require_finite(out, "regularized skate derivative");
}

double skate_energy(double rho, double omega, double x, double g) { return 0.5 * (rho * rho + omega * omega) + g * x; }

double skate_energy(std::span<const double> s, double g) {
    if (s.size() < kLdaSize) throw Error(ErrorKind::DimensionMismatch, "skate_energy: state too short");
    return skate_energy(s[4], s[3], s[0], g);
}

double transverse_velocity(std::span<const double> s) { return s[3] * std::sin(s[2]) - s[4] * std::cos(s[2]); }

double blade_speed(std::span<const double> s) { return s[3] * std::cos(s[2]) + s[4] * std::sin(s[2]); }

double regularized_energy(std::span<const double> s, const SkateParams& p) {
    const double phi = transverse_velocity(s);
    return 0.5 * (s[3] * s[3] + s[4] * s[4] + s[5] * s[5]) + p.g * s[0] + phi * phi / (2.0 * p.nu);
}

double rayleigh(std::span<const double> s, const SkateParams& p) {
    const double phi = transverse_velocity(s);
    return phi * phi / (2.0 * p.alpha);
}

SkateInitial figure_initial() {
    SkateInitial init;
    init.theta = std::numbers::pi / 4;
    init.v = 1.0;
    init.omega = -10.0;
    return init;
}

std::vector<double> initial_state(SkateSystem system, const SkateInitial& init) {
    switch (system) {
    case SkateSystem::Reduced: return {init.x, init.y, init.theta, init.omega, init.v, init.lambda};
    case SkateSystem::Lda: return {init.x, init.y, init.theta, init.omega, init.v};
    case SkateSystem::Regularized:
        return {init.x, init.y, init.theta, init.v * std::cos(init.theta), init.v * std::sin(init.theta), init.omega};
    }
    return {};
}

std::pair<double, double> lda_closed_form(const SkateInitial& init, double g, double t) {
    const double th = init.theta + init.omega * t;
    if (init.omega == 0.0) return {th, init.v - g * std::cos(init.theta) * t};
    return {th, init.v - (g / init.omega) * (std::sin(th) - std::sin(init.theta))};
}

trajectory::Trajectory integrate_skate(SkateSystem system, const SkateInitial& init, const SkateParams& p, double t0,
                                       double t1, const numkit::Stepper& stepper, int record_every) {
    check_params(p, system == SkateSystem::Regularized);
    std::vector<std::string> cols;
    std::vector<std::string> ledger{"energy"};
    numkit::Rhs rhs;
    switch (system) {
    case SkateSystem::Reduced:
        cols = {"x", "y", "theta", "omega", "rho", "lambda"};
        rhs = [p](double, std::span<const double> s, std::span<double> d) { reduced_rhs(s, p, d); };
        break;
    case SkateSystem::Lda:
        cols = {"x", "y", "theta", "omega", "rho"};
        rhs = [p](double, std::span<const double> s, std::span<double> d) { lda_limit_rhs(s, p.g, d); };
        break;
    case SkateSystem::Regularized:
        cols = {"x", "y", "theta", "vx", "vy", "omega"};
        ledger = {"energy", "energy_nu", "phi", "rayleigh"};
        rhs = [p](double, std::span<const double> s, std::span<double> d) { regularized_rhs(s, p, d); };
        break;
    }

    trajectory::Trajectory traj("skate", cols, ledger);
    traj.meta()["system"] = to_string(system);
    traj.meta()["params"] = {{"g", p.g}, {"mu", p.mu}, {"nu", p.nu}, {"alpha", p.alpha}};
    traj.meta()["stepper"] = numkit::describe(stepper);

    std::vector<double> row;
    auto record = [&](double t, std::span<const double> s) {
        row.clear();
        if (system == SkateSystem::Regularized) {
            const double e_plain = 0.5 * (blade_speed(s) * blade_speed(s) + s[5] * s[5]) + p.g * s[0];
            row = {e_plain, regularized_energy(s, p), transverse_velocity(s), rayleigh(s, p)};
        } else {
            row = {skate_energy(s, p.g)};
        }
        traj.append(t, s, row);
    };
    auto y = initial_state(system, init);
    numkit::integrate_sampled(rhs, t0, t1, y, stepper, record_every, record);
    return traj;
}

} // namespace nhm::skate
