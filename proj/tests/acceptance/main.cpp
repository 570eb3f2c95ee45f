// Acceptance suite: one PASS/FAIL line per criterion, clause details below.
// Clauses marked known-unattainable print as FAIL but do not fail the run;
// see README for the analysis.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "nhm/camassaholm/camassaholm.hpp"
#include "nhm/distributions/distributions.hpp"
#include "nhm/driving/driving.hpp"
#include "nhm/liealg/liealg.hpp"
#include "nhm/loopgroup/loopgroup.hpp"
#include "nhm/masstransport/masstransport.hpp"
#include "nhm/oddfluid/oddfluid.hpp"
#include "nhm/skate/skate.hpp"
#include "nhm/snake/snake.hpp"
#include "oracles.hpp"

using namespace nhm;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * kPi;

struct Clause {
    std::string what;
    bool pass = false;
    bool known = false; // failure is analysed as unattainable
};

struct Outcome {
    std::vector<Clause> clauses;

    void add(std::string what, bool pass, bool known = false) { clauses.push_back({std::move(what), pass, known}); }
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double rel_drift(const std::vector<double>& v) {
    double d = 0.0;
    for (double x : v) d = std::max(d, std::abs(x - v[0]));
    return v[0] != 0.0 ? d / std::abs(v[0]) : d;
}

// Residuals at roundoff carry no order information.
bool above_floor(const std::vector<double>& errs, double floor) {
    for (double e : errs)
        if (!(e > floor)) return false;
    return true;
}

// ------------------------------------------------------------------ skate

Outcome skate_energy() {
    Outcome o;
    const auto init = skate::figure_initial();
    for (double mu : {0.0, 1.0, 100.0}) {
        auto tr = skate::integrate_skate(skate::SkateSystem::Reduced, init, {1.0, mu}, 0.0, 8.0, numkit::Rk4Fixed{1e-4});
        // E from the raw columns, not the ledger
        double e0 = 0.0, d = 0.0;
        for (std::size_t i = 0; i < tr.size(); ++i) {
            const auto s = tr.state(i);
            const double e = 0.5 * (s[4] * s[4] + s[3] * s[3]) + s[0];
            if (i == 0) e0 = e;
            d = std::max(d, std::abs(e - e0));
        }
        o.add("mu=" + sci(mu) + ": rel drift " + sci(d / std::abs(e0)) + " <= 1e-8", d / std::abs(e0) <= 1e-8);
    }
    return o;
}

Outcome lda_circle() {
    Outcome o;
    auto init = skate::figure_initial();
    const double period = kTwoPi / std::abs(init.omega);
    auto tr = skate::integrate_skate(skate::SkateSystem::Lda, init, {0.0}, 0.0, period, numkit::Rk4Fixed{1e-4});
    auto xs = tr.column("x"), ys = tr.column("y");
    const auto c = oracle::fit_circle(xs, ys);
    const double dr = std::abs(c.r - 0.1);
    o.add("fitted radius " + sci(c.r) + ", |r - 0.1| = " + sci(dr) + " < 1e-6", dr < 1e-6);
    const double gap = std::hypot(xs.back() - xs.front(), ys.back() - ys.front());
    o.add("closure gap after one period " + sci(gap) + " < 1e-6", gap < 1e-6);
    return o;
}

Outcome lda_cycloid() {
    Outcome o;
    const auto init = skate::figure_initial();
    const double g = 1.0;
    auto tr = skate::integrate_skate(skate::SkateSystem::Lda, init, {g}, 0.0, 10.0, numkit::Rk4Fixed{1e-4});
    double err = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const double t = tr.times()[i];
        const double th = init.theta + init.omega * t;
        const double rho = init.v - g / init.omega * (std::sin(th) - std::sin(init.theta));
        err = std::max({err, std::abs(tr.state(i)[2] - th), std::abs(tr.state(i)[4] - rho)});
    }
    o.add("max |(theta, rho) - quadrature| " + sci(err) + " < 1e-8 on [0, 10]", err < 1e-8);
    return o;
}

Outcome dissipation_identity() {
    Outcome o;
    auto g = oracle::rng(4);
    const skate::SkateParams p{1.0, 1.0, 0.1, 0.1};
    std::vector<double> d(6);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        std::vector<double> s{oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3), oracle::uniform(g, -6, 6),
                              oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2), oracle::uniform(g, -5, 5)};
        skate::regularized_rhs(s, p, d);
        const double sn = std::sin(s[2]), cs = std::cos(s[2]);
        const double phi = s[3] * sn - s[4] * cs;
        // ∂E_ν/∂q · q̇ by hand
        const double dE = p.g * s[3] + (phi / p.nu) * (s[3] * cs + s[4] * sn) * s[5] +
                          (s[3] + phi / p.nu * sn) * d[3] + (s[4] - phi / p.nu * cs) * d[4] + s[5] * d[5];
        const double E = 0.5 * (s[3] * s[3] + s[4] * s[4] + s[5] * s[5]) + p.g * s[0] + phi * phi / (2 * p.nu);
        const double R = phi * phi / (2 * p.alpha);
        worst = std::max(worst, std::abs(dE + 2 * R) / std::abs(E));
    }
    o.add("max |dE/dt + 2R| / |E| over 1000 states " + sci(worst) + " < 1e-12", worst < 1e-12);
    return o;
}

Outcome double_limit() {
    Outcome o;
    const auto init = skate::figure_initial();
    const double mu = 100.0;
    auto red = skate::integrate_skate(skate::SkateSystem::Reduced, init, {1.0, mu}, 0.0, 2.0, numkit::Rk4Fixed{1e-5}, 100);
    std::vector<double> dists;
    std::string list;
    for (double a : {1e-2, 1e-3, 1e-4}) {
        auto reg = skate::integrate_skate(skate::SkateSystem::Regularized, init, {1.0, mu, mu * a, a}, 0.0, 2.0,
                                          numkit::Rk4Fixed{1e-5}, 100);
        double dist = 0.0;
        for (std::size_t i = 0; i < red.size(); ++i)
            dist = std::max(dist, std::hypot(red.state(i)[0] - reg.state(i)[0], red.state(i)[1] - reg.state(i)[1]));
        dists.push_back(dist);
        list += (list.empty() ? "" : ", ") + sci(dist);
    }
    const bool mono = dists[1] < dists[0] && dists[2] < dists[1];
    o.add("distance for alpha = 1e-2, 1e-3, 1e-4: " + list + " (strictly decreasing)", mono);
    return o;
}

// ------------------------------------------------------------------ distributions

std::vector<int> goursat_dims(std::size_t dim) {
    std::vector<int> v;
    for (std::size_t i = 0; i + 2 <= dim; ++i) v.push_back(static_cast<int>(i) + 2);
    return v;
}

constexpr double kTrailerTol = 1e-8;

Outcome goursat_flags() {
    Outcome o;
    auto g = oracle::rng(6);
    for (int n = 0; n <= 5; ++n) {
        auto d = distributions::trailer_fields(n);
        const auto want = goursat_dims(d.coordinates.size());
        int bad = 0;
        for (int k = 0; k < 20; ++k) {
            auto p = oracle::generic_trailer_point(g, n);
            if (distributions::derived_flag(d, p, static_cast<int>(want.size()) - 1, kTrailerTol).dims != want) ++bad;
        }
        o.add(std::to_string(n) + "-trailer: " + std::to_string(20 - bad) + "/20 points give [2.." +
                  std::to_string(want.back()) + "]",
              bad == 0);
    }
    for (int dim = 4; dim <= 8; ++dim) {
        auto d = distributions::goursat_normal_form(dim);
        const auto want = goursat_dims(static_cast<std::size_t>(dim));
        int bad = 0;
        for (int k = 0; k < 20; ++k) {
            std::vector<double> p(static_cast<std::size_t>(dim));
            for (double& x : p) x = oracle::uniform(g, -2, 2);
            if (distributions::derived_flag(d, p, static_cast<int>(want.size()) - 1, 1e-8).dims != want) ++bad;
        }
        o.add("normal form dim " + std::to_string(dim) + ": " + std::to_string(20 - bad) + "/20 points", bad == 0);
    }
    auto car = distributions::car_fields(1.0);
    auto turn = distributions::car_turn(1.0);
    auto park = distributions::car_park(1.0);
    int bad = 0;
    double err = 0.0;
    for (int k = 0; k < 100; ++k) {
        std::vector<double> p{oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3),
                              oracle::uniform(g, -0.7, 0.7)};
        if (k < 20 && distributions::derived_flag(car, p, 2, 1e-8).dims != std::vector<int>{2, 3, 4}) ++bad;
        // [∂φ, drive] = sec²φ ∂θ;  [drive, turn] = sec²φ (sin θ ∂x − cos θ ∂y)
        const double h = 1.0 / (std::cos(p[3]) * std::cos(p[3]));
        const std::vector<double> t_ref{0, 0, h, 0}, p_ref{h * std::sin(p[2]), -h * std::cos(p[2]), 0, 0};
        err = std::max({err, oracle::max_abs_diff(turn(p), t_ref), oracle::max_abs_diff(park(p), p_ref)});
    }
    o.add("car: " + std::to_string(20 - bad) + "/20 points give [2,3,4]", bad == 0);
    o.add("car turn/park vs closed forms at 100 points: " + sci(err) + " < 1e-10", err < 1e-10);
    return o;
}

Outcome bracket_order() {
    Outcome o;
    const std::vector<double> ts{0.2, 0.1, 0.05, 0.025};
    auto measure = [&](const distributions::VectorField& v, const distributions::VectorField& w,
                       const std::vector<double>& p, const std::string& label) {
        auto br = distributions::lie_bracket(v, w)(p);
        std::vector<double> errs;
        double scale = 0.0;
        for (double x : p) scale = std::max(scale, std::abs(x));
        for (double t : ts) {
            auto e = driving::bracket_maneuver(v, w, p, t);
            double m = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) m = std::max(m, std::abs(e[i] - p[i] - t * t * br[i]));
            errs.push_back(m);
        }
        std::string list;
        for (double e : errs) list += (list.empty() ? "" : ", ") + sci(e);
        if (!above_floor(errs, 1e-13 * (1.0 + scale))) {
            // residual is roundoff: Φ(p) − p equals t²[V,W] exactly for this pair
            o.add(label + ": residuals " + list + " are roundoff, slope not measurable (need >= 2.9)", false, true);
            return;
        }
        const double slope = oracle::loglog_slope(ts, errs);
        o.add(label + ": slope " + sci(slope) + " >= 2.9 (residuals " + list + ")", slope >= 2.9);
    };
    auto car = distributions::car_fields(1.0);
    measure(car.generators[0], car.generators[1], {0.0, 0.0, 0.0, 0.0}, "car (steer, drive) at 0");
    measure(car.generators[0], car.generators[1], {0.4, -0.3, 0.7, 0.2}, "car (steer, drive) at a generic point");
    auto dx = distributions::make_field(2, "dx", [](const auto& q) {
        using T = typename std::remove_cvref_t<decltype(q)>::value_type;
        return std::vector<T>{T(1.0), T(0.0)};
    });
    auto xdy = distributions::make_field(2, "xdy", [](const auto& q) {
        using T = typename std::remove_cvref_t<decltype(q)>::value_type;
        return std::vector<T>{T(0.0), q[0]};
    });
    measure(dx, xdy, {0.3, -0.2}, "(dx, x dy)");
    return o;
}

// ------------------------------------------------------------------ snake

Outcome sleigh_string() {
    Outcome o;
    const double v0 = 1.0, w0 = -10.0, L = 0.2;
    auto res = snake::sleigh_with_string(v0, w0, L, 0.0, 1.5, numkit::Rk4Fixed{1e-3});
    const auto s0 = res.sleigh.state(0);
    const double x0 = s0[0], y0 = s0[1], th0 = s0[2];
    auto path = [&](double tau) -> std::array<double, 2> {
        if (tau <= 0) return {x0 + v0 * tau * std::cos(th0), y0 + v0 * tau * std::sin(th0)};
        const double th = th0 + w0 * tau;
        return {x0 + v0 / w0 * (std::sin(th) - std::sin(th0)), y0 - v0 / w0 * (std::cos(th) - std::cos(th0))};
    };
    const double cx = x0 - v0 / w0 * std::sin(th0), cy = y0 + v0 / w0 * std::cos(th0), R = std::abs(v0 / w0);
    double circle = 0.0, delay = 0.0;
    std::size_t late = 0;
    for (const auto& fr : res.frames)
        for (std::size_t k = 0; k < fr.s.size(); ++k) {
            const auto e = path(fr.t - fr.s[k] / std::abs(v0));
            delay = std::max(delay, std::hypot(fr.z[k][0] - e[0], fr.z[k][1] - e[1]));
            if (fr.t > L / std::abs(v0)) {
                circle = std::max(circle, std::abs(std::hypot(fr.z[k][0] - cx, fr.z[k][1] - cy) - R));
                if (k == 0) ++late;
            }
        }
    o.add("string distance from the sleigh circle after t > L/|v0| (" + std::to_string(late) + " frames): " +
              sci(circle) + " < 1e-3",
          late > 0 && circle < 1e-3);
    o.add("string paths vs head path delayed by s/|v0|: " + sci(delay) + " < 1e-3", delay < 1e-3);
    return o;
}

// ------------------------------------------------------------------ so(3)

liealg::Mat3 diag(double a, double b, double c) { return liealg::Vec3(a, b, c).asDiagonal(); }

Outcome so3_flows() {
    Outcome o;
    using liealg::LieFlow;
    using liealg::Vec3;
    auto ea = liealg::integrate_lie(LieFlow::euler_arnold(diag(1, 0.5, 1.0 / 3)), Vec3(0.05, 1.0, 0.05), 0.0, 20.0,
                                    numkit::Rk4Fixed{1e-3}, 10);
    const double h = rel_drift(ea.column("energy")), c = rel_drift(ea.column("casimir"));
    o.add("Euler-Arnold over t = 20: H drift " + sci(h) + ", |m|^2 drift " + sci(c) + " <= 1e-8", h <= 1e-8 && c <= 1e-8);

    auto sus = liealg::integrate_lie(LieFlow::eps(diag(1, 2, 3), {Vec3(0, 0, 1)}), Vec3(1, 2, 0), 0.0, 20.0,
                                     numkit::Rk4Fixed{1e-3}, 10);
    const double hs = rel_drift(sus.column("energy"));
    double cs = 0.0;
    for (double v : sus.column("constraint1")) cs = std::max(cs, std::abs(v));
    o.add("Suslov a = e3: H drift " + sci(hs) + ", constraint " + sci(cs) + " <= 1e-8", hs <= 1e-8 && cs <= 1e-8);

    const auto A = diag(1, 1, 3);
    const Vec3 m0(0.8, -0.6, 0.0);
    auto eps = liealg::integrate_lie(LieFlow::eps(A, {Vec3(0, 0, 1)}), m0, 0.0, 10.0, numkit::Rk4Fixed{1e-3}, 10);
    auto vak = liealg::integrate_lie(LieFlow::euler_arnold(diag(1, 1, 0)), m0, 0.0, 10.0, numkit::Rk4Fixed{1e-3}, 10);
    double lam = 0.0, gap = 0.0;
    for (double l : eps.column("lambda1")) lam = std::max(lam, std::abs(l));
    for (std::size_t i = 0; i < eps.size(); ++i)
        for (std::size_t j = 0; j < 3; ++j) gap = std::max(gap, std::abs(eps.state(i)[j] - vak.state(i)[j]));
    o.add("symmetric top: multipliers " + sci(lam) + ", EPS vs vakonomic " + sci(gap) + " <= 1e-8",
          lam <= 1e-8 && gap <= 1e-8);
    return o;
}

// ------------------------------------------------------------------ loop group

Outcome magnon_chain() {
    Outcome o;
    const std::size_t n = 128;
    const double eps = 0.4;
    for (int k : {1, 2, 3}) {
        auto tr = loopgroup::integrate_ll(loopgroup::magnon(n, k, eps), 0.0, 1.0, numkit::Rk4Fixed{1e-4}, true, 50);
        const double want = k * k * std::cos(eps);
        const double rel = std::abs(loopgroup::precession_frequency(tr, 0) - want) / want;
        o.add("magnon k = " + std::to_string(k) + ": frequency rel error " + sci(rel) + " < 1e-4", rel < 1e-4);
    }
    // smooth data, three low harmonics
    auto g = oracle::rng(10);
    std::vector<double> L(3 * n);
    double c[3][3][2];
    for (auto& a : c)
        for (auto& b : a)
            for (double& x : b) x = oracle::uniform(g, -0.3, 0.3);
    for (std::size_t j = 0; j < n; ++j) {
        const double th = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        double v[3] = {0, 0, 1};
        for (int a = 0; a < 3; ++a)
            for (int m = 0; m < 3; ++m) v[a] += c[a][m][0] * std::cos((m + 1) * th) + c[a][m][1] * std::sin((m + 1) * th);
        const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        for (int a = 0; a < 3; ++a) L[static_cast<std::size_t>(a) * n + j] = v[a] / r;
    }
    auto tr = loopgroup::integrate_ll(L, 0.0, 1.0, numkit::Rk4Fixed{1e-4}, true, 100);
    const double dh = rel_drift(tr.column("energy"));
    double dm = 0.0;
    for (const char* m : {"momentum_x", "momentum_y", "momentum_z"}) {
        auto v = tr.column(m);
        for (double x : v) dm = std::max(dm, std::abs(x - v[0]));
    }
    o.add("random 3-harmonic chain over t = 1: H drift " + sci(dh) + ", int L drift " + sci(dm) + " <= 1e-6",
          dh <= 1e-6 && dm <= 1e-6);

    auto curve = loopgroup::perturbed_circle(n, 0.05, 3);
    const double a = loopgroup::gauss_map_consistency(curve, 0.0, 0.5, numkit::Rk4Fixed{1e-4}, 100);
    const double b = loopgroup::gauss_map_consistency(curve, 0.0, 0.5, numkit::Rk4Fixed{5e-5}, 200);
    o.add("Gauss map gap at t = 0.5 (dt 1e-4): " + sci(a) + " <= 1e-5", a <= 1e-5);
    const bool ratio = b > 0 && a / b >= 16.0;
    if (!ratio && a < 1e-11)
        o.add("Gauss map improvement on halving dt: " + sci(a) + " -> " + sci(b) +
                  " (ratio " + sci(b > 0 ? a / b : 0.0) + ", need >= 16); gap is roundoff at both dt",
              false, true);
    else
        o.add("Gauss map improvement on halving dt: ratio " + sci(b > 0 ? a / b : 0.0) + " >= 16", ratio);
    return o;
}

// ------------------------------------------------------------------ Camassa-Holm

Outcome camassa_holm() {
    Outcome o;
    const std::size_t n = 256;
    numkit::Spectral1D sp(n, kTwoPi);
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        u[j] = 0.3 * std::cos(x) + 0.1 * std::sin(2 * x) + 0.05 * std::cos(3 * x + 0.5);
    }
    const auto m0 = camassaholm::momentum(sp, u);
    for (double kappa : {0.0, 0.5}) {
        auto tr = camassaholm::integrate_ch(m0, kappa, 0.0, 1.0, numkit::Rk4Fixed{1e-4}, 100);
        double mean = 0.0;
        for (double v : tr.column("mean")) mean = std::max(mean, std::abs(v));
        // H¹ energy from u recomputed on the final state
        auto energy = [&](std::span<const double> m) {
            auto uu = camassaholm::helmholtz_inverse(sp, m);
            std::vector<double> ux(n);
            sp.derivative(uu, ux, 1);
            double e = 0.0;
            for (std::size_t j = 0; j < n; ++j) e += uu[j] * uu[j] + ux[j] * ux[j];
            return 0.5 * e * kTwoPi / static_cast<double>(n);
        };
        const double e0 = energy(m0), e1 = energy(tr.back_state());
        const double drift = std::max(rel_drift(tr.column("energy")), std::abs(e1 - e0) / e0);
        o.add("kappa = " + sci(kappa) + ": max |int u| " + sci(mean) + " < 1e-12, H1 drift " + sci(drift) + " < 1e-8",
              mean < 1e-12 && drift < 1e-8);
    }
    std::vector<double> a(n), b(n);
    camassaholm::ch_rhs(sp, m0, 0.5, a);
    camassaholm::ch_rhs_uform(sp, u, 0.5, b);
    const double gap = oracle::max_abs_diff(a, b);
    o.add("m-form vs expanded u-form: " + sci(gap) + " < 1e-10", gap < 1e-10);
    return o;
}

// ------------------------------------------------------------------ odd fluid

oddfluid::FluidState fluid_state(std::size_t n, std::uint64_t seed, bool ext) {
    auto g = oracle::rng(seed);
    std::vector<oddfluid::FourierTerm> t;
    for (const char* f : {"rho", "vx", "vy"})
        for (int kx = 0; kx <= 2; ++kx)
            for (int ky = -2; ky <= 2; ++ky) {
                if (kx == 0 && ky <= 0) continue;
                t.push_back({f, kx, ky, (f[0] == 'r' ? 0.02 : 0.03) * oracle::uniform(g, -1, 1), oracle::uniform(g, -3, 3)});
            }
    if (ext)
        for (int kx = 0; kx <= 2; ++kx)
            for (int ky = 0; ky <= 2; ++ky) t.push_back({"dl", kx, ky, 0.02 * oracle::uniform(g, -1, 1), oracle::uniform(g, -3, 3)});
    return oddfluid::fluid_from_fourier(n, 1.0, t, ext);
}

double fluid_sup(const oddfluid::FluidState& a, const oddfluid::FluidState& b) {
    return std::max({oracle::max_abs_diff(a.rho, b.rho), oracle::max_abs_diff(a.vx, b.vx), oracle::max_abs_diff(a.vy, b.vy)});
}

Outcome odd_fluid() {
    Outcome o;
    using oddfluid::FluidSystem;
    oddfluid::FluidParams p;
    p.eta_h.terms = {{0.1, 1.0}};
    p.gamma_h.terms = {{0.05, 2.0}};
    const std::size_t n = 64;

    auto base = oddfluid::integrate_fluid(FluidSystem::Base, fluid_state(n, 1, false), p, 0.0, 1.0, numkit::Rk4Fixed{1e-3}, {10});
    const double drift = rel_drift(base.summary.column("energy"));
    o.add("base energy drift over t = 1 at 64^2: " + sci(drift) + " < 1e-6", drift < 1e-6);

    auto ext = oddfluid::integrate_fluid(FluidSystem::Extended, fluid_state(n, 2, true), p, 0.0, 1.0, numkit::Rk4Fixed{1e-3}, {10});
    auto hnu = ext.summary.column("energy_nu"), dis = ext.summary.column("dissipated");
    double bal = 0.0;
    for (std::size_t i = 0; i < hnu.size(); ++i) bal = std::max(bal, std::abs(hnu[i] - hnu[0] + dis[i]));
    bal /= std::abs(hnu[0]);
    o.add("extended balance |H(t) - H(0) + int 2R| / H(0): " + sci(bal) + " < 1e-6", bal < 1e-6);

    auto q = p;
    q.eta_h.terms = {{0.1, 2.0}};
    q.gamma_h.terms = {{-0.1, 2.0}}; // Γ̂ = Γ_H − η_H + ρη_H′ = 0
    auto s = fluid_state(n, 3, false);
    auto se = s;
    se.dl.assign(s.count(), 0.0);
    auto col = oddfluid::integrate_fluid(FluidSystem::Extended, se, q, 0.0, 0.5, numkit::Rk4Fixed{1e-3}, {50});
    const double dl = oracle::max_abs(col.final_state.dl);
    o.add("vanishing modified torque: max |dl| after t = 0.5 is " + sci(dl) + " <= 1e-12", dl <= 1e-12);

    const std::vector<double> mus{10.0, std::sqrt(1000.0), 100.0};
    auto s4 = fluid_state(n, 4, false);
    auto ref = oddfluid::integrate_fluid(FluidSystem::Base, s4, p, 0.0, 0.3, numkit::Rk4Fixed{1e-3}, {300});
    std::vector<double> gaps;
    std::string list;
    for (double mu : mus) {
        auto pm = p;
        pm.mu = mu;
        auto eff = oddfluid::integrate_fluid(FluidSystem::Effective, s4, pm, 0.0, 0.3, numkit::Rk4Fixed{1e-3}, {300});
        gaps.push_back(fluid_sup(eff.final_state, ref.final_state));
        list += (list.empty() ? "" : ", ") + sci(gaps.back());
    }
    const double slope = oracle::loglog_slope(mus, gaps);
    o.add("effective vs base at t = 0.3 for mu = 10..100: " + list + "; slope " + sci(slope) + " in [-1.1, -0.9]",
          slope >= -1.1 && slope <= -0.9);
    return o;
}

// ------------------------------------------------------------------ Burgers

Outcome burgers() {
    Outcome o;
    using masstransport::FourierTerm;
    const std::size_t n = 128;
    numkit::Spectral2D sp(n, kTwoPi);
    const std::vector<FourierTerm> terms{{"f", 1, 1, 0.15, 0}, {"f", 1, -1, 0.15, 0}, {"f", 1, 2, 0.2, -kPi / 2}};
    const auto f0 = masstransport::fourier_field(n, terms, "f");
    // u₀ = ∇f₀ written out by hand
    masstransport::Velocity u0{n, std::vector<double>(n * n), std::vector<double>(n * n)};
    for (std::size_t iy = 0; iy < n; ++iy)
        for (std::size_t ix = 0; ix < n; ++ix) {
            const double x = kTwoPi * static_cast<double>(ix) / static_cast<double>(n);
            const double y = kTwoPi * static_cast<double>(iy) / static_cast<double>(n);
            u0.ux[iy * n + ix] = -0.15 * std::sin(x + y) - 0.15 * std::sin(x - y) + 0.2 * std::cos(x + 2 * y);
            u0.uy[iy * n + ix] = -0.15 * std::sin(x + y) + 0.15 * std::sin(x - y) + 0.4 * std::cos(x + 2 * y);
        }
    std::vector<double> dts{4e-3, 2e-3, 1e-3}, gaps;
    double curl = 0.0;
    for (double dt : dts) {
        auto b = masstransport::integrate_burgers(u0, 0.0, 0.3, numkit::Rk4Fixed{dt}, 10);
        auto h = masstransport::integrate_hj(f0, 0.0, 0.3, numkit::Rk4Fixed{dt}, 10);
        if (dt == 1e-3) curl = masstransport::potentiality_check(b.summary);
        auto g = masstransport::gradient(sp, h.final_potential);
        gaps.push_back(std::max(oracle::max_abs_diff(g.ux, b.final_velocity.ux), oracle::max_abs_diff(g.uy, b.final_velocity.uy)));
    }
    o.add("max discrete curl over [0, 0.3] at n = 128: " + sci(curl) + " < 1e-6", curl < 1e-6);
    o.add("|grad f - u| at t = 0.3, dt = 1e-3: " + sci(gaps[2]) + " < 1e-5", gaps[2] < 1e-5);
    std::string list;
    for (double e : gaps) list += (list.empty() ? "" : ", ") + sci(e);
    if (!above_floor(gaps, 1e-12)) {
        o.add("4th-order convergence in dt: gaps " + list + " for dt = 4e-3, 2e-3, 1e-3 are roundoff, no order to measure",
              false, true);
    } else {
        const double slope = oracle::loglog_slope(dts, gaps);
        o.add("4th-order convergence in dt: slope " + sci(slope) + " >= 3.5", slope >= 3.5);
    }
    return o;
}

// ------------------------------------------------------------------ determinism

std::string run_capture(const std::string& cmd, int& status) {
    std::string out;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) {
        status = -1;
        return out;
    }
    char buf[4096];
    std::size_t k;
    while ((k = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
    status = ::pclose(p);
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism(const std::string& exe) {
    Outcome o;
    if (exe.empty()) {
        o.add("path to the nhm executable not given", false);
        return o;
    }
    int st = 0;
    const auto listing = run_capture("\"" + exe + "\" list-presets", st);
    if (st != 0) {
        o.add("list-presets failed", false);
        return o;
    }
    const auto presets = nlohmann::json::parse(listing);
    const fs::path root = fs::temp_directory_path() / ("nhm_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    for (const auto& e : presets) {
        const auto name = e["name"].get<std::string>(), sys = e["system"].get<std::string>();
        bool ok = true;
        std::size_t files = 0;
        for (const char* run : {"a", "b"}) {
            const auto dir = root / name / run;
            run_capture("\"" + exe + "\" " + sys + " --preset " + name + " --format csv --out \"" + dir.string() + "\"", st);
            ok = ok && st == 0;
        }
        if (ok)
            for (const auto& f : fs::recursive_directory_iterator(root / name / "a")) {
                if (!f.is_regular_file()) continue;
                const auto other = root / name / "b" / fs::relative(f.path(), root / name / "a");
                ok = ok && fs::exists(other) && slurp(f.path()) == slurp(other);
                ++files;
            }
        o.add(name + ": " + std::to_string(files) + " CSV files byte-identical across two runs", ok && files > 0);
    }
    fs::remove_all(root);
    return o;
}

} // namespace

int main(int argc, char** argv) {
    const std::string exe = argc > 1 ? argv[1] : "";
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{
        {1, "skate energy law", skate_energy},
        {2, "Lagrange-d'Alembert circle", lda_circle},
        {3, "Lagrange-d'Alembert cycloid closed form", lda_cycloid},
        {4, "regularized dissipation identity", dissipation_identity},
        {5, "double-limit convergence", double_limit},
        {6, "Goursat flags and car brackets", goursat_flags},
        {7, "bracket maneuver order", bracket_order},
        {8, "sleigh with string", sleigh_string},
        {9, "so(3) flows", so3_flows},
        {10, "Landau-Lifschitz magnon and Gauss map", magnon_chain},
        {11, "Camassa-Holm zero mean and energy", camassa_holm},
        {12, "odd fluid", odd_fluid},
        {13, "Burgers potentiality", burgers},
        {14, "determinism of presets", [&] { return determinism(exe); }},
    };
    int unexpected = 0, passed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.add(std::string("threw: ") + e.what(), false);
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = true, only_known = true;
        for (const auto& cl : out.clauses) {
            pass = pass && cl.pass;
            if (!cl.pass && !cl.known) only_known = false;
        }
        if (out.clauses.empty()) pass = only_known = false;
        if (pass) ++passed;
        else if (!only_known) ++unexpected;
        std::printf("%s %2d %s%s [%.1fs]\n", pass ? "PASS" : "FAIL", c.id, c.title,
                    pass ? "" : (only_known ? " (known, see README)" : ""), secs);
        for (const auto& cl : out.clauses)
            std::printf("        %s %s\n", cl.pass ? "ok  " : (cl.known ? "red*" : "FAIL"), cl.what.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria pass; %d unexpected failure(s)\n", passed, all.size(), unexpected);
    return unexpected == 0 ? 0 : 1;
}
