#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nhm/skate/skate.hpp"
#include "oracles.hpp"

using namespace nhm;
using namespace nhm::skate;

namespace {

std::vector<double> random_reduced(std::mt19937_64& g) {
    return {oracle::uniform(g, -3, 3),  oracle::uniform(g, -3, 3), oracle::uniform(g, -6, 6),
            oracle::uniform(g, -10, 10), oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3)};
}

// dE/dt along a reduced or limit derivative, E = ½(ρ²+ω²)+gx
double energy_rate(std::span<const double> s, std::span<const double> d, double g) {
    return s[4] * d[4] + s[3] * d[3] + g * d[0];
}

} // namespace

TEST_CASE("reduced rhs examples") {
    std::vector<double> d(6);
    reduced_rhs(std::vector<double>{0, 0, 0, 0, 1, 0}, {0.0, 3.0}, d);
    CHECK(d == std::vector<double>{1, 0, 0, 0, 0, 0});
    reduced_rhs(std::vector<double>{0, 0, std::numbers::pi / 2, 0, 0, 0}, {1.0, 0.0}, d);
    CHECK(std::abs(d[5] - 1.0) < 1e-15);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(d[i]) < 1e-15);
}

TEST_CASE("energy is conserved by the reduced family at the differential level") {
    auto g = oracle::rng(31);
    std::vector<double> d(6), dl(5);
    for (double mu : {0.0, 0.1, 1.0, 100.0}) {
        for (int k = 0; k < 1000; ++k) {
            auto s = random_reduced(g);
            SkateParams p{oracle::uniform(g, 0, 2), mu};
            reduced_rhs(s, p, d);
            const double scale = std::abs(s[4] * d[4]) + std::abs(s[3] * d[3]) + std::abs(p.g * d[0]) + 1.0;
            CHECK(std::abs(energy_rate(s, d, p.g)) < 1e-14 * scale);
            lda_limit_rhs(std::span<const double>(s).first(5), p.g, dl);
            CHECK(std::abs(energy_rate(s, dl, p.g)) < 1e-14 * scale);
        }
    }
}

TEST_CASE("skate energy values") {
    CHECK(skate_energy(1.0, 0.0, 0.0, 0.0) == 0.5);
    CHECK(skate_energy(0.0, 0.0, 2.0, 1.0) == 2.0);
}

TEST_CASE("energy drift over t = 8") {
    for (double mu : {0.0, 1.0, 100.0}) {
        auto tr = integrate_skate(SkateSystem::Reduced, figure_initial(), {1.0, mu}, 0.0, 8.0,
                                  numkit::Rk4Fixed{1e-4}, 50);
        auto E = tr.column("energy");
        double drift = 0;
        for (double e : E) drift = std::max(drift, std::abs(e - E[0]) / std::abs(E[0]));
        CAPTURE(mu);
        CHECK(drift <= 1e-8);
    }
}

TEST_CASE("regularized system on the constraint without rotation is at rest") {
    std::vector<double> s{0.0, 0.0, 0.3, std::cos(0.3), std::sin(0.3), 0.0}, d(6);
    regularized_rhs(s, {0.0, 0.0, 0.1, 0.1}, d);
    CHECK(std::abs(d[3]) < 1e-15);
    CHECK(std::abs(d[4]) < 1e-15);
    CHECK(std::abs(d[5]) < 1e-15);
}

TEST_CASE("regularized momentum equations hold") {
    // p_x = ẋ + φ sinθ/ν, p_y = ẏ − φ cosθ/ν; ṗ_x = −g − φ sinθ/α, ṗ_y = φ cosθ/α
    auto g = oracle::rng(32);
    std::vector<double> d(6);
    for (int k = 0; k < 200; ++k) {
        std::vector<double> s{0.1, 0.2, oracle::uniform(g, -4, 4), oracle::uniform(g, -2, 2),
                              oracle::uniform(g, -2, 2), oracle::uniform(g, -5, 5)};
        SkateParams p{1.0, 0.0, 0.3, 0.2};
        regularized_rhs(s, p, d);
        const double th = s[2], sn = std::sin(th), c = std::cos(th);
        const double phi = s[3] * sn - s[4] * c;
        const double phidot = d[3] * sn - d[4] * c + s[5] * (s[3] * c + s[4] * sn);
        const double pxdot = d[3] + (phidot * sn + phi * c * s[5]) / p.nu;
        const double pydot = d[4] - (phidot * c - phi * sn * s[5]) / p.nu;
        CHECK(std::abs(pxdot - (-p.g - phi * sn / p.alpha)) < 1e-12);
        CHECK(std::abs(pydot - phi * c / p.alpha) < 1e-12);
        CHECK(std::abs(d[5] - phi * (s[3] * c + s[4] * sn) / p.nu) < 1e-12);
    }
}

TEST_CASE("regularized dissipation identity") {
    auto g = oracle::rng(33);
    const SkateParams p{1.0, 1.0, 0.1, 0.1};
    std::vector<double> d(6);
    for (int k = 0; k < 1000; ++k) {
        std::vector<double> s{oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3), oracle::uniform(g, -6, 6),
                              oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2), oracle::uniform(g, -5, 5)};
        regularized_rhs(s, p, d);
        const double th = s[2], sn = std::sin(th), c = std::cos(th);
        const double phi = s[3] * sn - s[4] * c;
        const double phidot = d[3] * sn - d[4] * c + s[5] * (s[3] * c + s[4] * sn);
        const double dE = s[3] * d[3] + s[4] * d[4] + s[5] * d[5] + p.g * s[3] + phi * phidot / p.nu;
        const double E = regularized_energy(s, p);
        CHECK(std::abs(dE + 2.0 * rayleigh(s, p)) < 1e-12 * std::abs(E));
    }
}

TEST_CASE("double limit converges") {
    const auto init = figure_initial();
    for (double mu : {1.0, 100.0}) {
        auto red = integrate_skate(SkateSystem::Reduced, init, {1.0, mu}, 0.0, 2.0, numkit::Rk4Fixed{1e-4});
        double prev = 1e300;
        for (double a : {1e-2, 1e-3}) {
            auto reg = integrate_skate(SkateSystem::Regularized, init, {1.0, mu, mu * a, a}, 0.0, 2.0,
                                       numkit::Rk4Fixed{1e-4});
            double dist = 0;
            for (std::size_t i = 0; i < red.size(); ++i)
                dist = std::max(dist, std::hypot(red.state(i)[0] - reg.state(i)[0], red.state(i)[1] - reg.state(i)[1]));
            CHECK(dist < prev);
            prev = dist;
        }
    }
}

TEST_CASE("limit system: circle without gravity") {
    auto init = figure_initial();
    auto tr = integrate_skate(SkateSystem::Lda, init, {0.0}, 0.0, 2 * std::numbers::pi / 10, numkit::Rk4Fixed{1e-4});
    auto xs = tr.column("x"), ys = tr.column("y");
    auto c = oracle::fit_circle(xs, ys);
    CHECK(std::abs(c.r - 0.1) < 1e-6);
    CHECK(oracle::max_circle_residual(xs, ys, c) < 1e-6);
    CHECK(std::hypot(xs.back() - xs.front(), ys.back() - ys.front()) < 1e-6);
}

TEST_CASE("limit system: closed form with gravity") {
    auto init = figure_initial();
    auto tr = integrate_skate(SkateSystem::Lda, init, {1.0}, 0.0, 10.0, numkit::Rk4Fixed{1e-3});
    auto th = tr.column("theta"), rho = tr.column("rho");
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const double t = tr.times()[i];
        // independent quadrature of ρ̇ = −g cos(θ0 + ω0 t)
        const double th_exact = init.theta + init.omega * t;
        const double rho_exact = init.v - (std::sin(th_exact) - std::sin(init.theta)) / init.omega;
        CHECK(std::abs(th[i] - th_exact) < 1e-8);
        CHECK(std::abs(rho[i] - rho_exact) < 1e-8);
    }
}

TEST_CASE("limit system: vertical blade glides at constant speed") {
    SkateInitial init;
    init.theta = std::numbers::pi / 2;
    init.v = 0.7;
    std::vector<double> d(5);
    lda_limit_rhs(initial_state(SkateSystem::Lda, init), 1.0, d);
    CHECK(std::abs(d[4]) < 1e-16);
}

TEST_CASE("reduced flow without gravity: multiplier stays zero only when rho*omega = 0") {
    SkateInitial init;
    init.theta = 0.4;
    init.v = 1.3;
    init.omega = 0.0;
    for (double mu : {0.0, 1.0, 100.0}) {
        auto tr = integrate_skate(SkateSystem::Reduced, init, {0.0, mu}, 0.0, 5.0, numkit::Rk4Fixed{1e-3});
        for (double l : tr.column("lambda")) CHECK(std::abs(l) < 1e-12);
        for (double w : tr.column("omega")) CHECK(std::abs(w) < 1e-12);
    }
    // with rotation the multiplier is driven immediately: λ̇(0) = −ρ0 ω0
    std::vector<double> d(6);
    reduced_rhs(initial_state(SkateSystem::Reduced, figure_initial()), {0.0, 0.0}, d);
    CHECK(d[5] == doctest::Approx(10.0));
}

TEST_CASE("figure shapes") {
    auto init = figure_initial();
    // vakonomic with gravity: heads up first, then drifts down
    auto v = integrate_skate(SkateSystem::Reduced, init, {1.0, 0.0}, 0.0, 8.0, numkit::Rk4Fixed{1e-3});
    auto x = v.column("x");
    const auto imax = std::max_element(x.begin(), x.end()) - x.begin();
    CHECK(x[static_cast<std::size_t>(imax)] > 0.05);
    CHECK(v.times()[static_cast<std::size_t>(imax)] < 2.0);
    CHECK(x.back() < -1.0);
    // μ = 100: bounded
    auto m = integrate_skate(SkateSystem::Reduced, init, {1.0, 100.0}, 0.0, 8.0, numkit::Rk4Fixed{1e-3});
    for (double xi : m.column("x")) CHECK(std::abs(xi) < 1.0);
}
