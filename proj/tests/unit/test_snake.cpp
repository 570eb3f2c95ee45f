#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nhm/error.hpp"
#include "nhm/snake/snake.hpp"
#include "oracles.hpp"

using namespace nhm;
using namespace nhm::snake;

namespace {

std::vector<double> grid(double a, double b, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

HeadPath circle_path(double r, double turns, std::size_t n) {
    return HeadPath::from_function([r](double p) { return Point{r * std::cos(p), r * std::sin(p)}; }, 0.0,
                                   2 * std::numbers::pi * turns, n);
}

// distance from q to the polyline through pts
double polyline_distance(const std::vector<Point>& pts, Point q) {
    double best = INFINITY;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double ax = pts[i][0], ay = pts[i][1];
        const double dx = pts[i + 1][0] - ax, dy = pts[i + 1][1] - ay;
        double u = ((q[0] - ax) * dx + (q[1] - ay) * dy) / (dx * dx + dy * dy);
        u = std::clamp(u, 0.0, 1.0);
        best = std::min(best, std::hypot(q[0] - ax - u * dx, q[1] - ay - u * dy));
    }
    return best;
}

} // namespace

TEST_CASE("head path of a straight line") {
    HeadPath h = HeadPath::from_function([](double p) { return Point{3 * p, 4 * p}; }, 0.0, 2.0, 21);
    CHECK(std::abs(h.length() - 10.0) < 1e-12);
    auto q = h.point(5.0);
    CHECK(std::abs(q[0] - 3.0) < 1e-10);
    CHECK(std::abs(q[1] - 4.0) < 1e-10);
}

TEST_CASE("head path is unit speed") {
    auto h = circle_path(1.0, 1.0, 400);
    CHECK(std::abs(h.length() - 2 * std::numbers::pi) < 1e-8);
    const double ds = 1e-5;
    for (double s = 0.1; s < h.length() - 0.1; s += 0.137) {
        auto a = h.point(s + ds), b = h.point(s - ds);
        const double sp = std::hypot(a[0] - b[0], a[1] - b[1]) / (2 * ds);
        CHECK(std::abs(sp - 1.0) < 1e-6);
        auto t = h.tangent(s);
        CHECK(std::abs(std::hypot(t[0], t[1]) - 1.0) < 1e-14);
    }
}

TEST_CASE("straight snake translates rigidly") {
    HeadPath h = HeadPath::from_function([](double p) { return Point{p, 0.0}; }, 0.0, 10.0, 101);
    const double L = 2.0;
    auto s = grid(0, L, 21);
    auto t = grid(0, 3, 7);
    auto frames = snake_evolve(h, [L](double tt) { return L + tt; }, t, s);
    for (const auto& fr : frames) {
        CHECK(std::abs(fr.z.front()[0] - (fr.t + L)) < 1e-10);
        CHECK(std::abs(fr.z.back()[0] - fr.t) < 1e-10);
        for (const auto& p : fr.z) CHECK(std::abs(p[1]) < 1e-12);
    }
}

TEST_CASE("snake on a circle stays on the circle") {
    const double r = 0.7;
    auto h = circle_path(r, 2.0, 800);
    auto s = grid(0, 1.5, 31);
    auto t = grid(0, 4, 41);
    auto frames = snake_evolve(h, [](double tt) { return 1.5 + 0.5 * tt + 0.1 * tt * tt; }, t, s);
    for (const auto& fr : frames)
        for (const auto& p : fr.z) CHECK(std::abs(std::hypot(p[0], p[1]) - r) < 1e-7);
}

TEST_CASE("snake frames keep their length and lie on the track") {
    auto h = HeadPath::from_function([](double p) { return Point{p, 0.3 * std::sin(2 * p)}; }, 0.0, 8.0, 801);
    const double L = 2.0;
    auto s = grid(0, L, 20001);
    auto t = grid(0, 2, 5);
    auto frames = snake_evolve(h, [L](double tt) { return L + tt; }, t, s);
    std::vector<Point> track;
    for (double p = 0; p <= 8.0; p += 1e-3) track.push_back({p, 0.3 * std::sin(2 * p)});
    for (const auto& fr : frames) {
        double len = 0;
        for (std::size_t i = 1; i < fr.z.size(); ++i)
            len += std::hypot(fr.z[i][0] - fr.z[i - 1][0], fr.z[i][1] - fr.z[i - 1][1]);
        CHECK(std::abs(len - L) / L < 1e-6);
        for (std::size_t i = 0; i < fr.z.size(); i += 997) CHECK(polyline_distance(track, fr.z[i]) < 1e-6);
    }
}

TEST_CASE("collinearity residual is second order") {
    auto h = HeadPath::from_function([](double p) { return Point{p, 0.3 * std::sin(2 * p)}; }, 0.0, 8.0, 801);
    auto s = grid(0, 1.0, 21);
    auto f = [](double tt) { return 1.0 + tt + 0.5 * std::sin(tt); };
    std::vector<double> dts{0.04, 0.02, 0.01, 0.005}, res;
    for (double dt : dts) res.push_back(collinearity_residual(h, f, 1.3, dt, s));
    CHECK(oracle::loglog_slope(dts, res) > 1.9);
    CHECK(res.back() < 1e-3);
}

TEST_CASE("offset outside the head path") {
    HeadPath h = HeadPath::from_function([](double p) { return Point{p, 0.0}; }, 0.0, 5.0, 51);
    auto s = grid(0, 2, 5);
    std::vector<double> t{0.0, 1.0, 4.0};
    CHECK_THROWS_AS(snake_evolve(h, [](double tt) { return 2.0 + tt; }, t, s), Error);
    std::vector<double> t0{0.0};
    CHECK_THROWS_AS(snake_evolve(h, [](double) { return 1.0; }, t0, s), Error);
}

TEST_CASE("sleigh without rotation drives straight") {
    auto r = sleigh_with_string(1.0, 0.0, 1.0, 0.0, 3.0, numkit::Rk4Fixed{1e-3});
    for (const auto& fr : r.frames) {
        for (const auto& p : fr.z) CHECK(std::abs(p[1]) < 1e-9);
        CHECK(std::abs(fr.z.front()[0] - fr.t) < 1e-6);
        CHECK(std::abs(fr.z.back()[0] - (fr.t - 1.0)) < 1e-6);
    }
}

TEST_CASE("sleigh string settles on the circle") {
    const double L = 0.5;
    SleighOptions opt;
    opt.frame_dt = 0.01;
    auto r = sleigh_with_string(1.0, -10.0, L, 0.0, 3.0, numkit::Rk4Fixed{1e-4}, opt);
    auto xs = r.sleigh.column("x"), ys = r.sleigh.column("y");
    auto c = oracle::fit_circle(xs, ys);
    CHECK(std::abs(c.r - 0.1) < 1e-6);
    double worst = 0, delay = 0;
    for (const auto& fr : r.frames) {
        // head matches the sleigh
        const auto k = static_cast<std::size_t>(std::lround(fr.t / opt.frame_dt));
        CHECK(std::hypot(fr.z[0][0] - xs[k], fr.z[0][1] - ys[k]) < 1e-6);
        if (fr.t <= L + 1e-9) continue;
        for (std::size_t i = 0; i < fr.z.size(); ++i) {
            worst = std::max(worst, std::abs(std::hypot(fr.z[i][0] - c.cx, fr.z[i][1] - c.cy) - c.r));
            // point s equals the contact point at t − s/|v0| (closed-form circle)
            const double tau = fr.t - fr.s[i];
            const double th = -10.0 * tau;
            const double hx = std::sin(th) / -10.0, hy = (1.0 - std::cos(th)) / -10.0;
            delay = std::max(delay, std::hypot(fr.z[i][0] - hx, fr.z[i][1] - hy));
        }
    }
    CHECK(worst < 1e-3);
    CHECK(delay < 1e-3);
}
