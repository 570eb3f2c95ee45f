#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nhm/distributions/distributions.hpp"
#include "nhm/error.hpp"
#include "oracles.hpp"

using namespace nhm;
using namespace nhm::distributions;

namespace {

std::vector<double> sub(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

double h(double phi) { return 1.0 / (std::cos(phi) * std::cos(phi)); }

} // namespace

TEST_CASE("car fields: direct evaluation") {
    auto car = car_fields(1.0);
    std::vector<double> o{0, 0, 0, 0};
    CHECK(car.generators[1](o) == std::vector<double>{1, 0, 0, 0});
    auto car2 = car_fields(2.0);
    std::vector<double> p{0, 0, 0, std::numbers::pi / 6};
    auto v = car2.generators[1](p);
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(v[1] == doctest::Approx(0.0));
    CHECK(v[2] == doctest::Approx(std::tan(std::numbers::pi / 6) / 2));
    CHECK(v[3] == 0.0);
    std::vector<double> bad{0, 0, 0, std::numbers::pi / 4};
    CHECK_THROWS_AS(car.generators[1](bad), Error);
    try {
        car.generators[1](bad);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SteeringOutOfRange);
    }
}

TEST_CASE("turn and park brackets match closed forms") {
    auto g = oracle::rng(1);
    auto turn = car_turn(1.0);
    auto park = car_park(1.0);
    for (int k = 0; k < 100; ++k) {
        std::vector<double> p{oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3),
                              oracle::uniform(g, -0.75, 0.75)};
        auto t = turn(p), pk = park(p);
        const double hp = h(p[3]);
        CHECK(std::abs(t[0]) < 1e-10);
        CHECK(std::abs(t[1]) < 1e-10);
        CHECK(std::abs(t[2] - hp) < 1e-10);
        CHECK(std::abs(t[3]) < 1e-10);
        CHECK(std::abs(pk[0] - hp * std::sin(p[2])) < 1e-10);
        CHECK(std::abs(pk[1] + hp * std::cos(p[2])) < 1e-10);
        CHECK(std::abs(pk[2]) < 1e-10);
        CHECK(std::abs(pk[3]) < 1e-10);
    }
    std::vector<double> o{0, 0, 0, 0};
    CHECK(turn(o) == std::vector<double>{0, 0, 1, 0});
}

TEST_CASE("bracket algebra") {
    auto g = oracle::rng(2);
    auto car = car_fields(1.0);
    const auto& steer = car.generators[0];
    const auto& drive = car.generators[1];
    auto turn = car_turn(1.0);
    auto vv = lie_bracket(drive, drive);
    auto sd = lie_bracket(steer, drive), ds = lie_bracket(drive, steer);
    auto combo = linear_combination({0.7, -1.3}, {steer, drive});
    auto lhs = lie_bracket(combo, turn);
    auto st = lie_bracket(steer, turn), dt = lie_bracket(drive, turn);
    // Jacobi on (steer, drive, turn)
    auto j1 = lie_bracket(steer, lie_bracket(drive, turn));
    auto j2 = lie_bracket(drive, lie_bracket(turn, steer));
    auto j3 = lie_bracket(turn, lie_bracket(steer, drive));
    for (int k = 0; k < 100; ++k) {
        std::vector<double> p{oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3),
                              oracle::uniform(g, -0.7, 0.7)};
        CHECK(oracle::max_abs(vv(p)) < 1e-10);
        auto a = sd(p), b = ds(p);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(a[i] + b[i]) < 1e-10);
        auto l = lhs(p), r1 = st(p), r2 = dt(p);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(l[i] - (0.7 * r1[i] - 1.3 * r2[i])) < 1e-10);
        if (k < 20) {
            auto x = j1(p), y = j2(p), z = j3(p);
            for (int i = 0; i < 4; ++i) CHECK(std::abs(x[i] + y[i] + z[i]) < 1e-8);
        }
    }
}

TEST_CASE("field jacobian matches central differences") {
    auto g = oracle::rng(3);
    auto car = car_fields(1.0);
    auto turn = car_turn(1.0);
    for (const VectorField* f : {&car.generators[1], &turn}) {
        for (int k = 0; k < 100; ++k) {
            std::vector<double> p{oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3),
                                  oracle::uniform(g, -0.7, 0.7)};
            auto J = f->jacobian(p);
            for (int j = 0; j < 4; ++j) {
                auto pp = p, pm = p;
                pp[j] += 1e-5;
                pm[j] -= 1e-5;
                auto d = sub((*f)(pp), (*f)(pm));
                for (int i = 0; i < 4; ++i) CHECK(std::abs(J(i, j) - d[i] / 2e-5) < 1e-6);
            }
        }
    }
}

TEST_CASE("unicycle fields and flag") {
    auto u = trailer_fields(0);
    std::vector<double> p{0.3, -0.2, 0.0};
    CHECK(u.generators[0](p) == std::vector<double>{0, 0, 1});
    CHECK(u.generators[1](p) == std::vector<double>{1, 0, 0});
    auto g = oracle::rng(4);
    for (int k = 0; k < 20; ++k) {
        std::vector<double> q{oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2), oracle::uniform(g, -3, 3)};
        auto b = lie_bracket(u.generators[0], u.generators[1])(q);
        CHECK(std::abs(b[0] + std::sin(q[2])) < 1e-14);
        CHECK(std::abs(b[1] - std::cos(q[2])) < 1e-14);
        CHECK(derived_flag(u, q, 4).dims == std::vector<int>{2, 3});
    }
}

TEST_CASE("aligned trailer rolls straight") {
    auto d = trailer_fields(1);
    std::vector<double> p{0.1, 0.2, 0.7, 0.7};
    auto v = d.generators[1](p);
    CHECK(v[0] == doctest::Approx(std::cos(0.7)));
    CHECK(v[1] == doctest::Approx(std::sin(0.7)));
    CHECK(v[2] == 0.0);
    CHECK(v[3] == 0.0);
}

TEST_CASE("trailer flags are Goursat at generic points") {
    auto g = oracle::rng(5);
    for (int n = 0; n <= 3; ++n) {
        auto d = trailer_fields(n);
        for (int k = 0; k < 5; ++k) {
            auto p = oracle::generic_trailer_point(g, n);
            auto r = derived_flag(d, p, 8);
            CHECK(r.dims == goursat_sequence(n + 3, 8));
            CHECK(r.goursat);
        }
    }
}

TEST_CASE("five trailers with a hitch near the fold keep the full flag") {
    // relative angles -1.343, -0.609, 0.990, 1.128, -1.450
    std::vector<double> p{0.3, -0.8, 1.1};
    for (double rel : {-1.34309, -0.609307, 0.989789, 1.12823, -1.44993}) p.push_back(p.back() + rel);
    CHECK(derived_flag(trailer_fields(5), p, 8).dims == std::vector<int>{2, 3, 4, 5, 6, 7, 8});
}

TEST_CASE("commuting generators stop the flag") {
    auto dx = make_field(3, "dx", [](const auto& q) {
        using T = typename std::remove_cvref_t<decltype(q)>::value_type;
        return std::vector<T>{T(1.0), T(0.0), T(0.0)};
    });
    auto dy = make_field(3, "dy", [](const auto& q) {
        using T = typename std::remove_cvref_t<decltype(q)>::value_type;
        return std::vector<T>{T(0.0), T(1.0), q[0] - q[0]};
    });
    Distribution d{{dx, dy}, {"x", "y", "z"}};
    std::vector<double> p{0.7, -0.2, 1.5};
    auto r = derived_flag(d, p, 4);
    CHECK(r.dims == std::vector<int>{2, 2});
    CHECK_FALSE(r.goursat);
}

TEST_CASE("car flag is Engel") {
    auto car = car_fields(1.0);
    std::vector<double> o{0, 0, 0, 0};
    CHECK(derived_flag(car, o, 4).dims == std::vector<int>{2, 3, 4});
    auto g = oracle::rng(6);
    for (int k = 0; k < 100; ++k) {
        std::vector<double> p{oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3),
                              oracle::uniform(g, -0.78, 0.78)};
        CHECK(derived_flag(car, p, 4).dims == std::vector<int>{2, 3, 4});
    }
}

TEST_CASE("car chart is one larger than the unicycle chart") {
    for (int n = 0; n <= 4; ++n) CHECK(car_fields(1.0, n).dim() == trailer_fields(n).dim() + 1);
}

TEST_CASE("Goursat normal form") {
    auto d3 = goursat_normal_form(3);
    std::vector<double> p{0.4, 1.1, -0.3};
    CHECK(d3.generators[0](p) == std::vector<double>{0, 0, 1});
    CHECK(d3.generators[1](p) == std::vector<double>{1, -0.3, 0});
    CHECK(derived_flag(d3, p, 5).dims == std::vector<int>{2, 3});
    auto g = oracle::rng(7);
    for (int n : {4, 6}) {
        auto d = goursat_normal_form(n);
        std::vector<double> q(n);
        for (auto& x : q) x = oracle::uniform(g, -1, 1);
        CHECK(derived_flag(d, q, 8).dims == goursat_sequence(n, 8));
    }
    auto d6 = goursat_normal_form(6);
    std::vector<double> origin(6, 0.0);
    auto r = derived_flag(d6, origin, 8);
    CHECK(!r.dims.empty());
    CHECK(r.dims.front() == 2);
}

TEST_CASE("flag dims invariant under constant change of frame") {
    auto g = oracle::rng(8);
    auto d = trailer_fields(2);
    auto p = oracle::generic_trailer_point(g, 2);
    const auto base = derived_flag(d, p, 8).dims;
    double a = 0, b = 0, c = 0, e = 0;
    do {
        a = oracle::uniform(g, -2, 2), b = oracle::uniform(g, -2, 2), c = oracle::uniform(g, -2, 2),
        e = oracle::uniform(g, -2, 2);
    } while (std::abs(a * e - b * c) < 0.3);
    Distribution mixed{{linear_combination({a, b}, d.generators), linear_combination({c, e}, d.generators)},
                       d.coordinates};
    CHECK(derived_flag(mixed, p, 8).dims == base);
}

TEST_CASE("Cartan distribution") {
    auto g = oracle::rng(9);
    auto c1 = cartan_distribution(1);
    std::vector<double> p1{0.2, -0.5, 0.9};
    CHECK(derived_flag(c1, p1, 4).dims == std::vector<int>{2, 3});

    auto c4 = cartan_distribution(4);
    std::vector<double> p4(6);
    for (auto& x : p4) x = oracle::uniform(g, -1, 1);
    CHECK(derived_flag(c4, p4, 8).dims == std::vector<int>{2, 3, 4, 5, 6});

    // kernel fields are annihilated by the forms
    for (int s = 1; s <= 4; ++s) {
        auto d = cartan_distribution(s);
        for (int k = 0; k < 10; ++k) {
            std::vector<double> q(static_cast<std::size_t>(s + 2));
            for (auto& x : q) x = oracle::uniform(g, -2, 2);
            Eigen::MatrixXd a = cartan_forms(s, q);
            Eigen::MatrixXd f = d.frame(q);
            CHECK((a * f).cwiseAbs().maxCoeff() < 1e-14);
        }
    }

    // prolongation of f(t) = t^3 with s = 3 is tangent
    auto c3 = cartan_distribution(3);
    for (int k = 0; k < 100; ++k) {
        const double t = -2.0 + 4.0 * k / 99.0;
        std::vector<double> q{t, t * t * t, 3 * t * t, 6 * t, 6};
        Eigen::VectorXd tangent(5);
        tangent << 1, 3 * t * t, 6 * t, 6, 0;
        Eigen::VectorXd res = cartan_forms(3, q) * tangent;
        CHECK(res.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("forgetful projection") {
    std::vector<double> o{0, 0, 0, 0};
    auto r = forgetful_projection_check(o, 1.0);
    CHECK(r.residual < 1e-10);
    CHECK(r.projected_rank == 2);
    auto g = oracle::rng(10);
    for (int k = 0; k < 100; ++k) {
        std::vector<double> p{oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3),
                              oracle::uniform(g, -0.75, 0.75)};
        auto c = forgetful_projection_check(p, oracle::uniform(g, 0.5, 2.0));
        CHECK(c.residual < 1e-8);
        CHECK(c.projected_rank == 2);
    }
}
