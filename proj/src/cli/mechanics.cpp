#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "nhm/distributions/distributions.hpp"
#include "nhm/driving/driving.hpp"
#include "nhm/error.hpp"
#include "nhm/liealg/liealg.hpp"
#include "nhm/skate/skate.hpp"
#include "nhm/snake/snake.hpp"
#include "runners.hpp"

namespace nhm::cli {

namespace {

using trajectory::Trajectory;

OutFile csv_file(const std::string& name, const Trajectory& t) { return {name + ".csv", "csv", trajectory::to_csv(t)}; }

OutFile svg_file(const std::string& name, const Trajectory& t, const trajectory::PlotSpec& spec) {
    return {name + ".svg", "svg", trajectory::to_svg(t, spec)};
}

// ---------------------------------------------------------------- skate

RunOutput run_skate(RunContext& c) {
    auto& P = c.params;
    const auto sys = skate::skate_system_from_string(P.choice("system", "reduced", {"reduced", "lda", "regularized"}));
    skate::SkateParams p;
    p.g = P.non_negative("g", 1.0);
    p.mu = P.non_negative("mu", 0.0);
    p.nu = P.positive("nu", 0.1);
    p.alpha = P.positive("alpha", 0.1);
    P.finish();

    auto init = skate::figure_initial();
    auto& I = c.initial;
    init.x = I.number("x", init.x);
    init.y = I.number("y", init.y);
    init.theta = I.number("theta", init.theta);
    init.v = I.number("v", init.v);
    init.omega = I.number("omega", init.omega);
    init.lambda = I.number("lambda", init.lambda);
    I.finish();

    auto traj = skate::integrate_skate(sys, init, p, c.cfg.t0, c.cfg.t1, c.cfg.stepper, c.cfg.record_every);
    RunOutput out;
    out.metrics["energy_rel_drift"] = rel_drift(traj.column("energy"));
    if (sys == skate::SkateSystem::Lda) {
        auto th = traj.column("theta"), rho = traj.column("rho");
        double err = 0.0;
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const auto [a, b] = skate::lda_closed_form(init, p.g, traj.times()[i] - c.cfg.t0);
            err = std::max({err, std::abs(th[i] - a), std::abs(rho[i] - b)});
        }
        out.metrics["closed_form_error"] = err;
    }
    if (sys == skate::SkateSystem::Regularized) {
        out.metrics["energy_rel_drift"] = rel_drift(traj.column("energy_nu"));
        out.metrics["phi_max"] = max_abs(traj.column("phi"));
    }
    out.summary["final"] = final_row(traj);
    out.summary["ledger"] = ledger_extremes(traj);
    out.files.push_back(csv_file("skate", traj));
    trajectory::PlotSpec spec;
    spec.title = "skate (" + skate::to_string(sys) + ", g=" + trajectory::format_double(p.g) +
                 (sys == skate::SkateSystem::Reduced ? ", mu=" + trajectory::format_double(p.mu) : "") + ")";
    out.files.push_back(svg_file("skate", traj, spec));
    return out;
}

// ---------------------------------------------------------------- rigs

driving::ControlPrimitive parse_control(Section s, double fallback) {
    const auto kind = s.choice("kind", "constant", {"constant", "sine", "piecewise"});
    driving::ControlPrimitive u;
    if (kind == "constant") {
        u = driving::ControlPrimitive::constant(s.number("value", fallback));
    } else if (kind == "sine") {
        const double a = s.number("amplitude", 1.0), f = s.number("frequency", 1.0);
        const double ph = s.number("phase", 0.0), off = s.number("offset", 0.0);
        u = driving::ControlPrimitive::sine(a, f, ph, off);
    } else {
        auto breaks = s.numbers("breaks", {});
        auto values = s.numbers("values", {});
        if (values.size() != breaks.size() + 1) s.fail("values", "must have one more entry than breaks");
        u = driving::ControlPrimitive::piecewise(breaks, values);
    }
    s.finish();
    return u;
}

std::vector<double> chart_point(Section& I, const std::string& key, std::size_t dim) {
    auto q = I.numbers(key, std::vector<double>(dim, 0.0));
    if (q.size() != dim) I.fail(key, "must have " + std::to_string(dim) + " entries");
    return q;
}

json flag_json(const distributions::FlagReport& r, std::size_t chart) {
    json j = distributions::to_json(r);
    j["expected"] = distributions::goursat_sequence(static_cast<int>(chart), static_cast<int>(r.dims.size()) - 1);
    return j;
}

std::vector<trajectory::Overlay> axle_overlays(const Trajectory& traj, int trailers) {
    std::vector<trajectory::Overlay> ov(static_cast<std::size_t>(trailers) + 1);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        auto axles = driving::axle_positions(traj.state(i), trailers);
        for (std::size_t a = 0; a < axles.size(); ++a) {
            ov[a].xs.push_back(axles[a][0]);
            ov[a].ys.push_back(axles[a][1]);
        }
    }
    for (std::size_t a = 0; a < ov.size(); ++a) {
        ov[a].stroke = a + 1 == ov.size() ? "#c0392b" : "#7f8c8d";
        ov[a].opacity = 0.8;
    }
    return ov;
}

RunOutput run_trailer(RunContext& c) {
    auto& P = c.params;
    const int n = P.integer_at_least("trailers", 3, 0);
    driving::ControlSignal u{parse_control(P.child("u1"), 0.0), parse_control(P.child("u2"), 1.0)};
    const double tol = P.positive("rank_tol", 1e-8);
    P.finish();
    driving::RigSpec rig{driving::RigKind::Unicycle, n, 1.0};
    auto q0 = chart_point(c.initial, "q", static_cast<std::size_t>(n) + 3);
    c.initial.finish();

    auto traj = driving::simulate_rig(rig, u, q0, c.cfg.t0, c.cfg.t1, c.cfg.stepper);
    const auto dist = driving::rig_distribution(rig);
    const auto flag = distributions::derived_flag(dist, q0, n + 2, tol);
    RunOutput out;
    out.metrics["residual_max"] = max_abs(traj.column("residual_max"));
    out.metrics["goursat_defect"] = flag.goursat ? 0.0 : 1.0;
    out.summary["final"] = final_row(traj);
    out.summary["ledger"] = ledger_extremes(traj);
    out.summary["flag"] = flag_json(flag, q0.size());
    out.files.push_back(csv_file("trailer", traj));
    trajectory::PlotSpec spec;
    spec.title = std::to_string(n) + "-trailer";
    spec.overlays = axle_overlays(traj, n);
    out.files.push_back(svg_file("trailer", traj, spec));
    return out;
}

RunOutput run_car(RunContext& c) {
    auto& P = c.params;
    const double l = P.positive("l", 1.0);
    const auto mode = P.choice("mode", "park", {"park", "drive"});
    const double tol = P.positive("rank_tol", 1e-8);
    RunOutput out;
    if (mode == "park") {
        const double t = P.positive("maneuver_time", 0.1);
        const int steps = P.integer_at_least("steps", 128, 1);
        const double theta0 = c.initial.number("theta", 0.0);
        P.finish();
        c.initial.finish();
        auto demo = driving::parallel_park_demo(l, t, theta0, steps);
        const auto flag = distributions::derived_flag(distributions::car_fields(l), demo.start, 3, tol);
        out.metrics["lateral"] = demo.lateral;
        out.metrics["heading_error_deg"] = demo.heading_error_deg;
        out.metrics["angle_drift"] = demo.angle_drift;
        out.metrics["flag_defect"] = flag.goursat ? 0.0 : 1.0;
        out.summary["final"] = final_row(demo.trajectory);
        out.summary["flag"] = flag_json(flag, 4);
        out.summary["park"] = {{"lateral", demo.lateral},
                               {"heading_error_deg", demo.heading_error_deg},
                               {"angle_drift", demo.angle_drift}};
        out.files.push_back(csv_file("car", demo.trajectory));
        trajectory::PlotSpec spec;
        spec.title = "parallel park";
        out.files.push_back(svg_file("car", demo.trajectory, spec));
        return out;
    }
    const int n = P.integer_at_least("trailers", 0, 0);
    driving::ControlSignal u{parse_control(P.child("u1"), 0.0), parse_control(P.child("u2"), 1.0)};
    P.finish();
    driving::RigSpec rig{driving::RigKind::Car, n, l};
    auto q0 = chart_point(c.initial, "q", static_cast<std::size_t>(n) + 4);
    c.initial.finish();
    auto traj = driving::simulate_rig(rig, u, q0, c.cfg.t0, c.cfg.t1, c.cfg.stepper);
    const auto flag = distributions::derived_flag(driving::rig_distribution(rig), q0, n + 3, tol);
    out.metrics["residual_max"] = max_abs(traj.column("residual_max"));
    out.metrics["flag_defect"] = flag.goursat ? 0.0 : 1.0;
    out.summary["final"] = final_row(traj);
    out.summary["ledger"] = ledger_extremes(traj);
    out.summary["flag"] = flag_json(flag, q0.size());
    out.files.push_back(csv_file("car", traj));
    trajectory::PlotSpec spec;
    spec.title = "car";
    spec.overlays = axle_overlays(traj, n);
    out.files.push_back(svg_file("car", traj, spec));
    return out;
}

RunOutput run_flag(RunContext& c) {
    auto& P = c.params;
    const auto family = P.choice("family", "trailer", {"trailer", "car", "goursat", "cartan"});
    const int n = P.integer_at_least("n", 3, 0);
    const int points = P.integer_at_least("points", 20, 1);
    const double tol = P.positive("rank_tol", 1e-8);
    const double l = P.positive("l", 1.0);
    P.finish();
    c.initial.finish();

    distributions::Distribution d;
    if (family == "trailer") d = distributions::trailer_fields(n);
    else if (family == "car") d = distributions::car_fields(l, n);
    else if (family == "goursat") {
        if (n < 3) throw Error(ErrorKind::Config, "params.n must be >= 3 for the goursat family");
        d = distributions::goursat_normal_form(n);
    } else {
        if (n < 1) throw Error(ErrorKind::Config, "params.n must be >= 1 for the cartan family");
        d = distributions::cartan_distribution(n);
    }
    const std::size_t dim = d.coordinates.size();
    const int depth = static_cast<int>(dim) - 2;
    const auto expected = distributions::goursat_sequence(static_cast<int>(dim), depth);

    std::mt19937_64 rng(c.cfg.seed);
    std::uniform_real_distribution<double> coord(-3.0, 3.0), steer(-0.7, 0.7), hitch(-1.4, 1.4);
    std::vector<std::string> cols = d.coordinates;
    for (int i = 0; i <= depth; ++i) cols.push_back("dim" + std::to_string(i));
    Trajectory table("flag", cols, {"goursat"});
    int failures = 0;
    json first;
    for (int k = 0; k < points; ++k) {
        std::vector<double> p(dim);
        for (std::size_t i = 0; i < dim; ++i) p[i] = coord(rng);
        // hitch angles stay clear of ±π/2, where the rig is singular
        if (family == "trailer" || family == "car")
            for (int k = 1; k <= n; ++k) p[static_cast<std::size_t>(2 + k)] = p[static_cast<std::size_t>(1 + k)] + hitch(rng);
        if (family == "car") p.back() = steer(rng);
        auto r = distributions::derived_flag(d, p, depth, tol);
        std::vector<double> row(p);
        for (int i = 0; i <= depth; ++i)
            row.push_back(i < static_cast<int>(r.dims.size()) ? r.dims[static_cast<std::size_t>(i)] : -1.0);
        const bool ok = r.dims == expected;
        if (!ok) ++failures;
        table.append(static_cast<double>(k), row, std::vector<double>{ok ? 1.0 : 0.0});
        if (k == 0) first = flag_json(r, dim);
    }
    RunOutput out;
    out.metrics["goursat_failures"] = failures;
    out.summary["family"] = family;
    out.summary["chart"] = d.coordinates;
    out.summary["expected"] = expected;
    out.summary["first_point"] = first;
    out.summary["points"] = points;
    out.summary["goursat_failures"] = failures;
    // t is the point index
    out.files.push_back(csv_file("flag", table));
    return out;
}

// ---------------------------------------------------------------- snake

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

std::vector<double> time_grid(double t0, double t1, double dt) {
    std::vector<double> ts;
    const auto k = static_cast<long>(std::floor((t1 - t0) / dt + 1e-9));
    for (long i = 0; i <= k; ++i) ts.push_back(t0 + static_cast<double>(i) * dt);
    if (t1 - ts.back() > 1e-9 * dt) ts.push_back(t1);
    return ts;
}

std::vector<std::array<double, 2>> to_points(const snake::SnakeState& s) { return {s.z.begin(), s.z.end()}; }

std::string frame_name(std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "frames/frame_%04zu.csv", k);
    return buf;
}

RunOutput run_snake(RunContext& c) {
    auto& P = c.params;
    auto H = P.child("head");
    const auto kind = H.choice("kind", "sine", {"sine", "circle"});
    std::function<snake::Point(double)> curve;
    double p1 = 0.0;
    if (kind == "sine") {
        const double a = H.number("amplitude", 0.3), lambda = H.positive("wavelength", 2.0);
        p1 = H.positive("length", 10.0);
        curve = [a, lambda](double x) { return snake::Point{x, a * std::sin(2 * std::numbers::pi * x / lambda)}; };
    } else {
        const double r = H.positive("radius", 1.0), turns = H.positive("turns", 1.0);
        p1 = 2 * std::numbers::pi * turns;
        curve = [r](double p) { return snake::Point{r * std::sin(p), r * (1 - std::cos(p))}; };
    }
    const int knots = H.integer_at_least("knots", 4001, 5);
    H.finish();
    const double L = P.positive("length", 1.0);
    const double speed = P.positive("speed", 1.0);
    const double start = P.non_negative("start", 0.5);
    const int samples = P.integer_at_least("string_samples", 51, 2);
    const double frame_dt = P.positive("frame_dt", 0.1);
    P.finish();
    c.initial.finish();

    const auto head = snake::HeadPath::from_function(curve, 0.0, p1, static_cast<std::size_t>(knots));
    const double t0 = c.cfg.t0;
    // the collinearity probe differences f over ±kProbe
    constexpr double kProbe = 1e-4;
    if (start < 2 * speed * kProbe) throw Error(ErrorKind::Config, "params.start must leave slack behind the string");
    if (L + start + speed * (c.cfg.t1 - t0 + 2 * kProbe) > head.length())
        throw Error(ErrorKind::Config, "params.head is too short for length + start + speed*(t1 - t0)");
    snake::Offset f = [=](double t) { return L + start + speed * (t - t0); };
    const auto ts = time_grid(c.cfg.t0, c.cfg.t1, frame_dt);
    const auto ss = linspace(0.0, L, static_cast<std::size_t>(samples));
    auto frames = snake::snake_evolve(head, f, ts, ss);

    Trajectory traj("snake", {"head_x", "head_y", "tail_x", "tail_y"}, {"collinearity"});
    RunOutput out;
    double worst = 0.0;
    for (const auto& fr : frames) {
        const double r = snake::collinearity_residual(head, f, fr.t, kProbe, ss);
        worst = std::max(worst, r);
        const auto& a = fr.z.front();
        const auto& b = fr.z.back();
        traj.append(fr.t, std::vector<double>{a[0], a[1], b[0], b[1]}, std::vector<double>{r});
    }
    out.metrics["collinearity_max"] = worst;
    out.summary["final"] = final_row(traj);
    out.summary["ledger"] = ledger_extremes(traj);
    out.summary["head_length"] = head.length();
    out.files.push_back(csv_file("snake", traj));
    std::vector<std::vector<std::array<double, 2>>> pts;
    for (std::size_t k = 0; k < frames.size(); ++k) {
        out.files.push_back({frame_name(k), "csv", snake::frame_csv(frames[k])});
        pts.push_back(to_points(frames[k]));
    }
    trajectory::Overlay track;
    for (double p : linspace(0.0, p1, 801)) {
        const auto q = curve(p);
        track.xs.push_back(q[0]);
        track.ys.push_back(q[1]);
    }
    track.stroke = "#bbbbbb";
    out.files.push_back({"snake.svg", "svg", timelapse_svg(pts, "snake", {track})});
    return out;
}

RunOutput run_sleigh(RunContext& c) {
    auto& P = c.params;
    const double L = P.positive("length", 0.2);
    snake::SleighOptions opt;
    opt.string_samples = static_cast<std::size_t>(P.integer_at_least("string_samples", 101, 2));
    opt.frame_dt = P.positive("frame_dt", opt.frame_dt);
    opt.head_spacing = P.positive("head_spacing", opt.head_spacing);
    P.finish();
    auto& I = c.initial;
    const double v0 = I.number("v", 1.0), omega0 = I.number("omega", -10.0);
    opt.theta0 = I.number("theta", 0.0);
    I.finish();
    if (v0 == 0.0) throw Error(ErrorKind::Config, "initial.v must be nonzero");

    auto res = snake::sleigh_with_string(v0, omega0, L, c.cfg.t0, c.cfg.t1, c.cfg.stepper, opt);
    const auto& tr = res.sleigh;
    const auto s0 = tr.state(0);
    const double x0 = s0[0], y0 = s0[1], th0 = s0[2];
    const double speed = std::abs(v0);
    // string-free motion of the contact point; straight run before t0
    auto sleigh_at = [&](double tau) -> std::array<double, 2> {
        if (tau <= c.cfg.t0) {
            const double back = v0 * (tau - c.cfg.t0);
            return {x0 + back * std::cos(th0), y0 + back * std::sin(th0)};
        }
        if (omega0 == 0.0) return {x0 + v0 * (tau - c.cfg.t0) * std::cos(th0), y0 + v0 * (tau - c.cfg.t0) * std::sin(th0)};
        const double th = th0 + omega0 * (tau - c.cfg.t0);
        return {x0 + v0 / omega0 * (std::sin(th) - std::sin(th0)), y0 - v0 / omega0 * (std::cos(th) - std::cos(th0))};
    };
    double delay = 0.0, circle = 0.0;
    const double cx = x0 - v0 / omega0 * std::sin(th0), cy = y0 + v0 / omega0 * std::cos(th0);
    const double R = std::abs(v0 / omega0);
    for (const auto& fr : res.frames)
        for (std::size_t k = 0; k < fr.s.size(); ++k) {
            const auto e = sleigh_at(fr.t - fr.s[k] / speed);
            delay = std::max(delay, std::hypot(fr.z[k][0] - e[0], fr.z[k][1] - e[1]));
            if (omega0 != 0.0 && fr.t > c.cfg.t0 + L / speed)
                circle = std::max(circle, std::abs(std::hypot(fr.z[k][0] - cx, fr.z[k][1] - cy) - R));
        }
    RunOutput out;
    out.metrics["delay_error"] = delay;
    if (omega0 != 0.0) out.metrics["circle_distance"] = circle;
    out.metrics["energy_rel_drift"] = rel_drift(tr.column("energy"));
    out.summary["final"] = final_row(tr);
    out.summary["ledger"] = ledger_extremes(tr);
    out.summary["frames"] = res.frames.size();
    out.files.push_back(csv_file("sleigh", tr));
    std::vector<std::vector<std::array<double, 2>>> pts;
    for (std::size_t k = 0; k < res.frames.size(); ++k) {
        out.files.push_back({frame_name(k), "csv", snake::frame_csv(res.frames[k])});
        pts.push_back(to_points(res.frames[k]));
    }
    trajectory::Overlay path{tr.column("x"), tr.column("y"), "#c0392b", 0.5, 1.0};
    out.files.push_back({"sleigh.svg", "svg", timelapse_svg(pts, "sleigh with string", {path})});
    return out;
}

// ---------------------------------------------------------------- so(3)

liealg::Mat3 parse_mat3(Section& s, const std::string& key, const liealg::Mat3& fallback) {
    auto v = s.numbers(key, {});
    if (v.empty()) return fallback;
    liealg::Mat3 m = liealg::Mat3::Zero();
    if (v.size() == 3) m.diagonal() << v[0], v[1], v[2];
    else if (v.size() == 9)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = v[static_cast<std::size_t>(3 * i + j)];
    else s.fail(key, "must hold 3 (diagonal) or 9 (row-major) numbers");
    return m;
}

RunOutput run_euler_suslov(RunContext& c) {
    auto& P = c.params;
    const auto kind = P.choice("flow", "euler_arnold", {"euler_arnold", "eps"});
    liealg::LieFlow flow;
    if (kind == "euler_arnold") {
        flow = liealg::LieFlow::euler_arnold(parse_mat3(P, "B", liealg::Vec3(1.0, 0.5, 1.0 / 3.0).asDiagonal()));
    } else {
        std::vector<liealg::Vec3> cs;
        if (auto raw = P.raw("constraints")) {
            if (!raw->is_array()) P.fail("constraints", "must be an array of 3-vectors");
            for (const auto& a : *raw) {
                if (!a.is_array() || a.size() != 3) P.fail("constraints", "entries must be 3-vectors");
                cs.emplace_back(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
            }
        } else {
            cs.emplace_back(0.0, 0.0, 1.0);
        }
        flow = liealg::LieFlow::eps(parse_mat3(P, "A", liealg::Vec3(1.0, 2.0, 3.0).asDiagonal()), cs);
    }
    P.finish();
    auto m = c.initial.numbers("m", {0.05, 1.0, 0.05});
    if (m.size() != 3) c.initial.fail("m", "must have 3 entries");
    c.initial.finish();
    liealg::validate(flow);

    auto traj = liealg::integrate_lie(flow, liealg::Vec3(m[0], m[1], m[2]), c.cfg.t0, c.cfg.t1, c.cfg.stepper,
                                      c.cfg.record_every);
    RunOutput out;
    out.metrics["energy_rel_drift"] = rel_drift(traj.column("energy"));
    out.metrics["casimir_rel_drift"] = rel_drift(traj.column("casimir"));
    if (kind == "eps") {
        double d = 0.0;
        for (std::size_t i = 0; i < flow.constraints.size(); ++i) {
            auto v = traj.column("constraint" + std::to_string(i + 1));
            for (double x : v) d = std::max(d, std::abs(x - v[0]));
        }
        out.metrics["constraint_drift"] = d;
    }
    out.summary["final"] = final_row(traj);
    out.summary["ledger"] = ledger_extremes(traj);
    out.files.push_back(csv_file("euler_suslov", traj));
    trajectory::PlotSpec spec{"m1", "m2", kind == "eps" ? "Euler-Poincare-Suslov" : "Euler-Arnold", true, {}};
    out.files.push_back(svg_file("euler_suslov", traj, spec));
    return out;
}

} // namespace

std::vector<Subcommand> mechanics_subcommands() {
    return {
        {"skate", "Skate on an inclined plane: reduced mu-family, its Lagrange-d'Alembert limit, or the regularized system",
         "CSV skate.csv: t,x,y,theta,omega,rho,lambda,energy (reduced); t,x,y,theta,omega,rho,energy (lda);\n"
         "  t,x,y,theta,vx,vy,omega,energy,energy_nu,phi,rayleigh (regularized)\n"
         "params: system (reduced|lda|regularized), g, mu, nu, alpha; initial: x, y, theta, v, omega, lambda",
         {"energy_rel_drift", "closed_form_error", "phi_max"}, run_skate},
        {"trailer", "Unicycle towing n trailers under open-loop controls; derived flag at the start point",
         "CSV trailer.csv: t,x,y,theta0..thetaN,residual_axle0..residual_axleN,residual_max\n"
         "params: trailers, u1, u2 (controls), rank_tol; initial: q",
         {"residual_max", "goursat_defect"}, run_trailer},
        {"car", "Kinematic car: parallel-park commutator maneuver (mode park) or open-loop drive",
         "CSV car.csv: t,x,y,theta,phi,leg (park); t,x,y,theta0..,phi,residual_axle*,residual_front,residual_max (drive)\n"
         "params: l, mode (park|drive), maneuver_time, steps, trailers, u1, u2, rank_tol; initial: theta (park) or q",
         {"lateral", "heading_error_deg", "angle_drift", "flag_defect", "residual_max"}, run_car},
        {"flag", "Derived-flag dimensions of a distribution at random points (--seed)",
         "CSV flag.csv: t (point index),<chart coordinates>,dim0..dimK,goursat\n"
         "params: family (trailer|car|goursat|cartan), n, points, rank_tol, l",
         {"goursat_failures"}, run_flag},
        {"snake", "Unstretchable string sliding along a prescribed head path",
         "CSV snake.csv: t,head_x,head_y,tail_x,tail_y,collinearity; frames/frame_NNNN.csv: s,x,y\n"
         "params: head {kind sine|circle, amplitude, wavelength, length, radius, turns, knots}, length, speed, start,\n"
         "  string_samples, frame_dt",
         {"collinearity_max"}, run_snake},
        {"sleigh", "Sleigh towing a string laid along its own track",
         "CSV sleigh.csv: t,x,y,theta,omega,rho,energy; frames/frame_NNNN.csv: s,x,y\n"
         "params: length, string_samples, frame_dt, head_spacing; initial: v, omega, theta",
         {"delay_error", "circle_distance", "energy_rel_drift"}, run_sleigh},
        {"euler-suslov", "Euler-Arnold and Euler-Poincare-Suslov flows on so(3)*",
         "CSV euler_suslov.csv: t,m1,m2,m3,energy,casimir[,constraint1..,lambda1..]\n"
         "params: flow (euler_arnold|eps), B or A (3 diagonal or 9 row-major numbers), constraints; initial: m",
         {"energy_rel_drift", "casimir_rel_drift", "constraint_drift"}, run_euler_suslov},
    };
}

} // namespace nhm::cli
