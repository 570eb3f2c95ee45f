#include "nhm/driving/driving.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nhm/error.hpp"

namespace nhm::driving {

ControlPrimitive ControlPrimitive::constant(double v) {
    ControlPrimitive c;
    c.kind = Kind::Constant;
    c.value = v;
    return c;
}

ControlPrimitive ControlPrimitive::sine(double amplitude, double frequency, double phase, double offset) {
    ControlPrimitive c;
    c.kind = Kind::Sine;
    c.amplitude = amplitude;
    c.frequency = frequency;
    c.phase = phase;
    c.offset = offset;
    return c;
}

ControlPrimitive ControlPrimitive::piecewise(std::vector<double> breaks, std::vector<double> values) {
    if (values.size() != breaks.size() + 1)
        throw Error(ErrorKind::InvalidArgument, "piecewise control needs one more value than breakpoints");
    if (!std::is_sorted(breaks.begin(), breaks.end()))
        throw Error(ErrorKind::InvalidArgument, "piecewise breakpoints must be sorted");
    ControlPrimitive c;
    c.kind = Kind::Piecewise;
    c.breaks = std::move(breaks);
    c.values = std::move(values);
    return c;
}

double ControlPrimitive::operator()(double t) const {
    switch (kind) {
    case Kind::Constant: return value;
    case Kind::Sine: return offset + amplitude * std::sin(2.0 * std::numbers::pi * frequency * t + phase);
    case Kind::Piecewise: {
        const auto k = std::upper_bound(breaks.begin(), breaks.end(), t) - breaks.begin();
        return values[static_cast<std::size_t>(k)];
    }
    }
    return 0.0;
}

distributions::Distribution rig_distribution(const RigSpec& rig) {
    return rig.kind == RigKind::Car ? distributions::car_fields(rig.l, rig.trailers)
                                    : distributions::trailer_fields(rig.trailers);
}

std::vector<std::array<double, 2>> axle_positions(std::span<const double> q, int trailers) {
    std::vector<std::array<double, 2>> p{{q[0], q[1]}};
    for (int i = 1; i <= trailers; ++i) {
        const double th = q[static_cast<std::size_t>(1 + i)];
        p.push_back({p.back()[0] + std::cos(th), p.back()[1] + std::sin(th)});
    }
    return p;
}

std::vector<double> axle_residuals(const RigSpec& rig, std::span<const double> q, std::span<const double> qdot) {
    std::vector<double> out;
    double vx = qdot[0], vy = qdot[1];
    for (int i = 0; i <= rig.trailers; ++i) {
        const auto k = static_cast<std::size_t>(2 + i);
        if (i > 0) {
            // p_i = p_{i-1} + (cos θ_{i-1}, sin θ_{i-1})
            const double prev = q[k - 1], w = qdot[k - 1];
            vx += -w * std::sin(prev);
            vy += w * std::cos(prev);
        }
        out.push_back(vx * std::sin(q[k]) - vy * std::cos(q[k]));
    }
    if (rig.kind == RigKind::Car) {
        const auto k = static_cast<std::size_t>(2 + rig.trailers);
        const double th = q[k], w = qdot[k], phi = q[k + 1];
        const double fx = vx - rig.l * w * std::sin(th), fy = vy + rig.l * w * std::cos(th);
        out.push_back(fx * std::sin(th + phi) - fy * std::cos(th + phi));
    }
    return out;
}

trajectory::Trajectory simulate_rig(const RigSpec& rig, const ControlSignal& controls, std::span<const double> q0,
                                    double t0, double t1, const numkit::Stepper& stepper) {
    const auto dist = rig_distribution(rig);
    const int dim = dist.dim();
    if (q0.size() != static_cast<std::size_t>(dim))
        throw Error(ErrorKind::DimensionMismatch, "initial configuration has the wrong dimension");
    const auto& g1 = dist.generators[0];
    const auto& g2 = dist.generators[1];

    auto velocity = [&](double t, std::span<const double> q, std::span<double> dq) {
        const auto a = g1(q);
        const auto b = g2(q);
        const double u1 = controls.u1(t), u2 = controls.u2(t);
        for (int i = 0; i < dim; ++i)
            dq[static_cast<std::size_t>(i)] = u1 * a[static_cast<std::size_t>(i)] + u2 * b[static_cast<std::size_t>(i)];
    };

    std::vector<std::string> ledger;
    for (int i = 0; i <= rig.trailers; ++i) ledger.push_back("residual_axle" + std::to_string(i));
    if (rig.kind == RigKind::Car) ledger.push_back("residual_front");
    ledger.push_back("residual_max");

    trajectory::Trajectory traj(rig.kind == RigKind::Car ? "car" : "trailer", dist.coordinates, ledger);
    traj.meta()["trailers"] = rig.trailers;
    traj.meta()["l"] = rig.l;
    traj.meta()["stepper"] = numkit::describe(stepper);

    std::vector<double> dq(static_cast<std::size_t>(dim));
    auto record = [&](double t, std::span<const double> q) {
        velocity(t, q, dq);
        auto r = axle_residuals(rig, q, dq);
        double m = 0.0;
        for (double v : r) m = std::max(m, std::abs(v));
        r.push_back(m);
        traj.append(t, q, r);
        return true;
    };
    std::vector<double> q(q0.begin(), q0.end());
    numkit::integrate(velocity, t0, t1, q, stepper, record);
    return traj;
}

std::vector<double> flow(const VectorField& f, std::span<const double> p, double t, int steps) {
    std::vector<double> y(p.begin(), p.end());
    if (t == 0.0) return y;
    if (steps < 1) throw Error(ErrorKind::InvalidArgument, "flow needs at least one step");
    const double sign = t > 0 ? 1.0 : -1.0;
    auto rhs = [&](double, std::span<const double> q, std::span<double> d) {
        const auto v = f(q);
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = sign * v[i];
    };
    numkit::integrate(rhs, 0.0, std::abs(t), y, numkit::Rk4Fixed{std::abs(t) / steps});
    return y;
}

std::vector<double> run_legs(const std::vector<Leg>& legs, std::span<const double> p, int steps,
                             trajectory::Trajectory* traj, double* clock) {
    std::vector<double> y(p.begin(), p.end());
    double local = 0.0;
    double& now = clock ? *clock : local;
    if (traj && traj->empty()) traj->append(now, y, std::vector<double>{0.0});
    for (std::size_t k = 0; k < legs.size(); ++k) {
        const auto& leg = legs[k];
        if (leg.time == 0.0) continue;
        const double h = leg.time / steps;
        for (int s = 0; s < steps; ++s) {
            y = flow(leg.field, y, h, 1);
            if (traj) {
                now += std::abs(h);
                traj->append(now, y, std::vector<double>{static_cast<double>(k + 1)});
            }
        }
    }
    return y;
}

std::vector<Leg> commutator_legs(const VectorField& v, const VectorField& w, double t) {
    return {{v, t}, {w, t}, {v, -t}, {w, -t}};
}

std::vector<double> bracket_maneuver(const VectorField& v, const VectorField& w, std::span<const double> p, double t,
                                     int steps) {
    return run_legs(commutator_legs(v, w, t), p, steps);
}

ParkDemo parallel_park_demo(double l, double t, double theta0, int steps) {
    const auto car = distributions::car_fields(l);
    const auto& steer = car.generators[0];
    const auto& drive = car.generators[1];
    // Φ_turn(t) and its inverse, then the outer commutator with drive
    auto turn = commutator_legs(steer, drive, t);
    const std::vector<Leg> turn_inverse{{drive, t}, {steer, t}, {drive, -t}, {steer, -t}};
    std::vector<Leg> legs{{drive, t}};
    legs.insert(legs.end(), turn.begin(), turn.end());
    legs.push_back({drive, -t});
    legs.insert(legs.end(), turn_inverse.begin(), turn_inverse.end());

    ParkDemo demo;
    demo.trajectory = trajectory::Trajectory("park", car.coordinates, {"leg"});
    demo.trajectory.meta()["l"] = l;
    demo.trajectory.meta()["t"] = t;
    demo.start = {0.0, 0.0, theta0, 0.0};
    double clock = 0.0;
    demo.end = run_legs(legs, demo.start, steps, &demo.trajectory, &clock);

    const double dx = demo.end[0] - demo.start[0], dy = demo.end[1] - demo.start[1];
    demo.lateral = std::hypot(dx, dy);
    const double ex = std::sin(theta0), ey = -std::cos(theta0);
    const double cosang = demo.lateral > 0 ? std::clamp((dx * ex + dy * ey) / demo.lateral, -1.0, 1.0) : -1.0;
    demo.heading_error_deg = std::acos(cosang) * 180.0 / std::numbers::pi;
    demo.angle_drift = std::max(std::abs(demo.end[2] - demo.start[2]), std::abs(demo.end[3] - demo.start[3]));
    return demo;
}

} // namespace nhm::driving
