#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nhm/distributions/distributions.hpp"
#include "nhm/numkit/stepper.hpp"
#include "nhm/trajectory/trajectory.hpp"

namespace nhm::driving {

using distributions::VectorField;

/// A scalar control: constant, sine or piecewise constant in time.
struct ControlPrimitive {
    enum class Kind { Constant, Sine, Piecewise };
    Kind kind = Kind::Constant;
    double value = 0.0; // constant
    double amplitude = 0.0, frequency = 0.0, phase = 0.0, offset = 0.0; // offset + amplitude·sin(2πf t + phase)
    std::vector<double> breaks; // piecewise: values[k] on [breaks[k-1], breaks[k])
    std::vector<double> values;

    static ControlPrimitive constant(double v);
    static ControlPrimitive sine(double amplitude, double frequency, double phase = 0.0, double offset = 0.0);
    static ControlPrimitive piecewise(std::vector<double> breaks, std::vector<double> values);

    double operator()(double t) const;
};

/// u1 multiplies the first generator (turn/steer), u2 the second (drive).
struct ControlSignal {
    ControlPrimitive u1;
    ControlPrimitive u2;
};

enum class RigKind { Unicycle, Car };

struct RigSpec {
    RigKind kind = RigKind::Unicycle;
    int trailers = 0;
    double l = 1.0; // car wheelbase
};

distributions::Distribution rig_distribution(const RigSpec& rig);

/// Axle midpoints p₀ (last trailer) … pₙ (leader) with unit hitch spacing.
std::vector<std::array<double, 2>> axle_positions(std::span<const double> q, int trailers);

/// Transverse velocity of every axle contact point for chart velocity qdot;
/// for a car the front axle (steered by φ) is appended.
std::vector<double> axle_residuals(const RigSpec& rig, std::span<const double> q, std::span<const double> qdot);

/// q̇ = u1(t)·G₁(q) + u2(t)·G₂(q). Ledger: one transverse residual per axle
/// and their maximum.
trajectory::Trajectory simulate_rig(const RigSpec& rig, const ControlSignal& controls, std::span<const double> q0,
                                    double t0, double t1, const numkit::Stepper& stepper);

/// Flow of a field for signed time t with `steps` RK4 substeps.
std::vector<double> flow(const VectorField& f, std::span<const double> p, double t, int steps = 128);

struct Leg {
    VectorField field;
    double time;
};

/// Applies the legs in order, recording every substep when traj is given.
std::vector<double> run_legs(const std::vector<Leg>& legs, std::span<const double> p, int steps,
                             trajectory::Trajectory* traj = nullptr, double* clock = nullptr);

/// Legs of flow(−t,W)∘flow(−t,V)∘flow(t,W)∘flow(t,V) (V applied first).
std::vector<Leg> commutator_legs(const VectorField& v, const VectorField& w, double t);

/// Φ(p) for the commutator above; Φ(p) − p = t²[V,W](p) + O(t³).
std::vector<double> bracket_maneuver(const VectorField& v, const VectorField& w, std::span<const double> p, double t,
                                     int steps = 128);

struct ParkDemo {
    trajectory::Trajectory trajectory;
    std::vector<double> start;
    std::vector<double> end;
    double lateral = 0.0;           // |Δ(x, y)|
    double heading_error_deg = 0.0; // angle between Δ(x, y) and (sin θ₀, −cos θ₀)
    double angle_drift = 0.0;       // max(|Δθ|, |Δφ|)
};

/// Commutator of the drive flow (time t) with the turn maneuver
/// Φ_turn(t) = commutator of (steer, drive); net motion ≈ t³·park.
ParkDemo parallel_park_demo(double l, double t, double theta0 = 0.0, int steps = 128);

} // namespace nhm::driving
