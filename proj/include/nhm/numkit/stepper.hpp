#pragma once

#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace nhm::numkit {

/// Classical fixed-step fourth-order Runge–Kutta.
struct Rk4Fixed {
    double dt = 1e-3;
};

/// Dormand–Prince 5(4) with per-component error control
/// |err_i| ≤ atol + rtol·max(|y_i|, |y_new_i|).
struct Rk45Adaptive {
    double atol = 1e-10;
    double rtol = 1e-10;
    double dt_min = 1e-12;
    double dt_max = 1e-1;
    double dt_initial = 1e-3;
};

using Stepper = std::variant<Rk4Fixed, Rk45Adaptive>;

std::string describe(const Stepper& stepper);

/// dy/dt = f(t, y), written into dydt.
using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

struct StepResult {
    std::vector<double> state;
    double dt_used = 0.0;
    /// Suggested size of the next step (equals dt_used for fixed steps).
    double dt_next = 0.0;
};

/// One accepted step from (t, y). Adaptive mode starts from dt_hint (or the
/// stepper's dt_initial when dt_hint ≤ 0) and shrinks until the error test
/// passes. Throws NonFinite or StepSizeUnderflow.
StepResult step(const Rhs& rhs, double t, std::span<const double> y, const Stepper& stepper, double dt_hint = 0.0);

/// Called at t0 and after every accepted step; returning false stops the run.
using Observer = std::function<bool(double t, std::span<const double> y)>;

/// Applied to the state after every accepted step (e.g. back onto a constraint manifold).
using Projection = std::function<void(std::span<double> y)>;

/// Integrates y in place over [t0, t1]. Fixed-step mode uses
/// t_k = t0 + k·dt (no running sum) and shortens only the final step when
/// dt does not divide the span. Returns the final time reached.
double integrate(const Rhs& rhs, double t0, double t1, std::vector<double>& y, const Stepper& stepper,
                 const Observer& observer = {}, const Projection& project = {});

/// integrate() that calls record at t0, after every record_every-th fixed
/// step and at t1. Adaptive runs record every accepted step.
double integrate_sampled(const Rhs& rhs, double t0, double t1, std::vector<double>& y, const Stepper& stepper,
                         int record_every, const std::function<void(double, std::span<const double>)>& record,
                         const Projection& project = {});

/// Throws NonFinite if any entry is NaN or infinite.
void require_finite(std::span<const double> values, const char* what);

} // namespace nhm::numkit
