#pragma once

// Inviscid Burgers flow ∂ₜu + (u·∇)u = 0 on [0, 2π)² and the Hamilton–Jacobi
// flow ∂ₜf = −½|∇f|² of its potential (mean-zero gauge).

#include <string>
#include <vector>

#include "nhm/numkit/spectral.hpp"
#include "nhm/numkit/stepper.hpp"
#include "nhm/trajectory/trajectory.hpp"

namespace nhm::masstransport {

struct Velocity {
    std::size_t n = 0;
    std::vector<double> ux, uy;
};

/// Energy fraction in the top third of the dealiased band that aborts a run.
inline constexpr double kTailAlarm = 1e-3;

/// −(u·∇)u, 2/3-dealiased.
Velocity burgers_rhs(const numkit::Spectral2D& sp, const Velocity& u);
/// −½|∇f|² with the mean removed, 2/3-dealiased.
std::vector<double> hj_rhs(const numkit::Spectral2D& sp, const std::vector<double>& f);

Velocity gradient(const numkit::Spectral2D& sp, const std::vector<double>& f);
/// max |∂₁u₂ − ∂₂u₁|.
double max_curl(const numkit::Spectral2D& sp, const Velocity& u);

struct FourierTerm {
    std::string field; // f, ux, uy
    int kx = 0, ky = 0;
    double amplitude = 0.0;
    double phase = 0.0;
};

/// Σ a·cos(kx x + ky y + phase) over the terms naming `field`.
std::vector<double> fourier_field(std::size_t n, const std::vector<FourierTerm>& terms, const std::string& field);

struct BurgersRun {
    /// Columns curl_max, tail, u_max.
    trajectory::Trajectory summary;
    Velocity final_velocity;
};

struct PotentialRun {
    /// Columns f_min, f_max, tail.
    trajectory::Trajectory summary;
    std::vector<double> final_potential;
};

/// Throws NonFinite when the spectral tail passes kTailAlarm (shock forming).
BurgersRun integrate_burgers(const Velocity& u0, double t0, double t1, const numkit::Stepper& stepper,
                             int record_every = 1);
PotentialRun integrate_hj(const std::vector<double>& f0, double t0, double t1, const numkit::Stepper& stepper,
                          int record_every = 1);

/// max over samples of the recorded curl.
double potentiality_check(const trajectory::Trajectory& burgers_summary);

} // namespace nhm::masstransport
