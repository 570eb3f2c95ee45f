#pragma once

// Skate on an inclined plane, gravity g along −x. Three systems share one
// initial-data record: the reduced μ-family (state x, y, θ, ω, ρ, λ), its
// μ → ∞ limit (x, y, θ, ω, ρ) and the regularized unconstrained system
// (x, y, θ, ẋ, ẏ, θ̇) with ν, α.

#include <span>
#include <string>
#include <vector>

#include "nhm/numkit/stepper.hpp"
#include "nhm/trajectory/trajectory.hpp"

namespace nhm::skate {

struct SkateParams {
    double g = 1.0;
    double mu = 0.0;
    double nu = 0.1;
    double alpha = 0.1;
};

enum class SkateSystem { Reduced, Lda, Regularized };

std::string to_string(SkateSystem s);
SkateSystem skate_system_from_string(const std::string& s);

inline constexpr std::size_t kReducedSize = 6;
inline constexpr std::size_t kLdaSize = 5;
inline constexpr std::size_t kRegularizedSize = 6;

/// (ẋ, ẏ, θ̇, ω̇, ρ̇, λ̇) = (ρcosθ, ρsinθ, ω, −λρ, −g cosθ + λω, −ρω + g sinθ − μλ).
void reduced_rhs(std::span<const double> s, const SkateParams& p, std::span<double> out);

/// (ρcosθ, ρsinθ, ω, 0, −g cosθ).
void lda_limit_rhs(std::span<const double> s, double g, std::span<double> out);

/// Euler–Lagrange equations of ½(ẋ²+ẏ²+θ̇²) + φ²/(2ν) − gx with Rayleigh
/// function φ²/(2α), φ = ẋ sinθ − ẏ cosθ.
void regularized_rhs(std::span<const double> s, const SkateParams& p, std::span<double> out);

/// E = ½(ρ² + ω²) + g·x.
double skate_energy(double rho, double omega, double x, double g);
/// E for a reduced or limit state (x, y, θ, ω, ρ, …).
double skate_energy(std::span<const double> s, double g);

/// φ = ẋ sinθ − ẏ cosθ of a regularized state.
double transverse_velocity(std::span<const double> s);
/// Blade-direction speed ρ = ẋ cosθ + ẏ sinθ of a regularized state.
double blade_speed(std::span<const double> s);
/// E_ν = ½(ẋ² + ẏ² + θ̇²) + g·x + φ²/(2ν).
double regularized_energy(std::span<const double> s, const SkateParams& p);
/// R_α = φ²/(2α).
double rayleigh(std::span<const double> s, const SkateParams& p);

struct SkateInitial {
    double x = 0.0, y = 0.0;
    double theta = 0.0;
    double v = 1.0;     // speed along the blade
    double omega = 0.0; // θ̇
    double lambda = 0.0;
};

/// The initial data used for every figure.
SkateInitial figure_initial();

std::vector<double> initial_state(SkateSystem system, const SkateInitial& init);

/// Closed-form μ → ∞ solution (θ, ρ) at time t (ω0 ≠ 0 or g·cosθ0 handled).
std::pair<double, double> lda_closed_form(const SkateInitial& init, double g, double t);

/// Ledger: energy (all systems); regularized adds energy_nu, phi, rayleigh.
/// Records every `record_every`-th fixed step (adaptive runs record all).
trajectory::Trajectory integrate_skate(SkateSystem system, const SkateInitial& init, const SkateParams& p, double t0,
                                       double t1, const numkit::Stepper& stepper, int record_every = 1);

} // namespace nhm::skate
