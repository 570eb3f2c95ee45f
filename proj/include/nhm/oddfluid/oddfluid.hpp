#pragma once

// Compressible 2-D fluid on the periodic square [0, 2π)² with odd viscosity
// η_H(ρ) and odd torque Γ_H(ρ). Three systems: base (ρ, v), extended
// (ρ, v, δℓ) with relaxation μ and coupling ν, and the effective system with
// the shifted pressure p − (8/μ)Γ̂ ∂ᵢvᵢ.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "nhm/numkit/spectral.hpp"
#include "nhm/numkit/stepper.hpp"
#include "nhm/trajectory/trajectory.hpp"

namespace nhm::oddfluid {

/// Σ aₖ ρ^{pₖ}.
struct PowerSeries {
    std::vector<std::pair<double, double>> terms; // (coefficient, power)

    double operator()(double rho) const;
    double derivative(double rho) const;
};

struct InternalEnergy {
    enum class Kind { Isothermal, Polytropic2 } kind = Kind::Isothermal;
    double c = 1.0;     // isothermal: ε = c²ρ(ln ρ − 1)
    double kappa = 1.0; // polytropic: ε = κρ²

    double eps(double rho) const;
    double eps_prime(double rho) const;
    /// p = ρε′ − ε.
    double pressure(double rho) const;
};

struct FluidParams {
    InternalEnergy energy;
    PowerSeries eta_h;
    PowerSeries gamma_h;
    double mu = 1.0;
    double nu = 0.1;

    /// Γ̂ = Γ_H − η_H + ρη_H′.
    double gamma_hat(double rho) const;
};

/// Throws InvalidArgument unless μ, ν > 0 and the energy constants are positive.
void validate(const FluidParams& p);

enum class FluidSystem { Base, Extended, Effective };
std::string to_string(FluidSystem s);
FluidSystem fluid_system_from_string(const std::string& s);

struct FluidState {
    std::size_t n = 0;
    std::vector<double> rho, vx, vy;
    std::vector<double> dl; // δℓ, extended system only

    bool extended() const noexcept { return !dl.empty(); }
    std::size_t count() const noexcept { return n * n; }
};

inline constexpr double kDensityFloor = 1e-6;

using Tensor = std::array<std::vector<double>, 4>; // T11, T12, T21, T22

enum class StressMode { Base, Extended };

/// T_ij = −p δ_ij + η_ijkl ∂_k v_l (extended: p^ℓ, η^ℓ with ℓ = δℓ − 2η_H).
Tensor stress_tensor(const numkit::Spectral2D& sp, const FluidState& s, const FluidParams& p, StressMode mode);

/// Derivatives have the same layout as the state. None is dealiased.
FluidState base_rhs(const numkit::Spectral2D& sp, const FluidState& s, const FluidParams& p);
FluidState extended_rhs(const numkit::Spectral2D& sp, const FluidState& s, const FluidParams& p);
FluidState effective_rhs(const numkit::Spectral2D& sp, const FluidState& s, const FluidParams& p);
FluidState fluid_rhs(FluidSystem sys, const numkit::Spectral2D& sp, const FluidState& s, const FluidParams& p);

/// H = ∫ρv²/2 + ε(ρ).
double fluid_energy(const FluidState& s, const FluidParams& p);
/// H_ν = H + ∫δℓ²/(2ν).
double extended_energy(const FluidState& s, const FluidParams& p);
/// R_μ = ∫ μ δℓ² / (2ν²).
double rayleigh(const FluidState& s, const FluidParams& p);
/// ⟨δH_ν/δq, q_t⟩ with δH/δρ = v²/2 + ε′, δH/δv = ρv, δH_ν/δ(δℓ) = δℓ/ν.
double energy_rate(const FluidState& s, const FluidState& rate, const FluidParams& p);

/// ‖∂ᵢvᵢ‖ in L².
double divergence_norm(const numkit::Spectral2D& sp, const FluidState& s);

/// One term a·cos(kx x + ky y + phase) added to a field.
struct FourierTerm {
    std::string field; // rho, vx, vy, dl
    int kx = 0, ky = 0;
    double amplitude = 0.0;
    double phase = 0.0;
};

/// ρ = rho_mean + Σ terms, v and δℓ from their terms (δℓ only if extended).
FluidState fluid_from_fourier(std::size_t n, double rho_mean, const std::vector<FourierTerm>& terms, bool extended);

/// δℓ = −(4ν/μ)Γ̂ ∂ᵢvᵢ.
std::vector<double> slaved_dl(const numkit::Spectral2D& sp, const FluidState& s, const FluidParams& p);

struct FluidRun {
    /// Columns rho_min, rho_max, kinetic, div_l2, dl_max; ledger energy
    /// (+ energy_nu, rayleigh, dissipated for the extended system).
    trajectory::Trajectory summary;
    FluidState final_state;
    std::vector<FluidState> snapshots;
};

struct FluidRunOptions {
    int record_every = 1;
    int snapshot_every = 0; // in recorded samples; 0 keeps none
    bool dealias = true;    // 2/3 rule on every derivative
};

/// dissipated = ∫2R_μ dt, carried as an extra ODE component.
FluidRun integrate_fluid(FluidSystem sys, const FluidState& s0, const FluidParams& p, double t0, double t1,
                         const numkit::Stepper& stepper, const FluidRunOptions& opt = {});

/// Flat row-major CSV (one line per row iy, values over ix).
std::string field_csv(std::size_t n, const std::vector<double>& values);

} // namespace nhm::oddfluid
