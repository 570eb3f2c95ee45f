#pragma once

// Spin chains L: S¹ → S² and closed curves γ: S¹ → ℝ³ on a uniform grid of
// [0, 2π). Fields are stored component-blocked: [x0..x_{n−1}, y…, z…].

#include <array>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "nhm/numkit/spectral.hpp"
#include "nhm/numkit/stepper.hpp"
#include "nhm/trajectory/trajectory.hpp"

namespace nhm::loopgroup {

using Vec3 = std::array<double, 3>;

/// ∂ₜL = L × L″.
void ll_rhs(const numkit::Spectral1D& sp, std::span<const double> L, std::span<double> out);
/// ∂ₜγ = γ′ × γ″.
void binormal_rhs(const numkit::Spectral1D& sp, std::span<const double> gamma, std::span<double> out);

/// Throws InvalidArgument unless |L_j| = 1 within 1e-10.
void require_unit(std::span<const double> L);

/// H = ½∫|L′|² dθ.
double ll_energy(const numkit::Spectral1D& sp, std::span<const double> L);
/// ∫L dθ.
Vec3 ll_momentum(std::span<const double> L);
double max_norm_deviation(std::span<const double> L);

/// Ledger: norm_dev, energy, momentum_x, momentum_y, momentum_z. With
/// renormalize every node is projected back to the sphere after each step.
trajectory::Trajectory integrate_ll(std::span<const double> L0, double t0, double t1, const numkit::Stepper& stepper,
                                    bool renormalize, int record_every = 1);

/// Ledger: length, speed_dev (max ||γ′| − 1|). The curve is sampled
/// uniformly over a parameter interval of the given period.
trajectory::Trajectory integrate_binormal(std::span<const double> gamma0, double t0, double t1,
                                          const numkit::Stepper& stepper, int record_every = 1,
                                          double period = 2 * std::numbers::pi);

/// (sin ε cos(kθ − ωt), sin ε sin(kθ − ωt), cos ε), ω = k² cos ε.
std::vector<double> magnon(std::size_t n, int k, double eps, double t = 0.0);

/// −d/dt of the unwrapped azimuth of L at one node (least-squares slope).
double precession_frequency(const trajectory::Trajectory& traj, std::size_t node);

/// Samples c(p), p ∈ [0, 2π), at n points equally spaced in arclength,
/// scaled so the total length is 2π (|γ′| = 1 on the grid).
std::vector<double> arclength_curve(const std::function<Vec3(double)>& c, const std::function<Vec3(double)>& dc,
                                    std::size_t n);

/// Planar curve r(p) = 1 + a·cos(m p), arclength-resampled.
std::vector<double> perturbed_circle(std::size_t n, double amplitude = 0.05, int harmonic = 3);

/// Evolves γ by the binormal flow and L = γ0′ by the chain equation with the
/// same stepper; returns sup over recorded samples of ‖γ′ − L‖∞.
double gauss_map_consistency(std::span<const double> gamma0, double t0, double t1, const numkit::Stepper& stepper,
                             int record_every = 1);

} // namespace nhm::loopgroup
