#pragma once

// Camassa–Holm on the circle [0, 2π) in momentum form m = u − u_xx:
// m_t = −(2u_x m + u m_x) − κu_x.

#include <span>
#include <vector>

#include "nhm/numkit/spectral.hpp"
#include "nhm/numkit/stepper.hpp"
#include "nhm/trajectory/trajectory.hpp"

namespace nhm::camassaholm {

/// u = (1 − ∂_xx)⁻¹ m.
std::vector<double> helmholtz_inverse(const numkit::Spectral1D& sp, std::span<const double> m);
/// m = u − u_xx.
std::vector<double> momentum(const numkit::Spectral1D& sp, std::span<const double> u);

/// Inputs and products are 2/3-dealiased.
void ch_rhs(const numkit::Spectral1D& sp, std::span<const double> m, double kappa, std::span<double> out);

/// m_t from the expanded form −(κu_x + 3uu_x − 2u_xu_xx − uu_xxx), same dealiasing.
void ch_rhs_uform(const numkit::Spectral1D& sp, std::span<const double> u, double kappa, std::span<double> out);

/// ∫u dx.
double ch_mean(const numkit::Spectral1D& sp, std::span<const double> m);
/// ½∫(u² + u_x²) dx = ½∫u·m dx.
double ch_energy(const numkit::Spectral1D& sp, std::span<const double> m);

/// State columns m0..m{n−1}; ledger mean, energy.
trajectory::Trajectory integrate_ch(std::span<const double> m0, double kappa, double t0, double t1,
                                    const numkit::Stepper& stepper, int record_every = 1);

} // namespace nhm::camassaholm
