#pragma once

// Euler-type flows on so(3)* ≅ ℝ³ with −ad*_v m realized as m × v.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "nhm/numkit/stepper.hpp"
#include "nhm/trajectory/trajectory.hpp"

namespace nhm::liealg {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// ṁ = m × (B m). B symmetric positive semidefinite (A⁻¹ or a degenerate B).
Vec3 euler_arnold_rhs(const Vec3& m, const Mat3& B);

struct EpsResult {
    Vec3 mdot;
    std::vector<double> lambda;
};

/// ṁ = m × A⁻¹m + Σ λᵢ aᵢ with λ keeping ⟨aᵢ, A⁻¹m⟩ constant.
/// Throws SingularGram when ⟨aᵢ, A⁻¹aⱼ⟩ is singular.
EpsResult eps_rhs(const Vec3& m, const Mat3& A, const std::vector<Vec3>& constraints);

struct LieFlow {
    enum class Kind { EulerArnold, Eps } kind = Kind::EulerArnold;
    Mat3 B = Mat3::Identity(); // EulerArnold
    Mat3 A = Mat3::Identity(); // Eps
    std::vector<Vec3> constraints;

    static LieFlow euler_arnold(const Mat3& B);
    static LieFlow eps(const Mat3& A, std::vector<Vec3> constraints);
};

/// Throws InvalidArgument on a non-symmetric or indefinite operator, or more than two constraints.
void validate(const LieFlow& flow);

/// H = ½⟨Bm, m⟩ or ½⟨A⁻¹m, m⟩.
double lie_energy(const LieFlow& flow, const Vec3& m);

/// Ledger: energy, casimir (|m|²); Eps adds constraint{i} and lambda{i}.
trajectory::Trajectory integrate_lie(const LieFlow& flow, const Vec3& m0, double t0, double t1,
                                     const numkit::Stepper& stepper, int record_every = 1);

} // namespace nhm::liealg
