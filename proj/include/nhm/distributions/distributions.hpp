#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "nhm/distributions/vector_field.hpp"
#include "nhm/numkit/linalg.hpp"

namespace nhm::distributions {

struct Distribution {
    std::vector<VectorField> generators;
    std::vector<std::string> coordinates;

    int dim() const;
    /// Generator values at p as columns.
    Eigen::MatrixXd frame(std::span<const double> p) const;
};

struct FlagReport {
    std::vector<double> point;
    std::vector<int> dims;
    bool goursat = false;
    int depth_used = 0;
    double tol = numkit::kDefaultRankTol;
    /// Labels of the fields kept as a basis, in order of discovery.
    std::vector<std::string> basis;
};

nlohmann::json to_json(const FlagReport& r);

/// dims[i] = dim D^(i)(p). Each level brackets the fields added at the
/// previous level with every kept field and keeps those that raise the rank.
/// Stops at the chart dimension, at max_depth, or when a level adds nothing.
FlagReport derived_flag(const Distribution& d, std::span<const double> point, int max_depth,
                        double tol = numkit::kDefaultRankTol);

/// Chart (x, y, θ₀, …, θₙ); (x, y) is the last trailer, θₙ the towing unicycle.
/// Generators (τⁿ₁, τⁿ₂).
Distribution trailer_fields(int n);

/// Chart (x, y, θ₀, …, θₙ, φ); generators (steer, drive) with
/// drive = τⁿ₂ + (tan φ / l)·τⁿ₁. Throws SteeringOutOfRange for |φ| ≥ π/4.
Distribution car_fields(double l, int trailers = 0);

/// turn = [steer, drive] and park = [drive, turn] of car_fields(l, trailers).
VectorField car_turn(double l, int trailers = 0);
VectorField car_park(double l, int trailers = 0);

/// Chart (x₁, …, xₙ); generators ∂/∂xₙ and xₙ∂/∂xₙ₋₁ + … + x₃∂/∂x₂ + ∂/∂x₁.
Distribution goursat_normal_form(int n);

/// Chart (x, y, z₁, …, z_s); kernel fields of αₖ = dz_{k−1} − z_k dx (z₀ = y).
Distribution cartan_distribution(int s);
/// Rows are the s one-forms α₁…α_s at p, as covectors on the chart.
Eigen::MatrixXd cartan_forms(int s, std::span<const double> p);

struct ProjectionCheck {
    double residual = 0.0;
    int projected_rank = 0;
};

/// Pushes D_C^(1) = span(steer, drive, turn) forward under
/// (x, y, θ, φ) ↦ (x, y, θ) and measures the distance of the pushed vectors
/// from the unicycle distribution at the image point, each vector
/// normalized to unit length first.
ProjectionCheck forgetful_projection_check(std::span<const double> point4, double l);

/// Expected Goursat sequence [2, 3, …] for a chart of dimension n at depth d.
std::vector<int> goursat_sequence(int n, int depth);

} // namespace nhm::distributions
