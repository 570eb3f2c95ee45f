#pragma once

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nhm/error.hpp"
#include "nhm/numkit/dual.hpp"

namespace nhm::numkit {

inline constexpr double kDefaultRankTol = 1e-8;

/// Number of singular values above tol·σ_max of the matrix whose columns are
/// the given vectors. Empty or all-zero input has rank 0.
int numerical_rank(const std::vector<std::vector<double>>& vectors, double tol = kDefaultRankTol);
int numerical_rank(const Eigen::MatrixXd& columns, double tol = kDefaultRankTol);

/// Exact Jacobian of f at point by one dual sweep per input coordinate.
/// f is called as f(const std::vector<Dual<double>>&) and must return a
/// std::vector<Dual<double>>.
template <class F>
Eigen::MatrixXd jacobian(F&& f, std::span<const double> point) {
    using D = Dual<double>;
    const auto n = static_cast<Eigen::Index>(point.size());
    std::vector<D> x(point.begin(), point.end());
    Eigen::MatrixXd J;
    for (Eigen::Index j = 0; j < n; ++j) {
        x[static_cast<std::size_t>(j)].der = 1.0;
        const std::vector<D> y = f(x);
        x[static_cast<std::size_t>(j)].der = 0.0;
        if (j == 0) J.resize(static_cast<Eigen::Index>(y.size()), n);
        if (static_cast<Eigen::Index>(y.size()) != J.rows())
            throw Error(ErrorKind::DimensionMismatch, "jacobian: output size changed between sweeps");
        for (Eigen::Index i = 0; i < J.rows(); ++i) {
            const double d = y[static_cast<std::size_t>(i)].der;
            if (!std::isfinite(d)) throw Error(ErrorKind::NonFinite, "jacobian entry is not finite");
            J(i, j) = d;
        }
    }
    return J;
}

} // namespace nhm::numkit
