#include "nhm/liealg/liealg.hpp"

#include <cmath>
#include <string>

#include "nhm/error.hpp"

namespace nhm::liealg {

Vec3 euler_arnold_rhs(const Vec3& m, const Mat3& B) { return m.cross(B * m); }

EpsResult eps_rhs(const Vec3& m, const Mat3& A, const std::vector<Vec3>& constraints) {
    const Mat3 Ainv = A.inverse();
    EpsResult r{m.cross(Ainv * m), {}};
    const auto k = static_cast<Eigen::Index>(constraints.size());
    if (k == 0) return r;
    Eigen::MatrixXd G(k, k);
    Eigen::VectorXd rhs(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const Vec3 Aa = Ainv * constraints[static_cast<std::size_t>(i)];
        rhs(i) = -Aa.dot(r.mdot);
        for (Eigen::Index j = 0; j < k; ++j) G(i, j) = Aa.dot(constraints[static_cast<std::size_t>(j)]);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
    const auto& sv = svd.singularValues();
    if (!(sv(k - 1) > 1e-12 * sv(0)))
        throw Error(ErrorKind::SingularGram, "constraint Gram matrix is singular");
    const Eigen::VectorXd lam = G.fullPivLu().solve(rhs);
    for (Eigen::Index i = 0; i < k; ++i) {
        r.mdot += lam(i) * constraints[static_cast<std::size_t>(i)];
        r.lambda.push_back(lam(i));
    }
    return r;
}

LieFlow LieFlow::euler_arnold(const Mat3& B) {
    LieFlow f;
    f.B = B;
    return f;
}

LieFlow LieFlow::eps(const Mat3& A, std::vector<Vec3> constraints) {
    LieFlow f;
    f.kind = Kind::Eps;
    f.A = A;
    f.constraints = std::move(constraints);
    return f;
}

namespace {

void require_symmetric(const Mat3& M, bool definite, const char* what) {
    if (!M.allFinite() || (M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + M.cwiseAbs().maxCoeff()))
        throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be symmetric");
    Eigen::SelfAdjointEigenSolver<Mat3> es(M);
    const double lo = es.eigenvalues()(0), hi = es.eigenvalues()(2);
    if (definite ? !(lo > 0) : lo < -1e-12 * std::max(1.0, hi))
        throw Error(ErrorKind::InvalidArgument,
                    std::string(what) + (definite ? " must be positive definite" : " must be positive semidefinite"));
}

} // namespace

void validate(const LieFlow& flow) {
    if (flow.kind == LieFlow::Kind::EulerArnold) {
        require_symmetric(flow.B, false, "B");
        return;
    }
    require_symmetric(flow.A, true, "A");
    if (flow.constraints.size() > 2) throw Error(ErrorKind::InvalidArgument, "at most two constraints on so(3)");
    for (const auto& a : flow.constraints)
        if (!a.allFinite()) throw Error(ErrorKind::InvalidArgument, "constraint covector not finite");
}

double lie_energy(const LieFlow& flow, const Vec3& m) {
    if (flow.kind == LieFlow::Kind::EulerArnold) return 0.5 * m.dot(flow.B * m);
    return 0.5 * m.dot(flow.A.inverse() * m);
}

trajectory::Trajectory integrate_lie(const LieFlow& flow, const Vec3& m0, double t0, double t1,
                                     const numkit::Stepper& stepper, int record_every) {
    validate(flow);
    const bool eps = flow.kind == LieFlow::Kind::Eps;
    const Mat3 Ainv = eps ? Mat3(flow.A.inverse()) : Mat3::Identity();
    std::vector<std::string> ledger{"energy", "casimir"};
    if (eps) {
        for (std::size_t i = 0; i < flow.constraints.size(); ++i) ledger.push_back("constraint" + std::to_string(i + 1));
        for (std::size_t i = 0; i < flow.constraints.size(); ++i) ledger.push_back("lambda" + std::to_string(i + 1));
    }
    trajectory::Trajectory traj(eps ? "eps" : "euler_arnold", {"m1", "m2", "m3"}, ledger);
    traj.meta()["stepper"] = numkit::describe(stepper);

    numkit::Rhs rhs = [&](double, std::span<const double> y, std::span<double> d) {
        const Vec3 m(y[0], y[1], y[2]);
        const Vec3 md = eps ? eps_rhs(m, flow.A, flow.constraints).mdot : euler_arnold_rhs(m, flow.B);
        d[0] = md(0);
        d[1] = md(1);
        d[2] = md(2);
        numkit::require_finite(d, "so(3) derivative");
    };

    std::vector<double> row;
    auto record = [&](double t, std::span<const double> y) {
        const Vec3 m(y[0], y[1], y[2]);
        row = {lie_energy(flow, m), m.squaredNorm()};
        if (eps) {
            for (const auto& a : flow.constraints) row.push_back(a.dot(Ainv * m));
            for (double l : eps_rhs(m, flow.A, flow.constraints).lambda) row.push_back(l);
        }
        traj.append(t, y, row);
    };
    std::vector<double> y{m0(0), m0(1), m0(2)};
    numkit::integrate_sampled(rhs, t0, t1, y, stepper, record_every, record);
    return traj;
}

} // namespace nhm::liealg
