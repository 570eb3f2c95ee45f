#include "nhm/distributions/distributions.hpp"

#include <cmath>
#include <numbers>

#include "nhm/error.hpp"

namespace nhm::distributions {

int Distribution::dim() const {
    if (generators.empty()) throw Error(ErrorKind::InvalidArgument, "distribution has no generators");
    return generators.front().dim();
}

Eigen::MatrixXd Distribution::frame(std::span<const double> p) const {
    Eigen::MatrixXd m(dim(), static_cast<Eigen::Index>(generators.size()));
    for (std::size_t j = 0; j < generators.size(); ++j) {
        const auto v = generators[j](p);
        for (int i = 0; i < dim(); ++i) m(i, static_cast<Eigen::Index>(j)) = v[static_cast<std::size_t>(i)];
    }
    return m;
}

nlohmann::json to_json(const FlagReport& r) {
    return {{"point", r.point}, {"dims", r.dims},           {"goursat", r.goursat},
            {"depth_used", r.depth_used}, {"tol", r.tol}, {"basis", r.basis}};
}

std::vector<int> goursat_sequence(int n, int depth) {
    std::vector<int> s;
    for (int i = 0; i <= depth && 2 + i <= n; ++i) s.push_back(2 + i);
    return s;
}

FlagReport derived_flag(const Distribution& d, std::span<const double> point, int max_depth, double tol) {
    if (max_depth < 0) throw Error(ErrorKind::InvalidArgument, "max_depth must be >= 0");
    const int n = d.dim();
    if (point.size() != static_cast<std::size_t>(n))
        throw Error(ErrorKind::DimensionMismatch, "flag point does not match the chart dimension");
    for (const auto& g : d.generators)
        if (g.dim() != n) throw Error(ErrorKind::DimensionMismatch, "generators live on different charts");

    FlagReport report;
    report.point.assign(point.begin(), point.end());
    report.tol = tol;

    std::vector<VectorField> kept;
    Eigen::MatrixXd values(n, 0);
    int rank = 0;
    double biggest = 0.0;
    auto try_add = [&](const VectorField& f) {
        const auto v = f(point);
        Eigen::VectorXd col(n);
        for (int i = 0; i < n; ++i) col(i) = v[static_cast<std::size_t>(i)];
        // Deep brackets span many decades in size; a column that small against
        // the largest seen counts as zero, the rest are tested by the part
        // orthogonal to the current span.
        const double norm = col.norm();
        biggest = std::max(biggest, norm);
        if (!(norm > tol * biggest)) return false;
        col /= norm;
        if (values.cols() > 0) {
            // values is orthonormal; project twice for stability
            col -= values * (values.transpose() * col);
            col -= values * (values.transpose() * col);
            if (!(col.norm() > tol)) return false;
            col.normalize();
        }
        Eigen::MatrixXd trial(n, values.cols() + 1);
        trial.leftCols(values.cols()) = values;
        trial.col(values.cols()) = col;
        values = std::move(trial);
        rank = static_cast<int>(values.cols());
        kept.push_back(f);
        report.basis.push_back(f.label());
        return true;
    };

    for (const auto& g : d.generators) try_add(g);
    report.dims.push_back(rank);

    std::size_t fresh_begin = 0;
    while (report.depth_used < max_depth && rank < n) {
        ++report.depth_used;
        const std::size_t level_end = kept.size();
        for (std::size_t i = fresh_begin; i < level_end && rank < n; ++i) {
            for (std::size_t j = 0; j < level_end && rank < n; ++j) {
                if (j == i || (j >= fresh_begin && j < i)) continue;
                try_add(lie_bracket(kept[i], kept[j]));
            }
        }
        report.dims.push_back(rank);
        if (kept.size() == level_end) break;
        fresh_begin = level_end;
    }
    report.goursat = report.dims == goursat_sequence(n, report.depth_used);
    return report;
}

namespace {

// τⁿ₁, τⁿ₂ on a chart whose first n+3 coordinates are (x, y, θ₀..θₙ).
template <class T>
void trailer_pair(const std::vector<T>& q, int n, std::vector<T>& t1, std::vector<T>& t2) {
    using std::cos, std::sin;
    const std::size_t dim = q.size();
    t1.assign(dim, T(0.0));
    t2.assign(dim, T(0.0));
    t1[2] = T(1.0);
    t2[0] = cos(q[2]);
    t2[1] = sin(q[2]);
    for (int k = 1; k <= n; ++k) {
        const auto ik = static_cast<std::size_t>(2 + k);
        const T rel = q[ik] - q[ik - 1];
        const T s = sin(rel), c = cos(rel);
        for (std::size_t i = 0; i < dim; ++i) t2[i] = s * t1[i] + c * t2[i];
        t1.assign(dim, T(0.0));
        t1[ik] = T(1.0);
    }
}

std::vector<std::string> trailer_coordinates(int n) {
    std::vector<std::string> c{"x", "y"};
    for (int k = 0; k <= n; ++k) c.push_back("theta" + std::to_string(k));
    return c;
}

template <class T>
void require_steering(const T& phi) {
    if (std::abs(numkit::primal(phi)) >= std::numbers::pi / 4)
        throw Error(ErrorKind::SteeringOutOfRange, "steering angle outside (-pi/4, pi/4)");
}

} // namespace

Distribution trailer_fields(int n) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "trailer count must be >= 0");
    const int dim = n + 3;
    auto tau1 = [n](const auto& q) {
        std::remove_cvref_t<decltype(q)> a, b;
        trailer_pair(q, n, a, b);
        return a;
    };
    auto tau2 = [n](const auto& q) {
        std::remove_cvref_t<decltype(q)> a, b;
        trailer_pair(q, n, a, b);
        return b;
    };
    const std::string sup = std::to_string(n);
    return {{make_field(dim, "tau" + sup + "_1", tau1), make_field(dim, "tau" + sup + "_2", tau2)},
            trailer_coordinates(n)};
}

Distribution car_fields(double l, int trailers) {
    if (!(l > 0.0)) throw Error(ErrorKind::InvalidArgument, "wheelbase l must be > 0");
    if (trailers < 0) throw Error(ErrorKind::InvalidArgument, "trailer count must be >= 0");
    const int n = trailers;
    const int dim = n + 4;
    const auto iphi = static_cast<std::size_t>(n + 3);
    auto steer = [iphi](const auto& q) {
        using T = typename std::remove_cvref_t<decltype(q)>::value_type;
        require_steering(q[iphi]);
        std::vector<T> v(q.size(), T(0.0));
        v[iphi] = T(1.0);
        return v;
    };
    auto drive = [n, l, iphi](const auto& q) {
        using std::tan;
        require_steering(q[iphi]);
        std::remove_cvref_t<decltype(q)> a, b;
        trailer_pair(q, n, a, b);
        const auto k = tan(q[iphi]) / l;
        for (std::size_t i = 0; i < q.size(); ++i) b[i] = b[i] + k * a[i];
        return b;
    };
    auto coords = trailer_coordinates(n);
    coords.push_back("phi");
    return {{make_field(dim, "steer", steer), make_field(dim, "drive", drive)}, coords};
}

VectorField car_turn(double l, int trailers) {
    const auto d = car_fields(l, trailers);
    auto f = lie_bracket(d.generators[0], d.generators[1]);
    return VectorField(f.dim(), "turn", [f](const JetVec& p) { return f.eval(p); });
}

VectorField car_park(double l, int trailers) {
    const auto d = car_fields(l, trailers);
    auto f = lie_bracket(d.generators[1], car_turn(l, trailers));
    return VectorField(f.dim(), "park", [f](const JetVec& p) { return f.eval(p); });
}

Distribution goursat_normal_form(int n) {
    if (n < 3) throw Error(ErrorKind::InvalidArgument, "Goursat normal form needs n >= 3");
    const auto last = static_cast<std::size_t>(n - 1);
    auto x1 = [last](const auto& q) {
        using T = typename std::remove_cvref_t<decltype(q)>::value_type;
        std::vector<T> v(q.size(), T(0.0));
        v[last] = T(1.0);
        return v;
    };
    auto x2 = [last](const auto& q) {
        using T = typename std::remove_cvref_t<decltype(q)>::value_type;
        std::vector<T> v(q.size(), T(0.0));
        v[0] = T(1.0);
        for (std::size_t i = 1; i < last; ++i) v[i] = q[i + 1];
        return v;
    };
    std::vector<std::string> coords;
    for (int i = 1; i <= n; ++i) coords.push_back("x" + std::to_string(i));
    return {{make_field(n, "X1", x1), make_field(n, "X2", x2)}, coords};
}

Distribution cartan_distribution(int s) {
    if (s < 1) throw Error(ErrorKind::InvalidArgument, "jet order s must be >= 1");
    const auto dim = static_cast<std::size_t>(s + 2);
    auto x1 = [dim](const auto& q) {
        using T = typename std::remove_cvref_t<decltype(q)>::value_type;
        std::vector<T> v(dim, T(0.0));
        v[dim - 1] = T(1.0);
        return v;
    };
    // z_k sits at index k+1, with z_0 = y at index 1
    auto x2 = [dim](const auto& q) {
        using T = typename std::remove_cvref_t<decltype(q)>::value_type;
        std::vector<T> v(dim, T(0.0));
        v[0] = T(1.0);
        for (std::size_t i = 1; i + 1 < dim; ++i) v[i] = q[i + 1];
        return v;
    };
    std::vector<std::string> coords{"x", "y"};
    for (int k = 1; k <= s; ++k) coords.push_back("z" + std::to_string(k));
    return {{make_field(s + 2, "X1", x1), make_field(s + 2, "X2", x2)}, coords};
}

Eigen::MatrixXd cartan_forms(int s, std::span<const double> p) {
    if (p.size() != static_cast<std::size_t>(s + 2))
        throw Error(ErrorKind::DimensionMismatch, "Cartan point has the wrong dimension");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(s, s + 2);
    for (int k = 1; k <= s; ++k) {
        a(k - 1, 0) = -p[static_cast<std::size_t>(k + 1)];
        a(k - 1, k) = 1.0;
    }
    return a;
}

ProjectionCheck forgetful_projection_check(std::span<const double> point4, double l) {
    if (point4.size() != 4) throw Error(ErrorKind::DimensionMismatch, "car chart point must have 4 coordinates");
    const auto car = car_fields(l);
    const VectorField turn = car_turn(l);
    const std::vector<VectorField> first{car.generators[0], car.generators[1], turn};

    const auto unicycle = trailer_fields(0);
    const std::vector<double> p3(point4.begin(), point4.begin() + 3);
    const Eigen::MatrixXd dm = unicycle.frame(p3);
    const Eigen::MatrixXd q = dm.householderQr().householderQ() * Eigen::MatrixXd::Identity(3, 2);

    ProjectionCheck out;
    Eigen::MatrixXd pushed(3, 3);
    for (std::size_t k = 0; k < first.size(); ++k) {
        const auto v = first[k](point4);
        Eigen::Vector3d w(v[0], v[1], v[2]);
        pushed.col(static_cast<Eigen::Index>(k)) = w;
        const double norm = w.norm();
        if (norm == 0.0) continue;
        w /= norm;
        out.residual = std::max(out.residual, (w - q * (q.transpose() * w)).norm());
    }
    out.projected_rank = numkit::numerical_rank(pushed);
    return out;
}

} // namespace nhm::distributions
