#include "nhm/distributions/vector_field.hpp"

#include <algorithm>
#include <cmath>

#include "nhm/error.hpp"

namespace nhm::distributions {

VectorField::VectorField(int dim, std::string label, JetEval jet, RealEval real, DualEval dual)
    : dim_(dim), label_(std::move(label)), jet_(std::move(jet)), real_(std::move(real)), dual_(std::move(dual)) {
    if (dim <= 0) throw Error(ErrorKind::InvalidArgument, "vector field dimension must be positive");
    if (!jet_) throw Error(ErrorKind::InvalidArgument, "vector field needs a jet evaluation");
}

namespace {

void require_dim(std::size_t got, int dim, const std::string& label) {
    if (got != static_cast<std::size_t>(dim))
        throw Error(ErrorKind::DimensionMismatch, "field " + label + " expects a point of dimension " +
                                                      std::to_string(dim) + ", got " + std::to_string(got));
}

int max_levels(const JetVec& p) {
    int l = 0;
    for (const auto& x : p) l = std::max(l, x.levels());
    return l;
}

JetVec lift_all(JetVec p, int levels) {
    for (auto& x : p) x = x.lifted(levels);
    return p;
}

} // namespace

std::vector<double> VectorField::operator()(std::span<const double> p) const {
    require_dim(p.size(), dim_, label_);
    std::vector<double> out;
    if (real_) {
        out = real_(std::vector<double>(p.begin(), p.end()));
    } else {
        JetVec jp(p.begin(), p.end());
        const JetVec v = jet_(jp);
        out.reserve(v.size());
        for (const auto& x : v) out.push_back(x.value());
    }
    require_dim(out.size(), dim_, label_);
    for (double v : out)
        if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "field " + label_ + " is not finite here");
    return out;
}

JetVec VectorField::eval(const JetVec& p) const {
    require_dim(p.size(), dim_, label_);
    JetVec out = jet_(p);
    require_dim(out.size(), dim_, label_);
    return out;
}

DualVec VectorField::eval_dual(const DualVec& p) const {
    if (!dual_) throw Error(ErrorKind::InvalidArgument, "field " + label_ + " has no dual evaluation");
    require_dim(p.size(), dim_, label_);
    return dual_(p);
}

Eigen::MatrixXd VectorField::jacobian(std::span<const double> p) const {
    require_dim(p.size(), dim_, label_);
    Eigen::MatrixXd J(dim_, dim_);
    if (dual_) {
        DualVec x(p.begin(), p.end());
        for (int j = 0; j < dim_; ++j) {
            x[static_cast<std::size_t>(j)].der = 1.0;
            const DualVec y = dual_(x);
            x[static_cast<std::size_t>(j)].der = 0.0;
            for (int i = 0; i < dim_; ++i) J(i, j) = y[static_cast<std::size_t>(i)].der;
        }
    } else {
        for (int j = 0; j < dim_; ++j) {
            JetVec x;
            x.reserve(p.size());
            for (int i = 0; i < dim_; ++i) x.push_back(Jet::seeded(Jet(p[static_cast<std::size_t>(i)]), Jet(i == j ? 1.0 : 0.0)));
            const JetVec y = eval(x);
            for (int i = 0; i < dim_; ++i) J(i, j) = y[static_cast<std::size_t>(i)].lifted(1).coeff(1);
        }
    }
    if (!J.allFinite()) throw Error(ErrorKind::NonFinite, "jacobian of " + label_ + " is not finite");
    return J;
}

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
    if (v.dim() != w.dim()) throw Error(ErrorKind::DimensionMismatch, "bracket of fields on different charts");
    // V(p) first, then W along V gives W(p) and DW·V, then V along W(p) gives DV·W.
    auto eval = [v, w](const JetVec& p) {
        const int L = max_levels(p);
        const JetVec P = lift_all(p, L);
        const JetVec vp = lift_all(v.eval(P), L);
        JetVec seed(P.size());
        for (std::size_t i = 0; i < P.size(); ++i) seed[i] = Jet::seeded(P[i], vp[i]);
        const JetVec w1 = lift_all(w.eval(seed), L + 1);
        JetVec wp(P.size()), dw_v(P.size());
        for (std::size_t i = 0; i < P.size(); ++i) {
            wp[i] = w1[i].base_part();
            dw_v[i] = w1[i].top_part();
        }
        for (std::size_t i = 0; i < P.size(); ++i) seed[i] = Jet::seeded(P[i], wp[i]);
        const JetVec v1 = lift_all(v.eval(seed), L + 1);
        JetVec out(P.size());
        for (std::size_t i = 0; i < P.size(); ++i) out[i] = dw_v[i] - v1[i].top_part();
        return out;
    };
    return VectorField(v.dim(), "[" + v.label() + "," + w.label() + "]", eval);
}

VectorField linear_combination(const std::vector<double>& coeffs, const std::vector<VectorField>& fields) {
    if (coeffs.size() != fields.size() || fields.empty())
        throw Error(ErrorKind::DimensionMismatch, "linear combination needs one coefficient per field");
    const int dim = fields.front().dim();
    std::string label;
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (fields[k].dim() != dim) throw Error(ErrorKind::DimensionMismatch, "combined fields differ in dimension");
        if (k) label += "+";
        label += std::to_string(coeffs[k]) + "*" + fields[k].label();
    }
    auto eval = [coeffs, fields](const JetVec& p) {
        JetVec out(p.size(), Jet(0.0));
        for (std::size_t k = 0; k < fields.size(); ++k) {
            const JetVec f = fields[k].eval(p);
            for (std::size_t i = 0; i < p.size(); ++i) out[i] += Jet(coeffs[k]) * f[i];
        }
        return out;
    };
    return VectorField(dim, "(" + label + ")", eval);
}

} // namespace nhm::distributions
