#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nhm/numkit/dual.hpp"
#include "nhm/numkit/jet.hpp"

namespace nhm::distributions {

using numkit::Jet;
using JetVec = std::vector<Jet>;
using DualVec = std::vector<numkit::Dual<double>>;

// A field on a chart of dimension dim. The Jet evaluation is the source of
// truth; brackets are built from it by directional differentiation. Fields
// made from a formula also carry plain and dual evaluations.
class VectorField {
public:
    using JetEval = std::function<JetVec(const JetVec&)>;
    using RealEval = std::function<std::vector<double>(const std::vector<double>&)>;
    using DualEval = std::function<DualVec(const DualVec&)>;

    VectorField(int dim, std::string label, JetEval jet, RealEval real = {}, DualEval dual = {});

    int dim() const noexcept { return dim_; }
    const std::string& label() const noexcept { return label_; }

    std::vector<double> operator()(std::span<const double> p) const;
    JetVec eval(const JetVec& p) const;
    bool has_dual() const noexcept { return static_cast<bool>(dual_); }
    DualVec eval_dual(const DualVec& p) const;

    /// Exact derivative matrix at p.
    Eigen::MatrixXd jacobian(std::span<const double> p) const;

private:
    int dim_;
    std::string label_;
    JetEval jet_;
    RealEval real_;
    DualEval dual_;
};

/// Builds a field from a generic callable f(const std::vector<T>&) -> std::vector<T>,
/// instantiated for double, Dual<double> and Jet.
template <class F>
VectorField make_field(int dim, std::string label, F f) {
    return VectorField(
        dim, std::move(label), [f](const JetVec& p) { return f(p); },
        [f](const std::vector<double>& p) { return f(p); }, [f](const DualVec& p) { return f(p); });
}

/// [V,W](p) = DW(p)·V(p) − DV(p)·W(p).
VectorField lie_bracket(const VectorField& v, const VectorField& w);

/// Σ cᵢ·Fᵢ with constant coefficients.
VectorField linear_combination(const std::vector<double>& coeffs, const std::vector<VectorField>& fields);

} // namespace nhm::distributions
