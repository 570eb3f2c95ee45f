#include "nhm/numkit/linalg.hpp"

namespace nhm::numkit {

int numerical_rank(const Eigen::MatrixXd& columns, double tol) {
    if (columns.size() == 0) return 0;
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "rank tolerance must be > 0");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(columns);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0)) ++rank;
    return rank;
}

int numerical_rank(const std::vector<std::vector<double>>& vectors, double tol) {
    if (vectors.empty()) return 0;
    const std::size_t dim = vectors.front().size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != dim) throw Error(ErrorKind::DimensionMismatch, "rank: vectors differ in length");
        for (std::size_t i = 0; i < dim; ++i)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vectors[j][i];
    }
    return numerical_rank(m, tol);
}

} // namespace nhm::numkit
