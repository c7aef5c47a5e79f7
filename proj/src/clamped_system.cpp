#include "clamped_system.hpp"

#include "rac/errors.hpp"

#include <string>

namespace rac::detail {

Equilibrated equilibrate(const Eigen::Matrix4d& m) {
    Equilibrated e;
    e.matrix = m;
    for (int c = 0; c < 4; ++c) {
        const double s = e.matrix.col(c).cwiseAbs().maxCoeff();
        e.column_scale(c) = s > 0.0 ? 1.0 / s : 1.0;
        e.matrix.col(c) *= e.column_scale(c);
    }
    for (int r = 0; r < 4; ++r) {
        const double s = e.matrix.row(r).cwiseAbs().maxCoeff();
        if (s > 0.0) {
            e.matrix.row(r) /= s;
        }
    }
    return e;
}

double equilibrated_determinant(const Eigen::Matrix4d& m) {
    return Eigen::FullPivLU<Eigen::Matrix4d>(equilibrate(m).matrix).determinant();
}

Eigen::Vector4d clamped_nullvector(const Eigen::Matrix4d& m) {
    const Equilibrated e = equilibrate(m);
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(e.matrix, Eigen::ComputeFullV);
    const Eigen::Vector4d sv = svd.singularValues();
    if (sv(2) < 1e-6 * sv(0)) {
        throw DegenerateNullspaceError("characteristic matrix has a nullspace of dimension > 1 (" +
                                       std::to_string(sv(2) / sv(0)) + ")");
    }
    Eigen::Vector4d x = e.column_scale.cwiseProduct(svd.matrixV().col(3));
    return x / x.norm();
}

}  // namespace rac::detail
