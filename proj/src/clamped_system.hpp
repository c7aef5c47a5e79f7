#pragma once

#include <Eigen/Dense>

namespace rac::detail {

/// Row/column max-abs equilibration D_r M D_c. Both scalings are positive and
/// continuous in the matrix entries, so the determinant keeps its zero set and
/// its sign pattern.
struct Equilibrated {
    Eigen::Matrix4d matrix;
    Eigen::Vector4d column_scale;
};

Equilibrated equilibrate(const Eigen::Matrix4d& m);

double equilibrated_determinant(const Eigen::Matrix4d& m);

/// Unit nullvector of m (in the original column basis) from the smallest
/// singular vector of the equilibrated matrix. Throws DegenerateNullspaceError
/// when the second-smallest singular value is below 1e-6 of the largest.
Eigen::Vector4d clamped_nullvector(const Eigen::Matrix4d& m);

}  // namespace rac::detail
