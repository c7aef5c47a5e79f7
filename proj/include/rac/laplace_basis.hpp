#pragma once

#include "rac/geometry.hpp"
#include "rac/quadrature.hpp"

#include <vector>

namespace rac::laplace {

/// One L2-orthonormal Dirichlet eigenfunction of -Laplace on the annulus:
///   chi = norm * (c_J J_n(omega r) + c_Y Y_n(omega r)) * trig(parity, n, phi),
/// eigenvalue omega^2.
struct LaplaceMode {
    int n = 0;
    Parity parity = Parity::Cos;
    int m = 1;
    double omega = 0.0;
    double c_J = 0.0;
    double c_Y = 0.0;
    double norm = 1.0;
};

/// Radial profile R(r) and dR/dr, with the normalization folded in.
struct RadialSample {
    double value = 0.0;
    double derivative = 0.0;
};

/// J_n(omega r_in) Y_n(omega r_out) - J_n(omega r_out) Y_n(omega r_in).
double cross_product(const AnnulusGeometry& g, int n, double omega);

/// |J_n(omega r_in) Y_n(omega r_out)| + |J_n(omega r_out) Y_n(omega r_in)|, the
/// magnitude against which a root residual is judged.
double cross_product_scale(const AnnulusGeometry& g, int n, double omega);

/// First `count` roots of cross_product(g, n, .), ascending. count <= 400.
std::vector<double> find_roots(const AnnulusGeometry& g, int n, int count);

/// All roots of cross_product(g, n, .) below `cutoff`, ascending.
std::vector<double> roots_below(const AnnulusGeometry& g, int n, double cutoff);

/// Mode for root omega of angular index n; normalization by radial quadrature.
LaplaceMode build_mode(const AnnulusGeometry& g, int n, Parity parity, int m, double omega);

/// First `ell` eigenpairs ordered by (omega, n, parity), cos before sin.
std::vector<LaplaceMode> enumerate_spectrum(const AnnulusGeometry& g, int ell);

RadialSample radial(const LaplaceMode& mode, double r);

double evaluate_chi(const LaplaceMode& mode, const AnnulusGeometry& g, double r, double phi);
SurfaceGradient evaluate_grad_chi(const LaplaceMode& mode, const AnnulusGeometry& g, double r,
                                  double phi);

/// Number of interior sign changes of the radial profile on a fine grid
/// (Sturm: equals m - 1 for the m-th root).
int radial_node_count(const LaplaceMode& mode, const AnnulusGeometry& g);

}  // namespace rac::laplace
