#pragma once

#include "rac/geometry.hpp"
#include "rac/quadrature.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace rac::stokes {

/// One L2-orthonormal no-slip Stokes eigenfield, eigenvalue kappa^2.
///
/// n >= 1: stream function psi = norm * f(r) * trig(parity, n, phi) with
///   f = c0 J_n(kappa r) + c1 Y_n(kappa r) + c2 (r / r_out)^n + c3 (r_in / r)^n
/// and velocity v_r = (1/r) dpsi/dphi, v_phi = -dpsi/dr.
///
/// n == 0: purely azimuthal v_phi = norm * (c0 J_1(kappa r) + c1 Y_1(kappa r)),
/// parity is Cos by convention and c2 = c3 = 0.
struct StokesMode {
    int n = 0;
    Parity parity = Parity::Cos;
    int m = 1;
    double kappa = 0.0;
    std::array<double, 4> coeffs{};
    double norm = 1.0;
};

struct Velocity {
    double v_r = 0.0;
    double v_phi = 0.0;
};

/// Polar partial derivatives of the polar velocity components.
struct VelocityGradient {
    double dvr_dr = 0.0;
    double dvr_dphi = 0.0;
    double dvphi_dr = 0.0;
    double dvphi_dphi = 0.0;
};

/// Radial factors so that v_r = radial_r(r) * trig(r_parity, n, phi) and
/// v_phi = radial_phi(r) * trig(phi_parity, n, phi).
struct VelocityRadial {
    double radial_r = 0.0;
    double radial_phi = 0.0;
    Parity r_parity = Parity::Cos;
    Parity phi_parity = Parity::Cos;
};

/// Clamped characteristic matrix for n >= 1: rows f(r_in), f'(r_in),
/// f(r_out), f'(r_out); columns the four radial basis functions.
Eigen::Matrix4d char_matrix(const AnnulusGeometry& g, int n, double kappa);

/// Zero exactly at Stokes wavenumbers. n >= 1: determinant of the row and
/// column equilibrated char_matrix; n == 0: order-1 cross product.
double char_det(const AnnulusGeometry& g, int n, double kappa);

std::vector<double> roots_below(const AnnulusGeometry& g, int n, double cutoff);
std::vector<double> find_roots(const AnnulusGeometry& g, int n, int count);

/// Mode at a known root kappa. Throws DegenerateNullspaceError if the
/// characteristic matrix is numerically rank <= 2.
StokesMode build_mode_at(const AnnulusGeometry& g, int n, Parity parity, int m, double kappa);

/// Mode for the m-th root of angular index n.
StokesMode build_mode(const AnnulusGeometry& g, int n, Parity parity, int m);

/// First `ell` modes ordered by (kappa, n, parity).
std::vector<StokesMode> enumerate_spectrum(const AnnulusGeometry& g, int ell);

/// Stream-function radial profile f, f', f'' (n >= 1), or the azimuthal
/// profile u, u', u'' (n == 0). Normalization included.
std::array<double, 3> profile(const StokesMode& mode, const AnnulusGeometry& g, double r);

VelocityRadial velocity_radial(const StokesMode& mode, const AnnulusGeometry& g, double r);
Velocity evaluate_velocity(const StokesMode& mode, const AnnulusGeometry& g, double r, double phi);
VelocityGradient evaluate_velocity_gradient(const StokesMode& mode, const AnnulusGeometry& g,
                                            double r, double phi);

}  // namespace rac::stokes
