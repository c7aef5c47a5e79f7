#pragma once

#include "rac/geometry.hpp"
#include "rac/quadrature.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace rac::biharmonic {

/// One L2-orthonormal clamped-plate mode: Laplace^2 psi = mu^2 psi with
/// psi = dpsi/dr = 0 on both circles. With k = sqrt(mu),
///   psi = norm * P(r) * trig(parity, n, phi),
///   P = c0 J_n(k r) + c1 Y_n(k r) + c2 I_n(k r) / I_n(k r_out) + c3 K_n(k r) / K_n(k r_in).
/// The I/K columns are divided by their extreme values on the interval so the
/// coefficients stay O(1).
struct BiharmonicMode {
    int n = 0;
    Parity parity = Parity::Cos;
    int m = 1;
    double mu = 0.0;
    std::array<double, 4> coeffs{};
    double norm = 1.0;
    double i_scale = 1.0;  ///< I_n(k r_out), cached
    double k_scale = 1.0;  ///< K_n(k r_in), cached

    double wavenumber() const;
};

/// Rows P(r_in), P'(r_in), P(r_out), P'(r_out) for wavenumber k = sqrt(mu).
Eigen::Matrix4d char_matrix(const AnnulusGeometry& g, int n, double k);

/// Equilibrated clamped determinant; zero exactly at k = sqrt(mu_j).
double biharmonic_char_det(const AnnulusGeometry& g, int n, double k);

/// Roots in the wavenumber k = sqrt(mu).
std::vector<double> roots_below(const AnnulusGeometry& g, int n, double cutoff);
std::vector<double> find_roots(const AnnulusGeometry& g, int n, int count);

BiharmonicMode build_mode_at(const AnnulusGeometry& g, int n, Parity parity, int m, double k);
std::vector<BiharmonicMode> enumerate_spectrum(const AnnulusGeometry& g, int ell);

/// P, P' and the radial factor of Laplace psi, normalization included.
struct PsiRadial {
    double value = 0.0;
    double derivative = 0.0;
    double laplacian = 0.0;
};

PsiRadial radial(const BiharmonicMode& mode, const AnnulusGeometry& g, double r);

double evaluate_psi(const BiharmonicMode& mode, const AnnulusGeometry& g, double r, double phi);
SurfaceGradient evaluate_grad_psi(const BiharmonicMode& mode, const AnnulusGeometry& g, double r,
                                  double phi);
/// Laplace psi, from the factorization (Laplace + k^2) on J/Y and (Laplace - k^2) on I/K.
double evaluate_laplacian_psi(const BiharmonicMode& mode, const AnnulusGeometry& g, double r,
                              double phi);

}  // namespace rac::biharmonic
