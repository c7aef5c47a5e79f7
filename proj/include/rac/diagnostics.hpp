#pragma once

#include "rac/biharmonic_basis.hpp"
#include "rac/coupling.hpp"
#include "rac/eigensolver.hpp"
#include "rac/laplace_basis.hpp"
#include "rac/stokes_basis.hpp"

#include <span>
#include <string>
#include <vector>

namespace rac::diagnostics {

/// Product rule on the annulus: Gauss-Legendre in r, uniform in phi (exact
/// for trigonometric polynomials of degree < n_phi).
struct AnnulusQuadrature {
    QuadratureRule radial;
    int n_phi = 0;
    double phi(int k) const;
    double weight(std::size_t i) const;  ///< radial weight * r * 2 pi / n_phi
};

AnnulusQuadrature make_quadrature(const AnnulusGeometry& g, int n_r, int n_phi);

/// Cartesian Frobenius |grad v|^2 from the polar velocity and its polar derivatives.
double frobenius_gradient_sq(const stokes::Velocity& v, const stokes::VelocityGradient& d,
                             double r, double phi);

/// Max |G - I| of the L2 Gram matrix.
double gram_deviation(const AnnulusGeometry& g, std::span<const laplace::LaplaceMode> modes);
double gram_deviation(const AnnulusGeometry& g, std::span<const stokes::StokesMode> modes);
double gram_deviation(const AnnulusGeometry& g, std::span<const biharmonic::BiharmonicMode> modes);

/// Max over 720 samples on each circle: |chi|, |v|, max(|psi|, |dpsi/dr|).
double boundary_trace(const AnnulusGeometry& g, const laplace::LaplaceMode& mode);
double boundary_trace(const AnnulusGeometry& g, const stokes::StokesMode& mode);
double boundary_trace(const AnnulusGeometry& g, const biharmonic::BiharmonicMode& mode);

/// max |Laplace chi + omega^2 chi| / omega^2 over a 50x50 interior polar grid,
/// Laplacian by Richardson-extrapolated central differences.
double laplace_pde_residual(const AnnulusGeometry& g, const laplace::LaplaceMode& mode);
/// Radial (Laplace + kappa^2) Laplace f = 0 (n >= 1) or the order-1 Bessel
/// equation for the azimuthal profile (n == 0); relative max residual.
double stokes_ode_residual(const AnnulusGeometry& g, const stokes::StokesMode& mode);
/// max |div v| over a 50x50 interior grid by central differences.
double stokes_divergence(const AnnulusGeometry& g, const stokes::StokesMode& mode);
/// |(v, v)_D - kappa^2| / kappa^2 with Cartesian gradients.
double stokes_dirichlet_error(const AnnulusGeometry& g, const stokes::StokesMode& mode);
/// Radial Laplace^2 psi - mu^2 psi, relative max residual.
double biharmonic_pde_residual(const AnnulusGeometry& g, const biharmonic::BiharmonicMode& mode);
/// |(Laplace psi, Laplace psi) - mu^2| / mu^2.
double biharmonic_delta_norm_error(const AnnulusGeometry& g, const biharmonic::BiharmonicMode& mode);

/// Number of raw entries with |C_jk| > sqrt(2) gamma_S.
int entry_bound_violations(const AnnulusGeometry& g, const coupling::CouplingMatrix& raw);

/// Zero count predicted by angular bookkeeping alone (parity and index rules
/// of the three trigonometric products), without any radial work.
std::size_t predicted_zero_count_C(std::span<const coupling::ModeTag> rows,
                                   std::span<const coupling::ModeTag> cols);

/// Fields reconstructed from the maximizing coefficient vectors.
struct QuotientCheck {
    double lambda = 0.0;
    double functional = 0.0;  ///< F(w, theta) by 2D quadrature
    double dissipation = 0.0; ///< D(w, theta) by 2D quadrature
    double quotient = 0.0;    ///< F / D
    double relative_error = 0.0;  ///< |F/D - lambda/2| / (lambda/2)
};

/// Solve at the realized ladder level for `target` and push the maximizer
/// through quadrature of F and D. grad S is taken from geometry::grad_S.
QuotientCheck quotient_check(const AnnulusGeometry& g, int target,
                             const coupling::AssemblyOptions& assembly = {});

/// Skew-symmetry of the streamfunction coupling for (psi_j, chi_k):
/// |(psi, e.(grad chi x grad S)) + (chi, e.(grad psi x grad S))| by 2D quadrature.
double skew_symmetry_defect(const AnnulusGeometry& g, const biharmonic::BiharmonicMode& psi,
                            const laplace::LaplaceMode& chi);

/// Measured gamma_* = max |B_jk| / (gamma_S_II max(mu_j, omega_k)).
double measured_gamma_star(const AnnulusGeometry& g, const coupling::CouplingMatrix& raw_B);

struct CheckResult {
    std::string module;
    std::string invariant;
    bool pass = false;
    double observed = 0.0;
    double threshold = 0.0;
};

struct ValidateOptions {
    int modes = 30;     ///< modes per family for the basis suites
    int max_ell = 40;   ///< largest ladder level
    coupling::AssemblyOptions assembly;
};

/// Every module's invariant suite at reduced size.
std::vector<CheckResult> run_validation(const AnnulusGeometry& g, const ValidateOptions& options = {});

}  // namespace rac::diagnostics
