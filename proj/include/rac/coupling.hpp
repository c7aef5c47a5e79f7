#pragma once

#include "rac/geometry.hpp"
#include "rac/laplace_basis.hpp"
#include "rac/quadrature.hpp"
#include "rac/stokes_basis.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <span>
#include <vector>

namespace rac::coupling {

/// Index data carried by each row/column so matrix entries map back to modes.
struct ModeTag {
    int n = 0;
    Parity parity = Parity::Cos;
    int m = 1;
    double weight = 1.0;  ///< kappa_j, mu_j or omega_k: the scaling divisor
};

/// Dense rectangular coupling matrix. Rows index the velocity-side family
/// (Stokes or biharmonic), columns the Laplace family.
struct CouplingMatrix {
    std::vector<ModeTag> rows;
    std::vector<ModeTag> cols;
    Eigen::MatrixXd entries;
    bool scaled = false;
};

/// Cut ell_j into both spectra: the first stokes_cut rows and laplace_cut
/// columns. Both cuts keep every degenerate cos/sin pair intact.
struct TruncationLevel {
    int target = 0;
    int ell = 0;
    int stokes_cut = 0;
    int laplace_cut = 0;
};

struct AssemblyOptions {
    /// Radial Gauss-Legendre nodes; 0 selects 16 + ceil(1.5 (k_max + w_max) gap / pi).
    int radial_nodes = 0;
    /// Worker threads; 0 uses RAC_THREADS or the hardware concurrency.
    int threads = 0;
    /// Test hook: assemble with the sign of dS/dr flipped.
    bool flip_grad_s_radial = false;
};

/// Worker count honoring the RAC_THREADS cap.
int worker_count(int requested);

/// Default radial node count for the largest row/column wavenumbers.
int default_radial_nodes(const AnnulusGeometry& g, double max_row_wavenumber,
                         double max_col_wavenumber);

/// C_{j,k} = (chi_k, grad S . v_j), angular factors in closed form.
CouplingMatrix assemble_C(const AnnulusGeometry& g, std::span<const stokes::StokesMode> stokes,
                          std::span<const laplace::LaplaceMode> laplace,
                          const AssemblyOptions& options = {});

/// C~_{j,k} = C_{j,k} / (w_j w_k) using the row/column weights.
CouplingMatrix scale_C(const CouplingMatrix& raw);

/// Inverse of scale_C.
CouplingMatrix unscale_C(const CouplingMatrix& scaled);

/// Top-left stokes_cut x laplace_cut block of a scaled matrix.
Eigen::MatrixXd truncated_block(const CouplingMatrix& scaled, const TruncationLevel& level);

/// Symmetric block matrix [[0, C^], [C^T, 0]].
Eigen::MatrixXd assemble_gamma(const Eigen::MatrixXd& block);
Eigen::MatrixXd assemble_gamma(const CouplingMatrix& scaled, const TruncationLevel& level);

/// True when values[cut - 1] and values[cut] are distinct eigenvalues.
bool is_multiplicity_safe(std::span<const double> values, int cut);

/// Smallest cuts >= each target that are multiplicity-safe in both families,
/// strictly increasing. A shared cut is used for both families.
std::vector<TruncationLevel> propose_ladder(std::span<const double> row_values,
                                            std::span<const double> col_values,
                                            std::span<const int> targets);

/// Enumeration length used before cutting: 2 * max(targets) + 20.
int enumeration_length(std::span<const int> targets);

/// Velocity-path ladder: enumerates both spectra, then cuts.
std::vector<TruncationLevel> propose_ladder(const AnnulusGeometry& g, std::span<const int> targets);

/// Count of exactly-zero entries.
std::size_t zero_count(const CouplingMatrix& m);

/// CSV dump (j, k, n_v, parity_v, m_v, n_chi, parity_chi, m_chi, raw, scaled).
void write_csv(std::ostream& out, const CouplingMatrix& raw, const CouplingMatrix& scaled);

std::vector<ModeTag> tags(std::span<const stokes::StokesMode> modes);
std::vector<ModeTag> tags(std::span<const laplace::LaplaceMode> modes);

}  // namespace rac::coupling
