#pragma once

#include "rac/coupling.hpp"
#include "rac/geometry.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace rac::eigen {

/// Largest singular value of a block C^ with its singular pair.
/// The maximizer of z^T Gamma z over unit z is (u, v) / sqrt(2).
struct SpectralResult {
    double lambda = 0.0;
    Eigen::VectorXd u;  ///< left singular vector (row family)
    Eigen::VectorXd v;  ///< right singular vector (Laplace family)
    int iterations = 0;
    double residual = 0.0;  ///< ||C^ v - lambda u||
    double second = 0.0;    ///< second Ritz value, estimate of sigma_2
};

/// Block power iteration on C^ C^T (up to 8 vectors, the first all-ones) with
/// Rayleigh-Ritz extraction; stops once |lambda_{t+1} - lambda_t| <= 1e-13
/// lambda_t. Throws ConvergenceError after 10000 iterations.
SpectralResult lambda_spectral(const Eigen::MatrixXd& block, int max_iterations = 10000,
                               double tolerance = 1e-13);

/// Number of eigenvalues of [[0, C^], [C^T, 0]] strictly above lambda > 0.
/// block_form: inertia of C^T C^ - lambda^2 I (Schur complement); otherwise
/// inertia of the full Gamma - lambda I. Both use an LDL^T factorization.
int count_above(const Eigen::MatrixXd& block, double lambda, bool block_form = true);

/// det(Gamma - lambda I).
double det_full(const Eigen::MatrixXd& block, double lambda);
/// det(lambda^2 I - C^ C^T), the row-family block form.
double det_block(const Eigen::MatrixXd& block, double lambda);

struct BisectionResult {
    double lambda = 0.0;
    int iterations = 0;
    double width = 0.0;  ///< final bracket width
};

/// Largest root of det(Gamma - lambda I) in [lo, lo + delta] by eigenvalue
/// counting and bisection to `tolerance` absolute. Returns lo itself when the
/// largest root sits at lo. Throws NoSignChangeError when the bracket holds no
/// root, which means delta is too small or lo too large.
BisectionResult lambda_bisection(const Eigen::MatrixXd& block, double lo, double delta = 1.0,
                                 double tolerance = 1e-12, bool block_form = true);

struct PairingReport {
    bool ok = true;
    double spectrum_error = 0.0;   ///< max |eig(Gamma) - {+-sigma(C^), 0}|
    double vector_residual = 0.0;  ///< max ||Gamma (-c, d) + lambda (-c, d)||
    double orthogonality = 0.0;    ///< max |<z_i, z_j>| over distinct eigenvalues
    int worst_index = -1;
};

/// Dense check of the +-lambda pairing of Gamma's spectrum. Block sizes up to 60.
PairingReport pairing_check(const Eigen::MatrixXd& block, double spectrum_tol = 1e-10,
                            double residual_tol = 1e-9);

enum class Backend { Spectral, Bisection, Both };
const char* to_string(Backend b);
Backend parse_backend(const std::string& s);

struct LevelRecord {
    int target = 0;
    int ell = 0;
    int stokes_cut = 0;
    int laplace_cut = 0;
    double lambda = 0.0;
    double ra_c = 0.0;
    int iterations = 0;
    double residual = 0.0;
    double lambda_spectral = 0.0;   ///< set when the spectral backend ran
    double lambda_bisection = 0.0;  ///< set when the bisection backend ran
    double top_gap = -1.0;  ///< (sigma_1 - sigma_2) / sigma_1 from the spectral run; < 0 if unknown
    bool degenerate = false;  ///< top_gap < 1e-12: singular vectors are not unique
};

struct SolveReport {
    AnnulusGeometry geometry;
    std::string path = "velocity";
    Backend backend = Backend::Spectral;
    std::vector<LevelRecord> levels;
    bool monotone = true;
    bool pairing_ok = true;
    double pairing_error = 0.0;       ///< worst spectrum error among checked levels
    int pairing_levels = 0;           ///< levels small enough to be checked
    double backend_agreement = -1.0;  ///< max |spectral - bisection|; < 0 if not both
};

struct SolveOptions {
    Backend backend = Backend::Spectral;
    double delta = 1.0;
    coupling::AssemblyOptions assembly;
    int pairing_max_ell = 60;
    /// When set, receives the levels finished before a failure (then the error is rethrown).
    SolveReport* partial = nullptr;
};

/// Runs every level of a ladder against one scaled matrix. Levels are nested
/// prefixes, so lambda must not decrease; a drop beyond 1e-12 throws
/// MonotonicityError.
SolveReport solve_levels(const AnnulusGeometry& g, const std::string& path,
                         const coupling::CouplingMatrix& scaled,
                         std::span<const coupling::TruncationLevel> ladder,
                         const SolveOptions& options);

/// Velocity path: ladder, assembly of C~ at the largest level, per-level solve.
SolveReport solve_ladder(const AnnulusGeometry& g, std::span<const int> targets,
                         const SolveOptions& options = {});

}  // namespace rac::eigen
