#include "rac/eigensolver.hpp"

#include "rac/errors.hpp"
#include "rac/stokes_basis.hpp"
#include "rac/laplace_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace rac::eigen {

namespace {

constexpr Eigen::Index kBlockSize = 8;

int positive_pivots(const Eigen::MatrixXd& m) {
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
    const Eigen::VectorXd d = ldlt.vectorD();
    return static_cast<int>((d.array() > 0.0).count());
}

}  // namespace

SpectralResult lambda_spectral(const Eigen::MatrixXd& block, int max_iterations, double tolerance) {
    SpectralResult out;
    const Eigen::Index p = block.rows();
    const Eigen::Index q = block.cols();
    out.u = Eigen::VectorXd::Zero(p);
    out.v = Eigen::VectorXd::Zero(q);
    if (p == 0 || q == 0 || block.cwiseAbs().maxCoeff() == 0.0) {
        return out;
    }
    // Block power iteration on C^ C^T with a Rayleigh-Ritz step. The leading
    // start column is all-ones; the block makes the rate depend on
    // sigma_{k+1} / sigma_1 instead of sigma_2 / sigma_1, which matters for the
    // near-degenerate cos/sin pairs.
    const Eigen::Index k = std::min<Eigen::Index>({kBlockSize, p, q});
    Eigen::MatrixXd start(p, k);
    for (Eigen::Index c = 0; c < k; ++c) {
        for (Eigen::Index i = 0; i < p; ++i) {
            // columns 1, cos(pi c (i + 1/2) / p): deterministic and independent
            start(i, c) = std::cos(std::numbers::pi * static_cast<double>(c) *
                                   (static_cast<double>(i) + 0.5) / static_cast<double>(p));
        }
    }
    Eigen::MatrixXd basis = Eigen::HouseholderQR<Eigen::MatrixXd>(start).householderQ() *
                            Eigen::MatrixXd::Identity(p, k);
    double lambda = 0.0;
    for (int it = 1; it <= max_iterations; ++it) {
        const Eigen::MatrixXd w = block.transpose() * basis;
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(w.transpose() * w);
        const double updated = std::sqrt(std::max(0.0, ritz.eigenvalues()(k - 1)));
        const bool done = it > 1 && std::abs(updated - lambda) <= tolerance * updated;
        lambda = updated;
        if (done || lambda == 0.0) {
            out.lambda = lambda;
            if (k > 1) {
                out.second = std::sqrt(std::max(0.0, ritz.eigenvalues()(k - 2)));
            }
            out.u = basis * ritz.eigenvectors().col(k - 1);
            out.u.normalize();
            if (out.u.sum() < 0.0) {
                out.u = -out.u;
            }
            out.v = block.transpose() * out.u;
            if (lambda > 0.0) {
                out.v /= lambda;
            }
            out.iterations = it;
            out.residual = (block * out.v - lambda * out.u).norm();
            return out;
        }
        basis = Eigen::HouseholderQR<Eigen::MatrixXd>(block * w).householderQ() *
                Eigen::MatrixXd::Identity(p, k);
    }
    std::ostringstream msg;
    msg << "power iteration did not converge in " << max_iterations
        << " iterations (last lambda " << lambda << ")";
    throw ConvergenceError(msg.str());
}

int count_above(const Eigen::MatrixXd& block, double lambda, bool block_form) {
    if (!(lambda > 0.0)) {
        throw DomainError("eigenvalue counting needs lambda > 0");
    }
    const Eigen::Index p = block.rows();
    const Eigen::Index q = block.cols();
    if (block_form) {
        // Gamma - lambda I has Schur complement -lambda I + C^T C / lambda on
        // the second block, and -lambda I on the first, which has no positive
        // part; positive eigenvalues are those of C^T C - lambda^2 I
        Eigen::MatrixXd gram = q <= p ? Eigen::MatrixXd(block.transpose() * block)
                                      : Eigen::MatrixXd(block * block.transpose());
        gram.diagonal().array() -= lambda * lambda;
        return positive_pivots(gram);
    }
    Eigen::MatrixXd shifted = coupling::assemble_gamma(block);
    shifted.diagonal().array() -= lambda;
    return positive_pivots(shifted);
}

double det_full(const Eigen::MatrixXd& block, double lambda) {
    Eigen::MatrixXd shifted = coupling::assemble_gamma(block);
    shifted.diagonal().array() -= lambda;
    return Eigen::PartialPivLU<Eigen::MatrixXd>(shifted).determinant();
}

double det_block(const Eigen::MatrixXd& block, double lambda) {
    Eigen::MatrixXd m = -(block * block.transpose());
    m.diagonal().array() += lambda * lambda;
    return Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
}

BisectionResult lambda_bisection(const Eigen::MatrixXd& block, double lo, double delta,
                                 double tolerance, bool block_form) {
    if (!(delta > 0.0) || !(tolerance > 0.0) || lo < 0.0) {
        throw DomainError("bisection needs lo >= 0, delta > 0, tolerance > 0");
    }
    BisectionResult out;
    if (block.size() == 0 || block.cwiseAbs().maxCoeff() == 0.0) {
        if (lo == 0.0) {
            return out;
        }
        throw NoSignChangeError("zero matrix has no eigenvalue in the bracket");
    }
    double a = lo;
    double b = lo + delta;
    if (count_above(block, b, block_form) > 0) {
        throw NoSignChangeError("largest eigenvalue lies above the bracket; widen delta");
    }
    const bool root_above_lo = lo == 0.0 || count_above(block, lo, block_form) > 0;
    if (!root_above_lo) {
        // the largest root may sit exactly at lo (an unchanged ladder level)
        if (lo - tolerance > 0.0 && count_above(block, lo - tolerance, block_form) > 0) {
            out.lambda = lo;
            out.width = tolerance;
            return out;
        }
        throw NoSignChangeError("no eigenvalue in the bracket; lower bound too large");
    }
    while (b - a > tolerance) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) {
            break;
        }
        if (count_above(block, mid, block_form) > 0) {
            a = mid;
        } else {
            b = mid;
        }
        ++out.iterations;
    }
    out.lambda = 0.5 * (a + b);
    out.width = b - a;
    return out;
}

PairingReport pairing_check(const Eigen::MatrixXd& block, double spectrum_tol, double residual_tol) {
    if (block.rows() > 60 || block.cols() > 60) {
        throw DomainError("pairing check is limited to blocks of size <= 60");
    }
    PairingReport rep;
    const Eigen::Index p = block.rows();
    const Eigen::Index q = block.cols();
    const Eigen::MatrixXd gamma = coupling::assemble_gamma(block);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma);
    const Eigen::VectorXd eig = es.eigenvalues();
    const Eigen::MatrixXd z = es.eigenvectors();

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
    const Eigen::VectorXd sv = svd.singularValues();
    std::vector<double> expected;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        expected.push_back(sv(i));
        expected.push_back(-sv(i));
    }
    while (static_cast<Eigen::Index>(expected.size()) < p + q) {
        expected.push_back(0.0);
    }
    std::sort(expected.begin(), expected.end());
    for (Eigen::Index i = 0; i < eig.size(); ++i) {
        const double err = std::abs(eig(i) - expected[static_cast<std::size_t>(i)]);
        if (err > rep.spectrum_error) {
            rep.spectrum_error = err;
            if (err > spectrum_tol) {
                rep.worst_index = static_cast<int>(i);
            }
        }
    }

    for (Eigen::Index i = 0; i < eig.size(); ++i) {
        Eigen::VectorXd flipped = z.col(i);
        flipped.head(p) *= -1.0;
        const double res = (gamma * flipped + eig(i) * flipped).norm();
        if (res > rep.vector_residual) {
            rep.vector_residual = res;
            if (res > residual_tol && rep.worst_index < 0) {
                rep.worst_index = static_cast<int>(i);
            }
        }
        for (Eigen::Index j = i + 1; j < eig.size(); ++j) {
            if (std::abs(eig(j) - eig(i)) > 1e-8) {
                rep.orthogonality = std::max(rep.orthogonality, std::abs(z.col(i).dot(z.col(j))));
            }
        }
    }
    rep.ok = rep.spectrum_error <= spectrum_tol && rep.vector_residual <= residual_tol &&
             rep.orthogonality <= 1e-9;
    return rep;
}

const char* to_string(Backend b) {
    switch (b) {
        case Backend::Spectral: return "spectral";
        case Backend::Bisection: return "bisection";
        case Backend::Both: return "both";
    }
    return "?";
}

Backend parse_backend(const std::string& s) {
    if (s == "spectral") return Backend::Spectral;
    if (s == "bisection") return Backend::Bisection;
    if (s == "both") return Backend::Both;
    throw DomainError("unknown backend '" + s + "'");
}

SolveReport solve_levels(const AnnulusGeometry& g, const std::string& path,
                         const coupling::CouplingMatrix& scaled,
                         std::span<const coupling::TruncationLevel> ladder,
                         const SolveOptions& options) {
    if (!scaled.scaled) {
        throw DomainError("solve_levels expects a scaled coupling matrix");
    }
    SolveReport rep;
    rep.geometry = g;
    rep.path = path;
    rep.backend = options.backend;
    const bool run_spectral = options.backend != Backend::Bisection;
    const bool run_bisection = options.backend != Backend::Spectral;
    if (run_spectral && run_bisection) {
        rep.backend_agreement = 0.0;
    }

    double previous = 0.0;
    try {
        for (const auto& level : ladder) {
            const Eigen::MatrixXd block = coupling::truncated_block(scaled, level);
            LevelRecord rec;
            rec.target = level.target;
            rec.ell = level.ell;
            rec.stokes_cut = level.stokes_cut;
            rec.laplace_cut = level.laplace_cut;
            if (run_spectral) {
                const SpectralResult s = lambda_spectral(block);
                rec.lambda_spectral = s.lambda;
                rec.lambda = s.lambda;
                rec.iterations = s.iterations;
                rec.residual = s.residual;
                if (s.lambda > 0.0 && block.rows() > 1 && block.cols() > 1) {
                    rec.top_gap = (s.lambda - s.second) / s.lambda;
                    rec.degenerate = rec.top_gap < 1e-12;
                }
            }
            if (run_bisection) {
                double delta = options.delta;
                BisectionResult b;
                for (int attempt = 0;; ++attempt) {
                    try {
                        b = lambda_bisection(block, previous, delta);
                        break;
                    } catch (const NoSignChangeError&) {
                        if (attempt >= 20) {
                            throw;
                        }
                        delta *= 2.0;
                    }
                }
                rec.lambda_bisection = b.lambda;
                if (!run_spectral) {
                    rec.lambda = b.lambda;
                    rec.iterations = b.iterations;
                    rec.residual = b.width;
                } else {
                    rep.backend_agreement =
                        std::max(rep.backend_agreement, std::abs(b.lambda - rec.lambda_spectral));
                }
            }
            if (rec.lambda < previous - 1e-12) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "lambda decreased along the ladder at ell = " << rec.ell << ": " << previous
                    << " -> " << rec.lambda;
                throw MonotonicityError(msg.str());
            }
            if (rec.lambda < previous) {
                rep.monotone = false;
            }
            previous = std::max(previous, rec.lambda);
            rec.ra_c = 2.0 / rec.lambda;

            if (level.stokes_cut <= options.pairing_max_ell && level.laplace_cut <= options.pairing_max_ell) {
                const PairingReport pr = pairing_check(block);
                rep.pairing_ok = rep.pairing_ok && pr.ok;
                rep.pairing_error = std::max(rep.pairing_error, pr.spectrum_error);
                ++rep.pairing_levels;
            }
            rep.levels.push_back(rec);
        }
    } catch (...) {
        if (options.partial != nullptr) {
            *options.partial = rep;
        }
        throw;
    }
    return rep;
}

SolveReport solve_ladder(const AnnulusGeometry& g, std::span<const int> targets,
                         const SolveOptions& options) {
    const int count = coupling::enumeration_length(targets);
    const auto stokes_modes = stokes::enumerate_spectrum(g, count);
    const auto laplace_modes = laplace::enumerate_spectrum(g, count);
    std::vector<double> kappas;
    std::vector<double> omegas;
    for (const auto& m : stokes_modes) {
        kappas.push_back(m.kappa);
    }
    for (const auto& m : laplace_modes) {
        omegas.push_back(m.omega);
    }
    const auto ladder = coupling::propose_ladder(kappas, omegas, targets);
    const int rows = ladder.back().stokes_cut;
    const int cols = ladder.back().laplace_cut;
    const auto raw = coupling::assemble_C(
        g, std::span(stokes_modes).first(static_cast<std::size_t>(rows)),
        std::span(laplace_modes).first(static_cast<std::size_t>(cols)), options.assembly);
    return solve_levels(g, "velocity", coupling::scale_C(raw), ladder, options);
}

}  // namespace rac::eigen
