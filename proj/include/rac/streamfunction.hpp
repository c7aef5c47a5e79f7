#pragma once

#include "rac/biharmonic_basis.hpp"
#include "rac/coupling.hpp"
#include "rac/eigensolver.hpp"
#include "rac/laplace_basis.hpp"

#include <span>
#include <vector>

namespace rac::streamfunction {

std::vector<coupling::ModeTag> tags(std::span<const biharmonic::BiharmonicMode> modes);

/// B_{j,k} = (psi_j, e_1 . (grad chi_k x grad S)), e_1 the cylinder axis:
///   integrand psi [dchi/dr (1/r) dS/dphi - (1/r) dchi/dphi dS/dr].
/// Row weights are mu_j, column weights omega_k.
coupling::CouplingMatrix assemble_B(const AnnulusGeometry& g,
                                    std::span<const biharmonic::BiharmonicMode> biharm,
                                    std::span<const laplace::LaplaceMode> laplace,
                                    const coupling::AssemblyOptions& options = {});

/// B~_{j,k} = B_{j,k} / (mu_j omega_k).
coupling::CouplingMatrix scale_B(const coupling::CouplingMatrix& raw);

/// Ladder over the biharmonic (by mu) and Laplace spectra.
std::vector<coupling::TruncationLevel> propose_ladder(const AnnulusGeometry& g,
                                                      std::span<const int> targets);

/// Same pipeline as eigen::solve_ladder with B~ in place of C~.
eigen::SolveReport solve_streamfunction(const AnnulusGeometry& g, std::span<const int> targets,
                                        const eigen::SolveOptions& options = {});

}  // namespace rac::streamfunction
