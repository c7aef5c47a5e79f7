#include "rac/streamfunction.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>

namespace rac::streamfunction {

namespace {

constexpr TrigTerm kSin1{1.0, Parity::Sin, 1};
constexpr TrigTerm kCos1{1.0, Parity::Cos, 1};

double angular(TrigTerm a, TrigTerm b) {
    const TrigTerm f[2] = {a, b};
    return angular_integral(f);
}

double angular(TrigTerm a, TrigTerm b, TrigTerm c) {
    const TrigTerm f[3] = {a, b, c};
    return angular_integral(f);
}

}  // namespace

std::vector<coupling::ModeTag> tags(std::span<const biharmonic::BiharmonicMode> modes) {
    std::vector<coupling::ModeTag> out;
    out.reserve(modes.size());
    for (const auto& m : modes) {
        out.push_back({m.n, m.parity, m.m, m.mu});
    }
    return out;
}

coupling::CouplingMatrix assemble_B(const AnnulusGeometry& g,
                                    std::span<const biharmonic::BiharmonicMode> biharm,
                                    std::span<const laplace::LaplaceMode> laplace,
                                    const coupling::AssemblyOptions& options) {
    coupling::CouplingMatrix out;
    out.rows = tags(biharm);
    out.cols = coupling::tags(laplace);
    const int nr = static_cast<int>(biharm.size());
    const int nc = static_cast<int>(laplace.size());
    out.entries = Eigen::MatrixXd::Zero(nr, nc);
    if (nr == 0 || nc == 0) {
        return out;
    }
    double k_max = 0.0;
    double w_max = 0.0;
    for (const auto& m : biharm) {
        k_max = std::max(k_max, m.wavenumber());
    }
    for (const auto& m : laplace) {
        w_max = std::max(w_max, m.omega);
    }
    const int nodes = options.radial_nodes > 0 ? options.radial_nodes
                                               : coupling::default_radial_nodes(g, k_max, w_max);
    const QuadratureRule rule = gauss_legendre(nodes, g.r_in, g.r_out);
    const int workers = coupling::worker_count(options.threads);

    Eigen::VectorXd r(nodes);
    Eigen::VectorXd w(nodes);
    for (int i = 0; i < nodes; ++i) {
        r(i) = rule.nodes[static_cast<std::size_t>(i)];
        w(i) = rule.weights[static_cast<std::size_t>(i)];
    }
    Eigen::MatrixXd chi(nodes, nc);
    Eigen::MatrixXd dchi(nodes, nc);
    detail::parallel_for(nc, workers, [&](int k) {
        for (int i = 0; i < nodes; ++i) {
            const auto s = laplace::radial(laplace[static_cast<std::size_t>(k)], r(i));
            chi(i, k) = s.value;
            dchi(i, k) = s.derivative;
        }
    });
    Eigen::MatrixXd psi_w(nodes, nr);
    detail::parallel_for(nr, workers, [&](int j) {
        for (int i = 0; i < nodes; ++i) {
            psi_w(i, j) = w(i) * biharmonic::radial(biharm[static_cast<std::size_t>(j)], g, r(i)).value;
        }
    });

    const double radial_sign = options.flip_grad_s_radial ? -1.0 : 1.0;
    detail::parallel_for(nr, workers, [&](int j) {
        const auto& b = biharm[static_cast<std::size_t>(j)];
        const TrigTerm t_psi{1.0, b.parity, b.n};
        for (int k = 0; k < nc; ++k) {
            const auto& l = laplace[static_cast<std::size_t>(k)];
            const TrigTerm t_chi{1.0, l.parity, l.n};
            const TrigTerm dt = trig_derivative(l.parity, l.n);
            const TrigTerm t_dchi{1.0, dt.parity, dt.n};
            // dchi/dr cos(phi) - (1/r) dchi/dphi (sin(phi) + 1/(b r))
            const double a_cos = angular(t_psi, t_chi, kCos1);
            const double a_sin = l.n == 0 ? 0.0 : angular(t_psi, t_dchi, kSin1);
            const double a_src = l.n == 0 ? 0.0 : angular(t_psi, t_dchi);
            if (a_cos == 0.0 && a_sin == 0.0 && a_src == 0.0) {
                continue;
            }
            double entry = 0.0;
            if (a_cos != 0.0) {
                entry += a_cos * (psi_w.col(j).array() * dchi.col(k).array() * r.array()).sum();
            }
            if (a_sin != 0.0) {
                entry -= radial_sign * dt.coefficient * a_sin *
                         (psi_w.col(j).array() * chi.col(k).array()).sum();
            }
            if (a_src != 0.0) {
                entry -= radial_sign * dt.coefficient * a_src / g.b *
                         (psi_w.col(j).array() * chi.col(k).array() / r.array()).sum();
            }
            out.entries(j, k) = entry;
        }
    });
    return out;
}

coupling::CouplingMatrix scale_B(const coupling::CouplingMatrix& raw) { return coupling::scale_C(raw); }

std::vector<coupling::TruncationLevel> propose_ladder(const AnnulusGeometry& g,
                                                      std::span<const int> targets) {
    const int count = coupling::enumeration_length(targets);
    std::vector<double> rows;
    std::vector<double> cols;
    for (const auto& m : biharmonic::enumerate_spectrum(g, count)) {
        rows.push_back(m.mu);
    }
    for (const auto& m : laplace::enumerate_spectrum(g, count)) {
        cols.push_back(m.omega);
    }
    return coupling::propose_ladder(rows, cols, targets);
}

eigen::SolveReport solve_streamfunction(const AnnulusGeometry& g, std::span<const int> targets,
                                        const eigen::SolveOptions& options) {
    const int count = coupling::enumeration_length(targets);
    const auto biharm = biharmonic::enumerate_spectrum(g, count);
    const auto laplace_modes = laplace::enumerate_spectrum(g, count);
    std::vector<double> mus;
    std::vector<double> omegas;
    for (const auto& m : biharm) {
        mus.push_back(m.mu);
    }
    for (const auto& m : laplace_modes) {
        omegas.push_back(m.omega);
    }
    const auto ladder = coupling::propose_ladder(mus, omegas, targets);
    const auto rows = static_cast<std::size_t>(ladder.back().stokes_cut);
    const auto cols = static_cast<std::size_t>(ladder.back().laplace_cut);
    const auto raw = assemble_B(g, std::span(biharm).first(rows),
                                std::span(laplace_modes).first(cols), options.assembly);
    return eigen::solve_levels(g, "streamfunction", scale_B(raw), ladder, options);
}

}  // namespace rac::streamfunction
