#include "rac/coupling.hpp"

#include "parallel.hpp"
#include "rac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <string>

namespace rac::coupling {

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

int worker_count(int requested) {
    int workers = requested > 0 ? requested
                                : static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("RAC_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) {
            workers = std::min<long>(workers, cap);
        }
    }
    return std::max(1, workers);
}

int default_radial_nodes(const AnnulusGeometry& g, double max_row_wavenumber,
                         double max_col_wavenumber) {
    return 16 + static_cast<int>(std::ceil(1.5 * (max_row_wavenumber + max_col_wavenumber) *
                                           g.gap() / std::numbers::pi));
}

std::vector<ModeTag> tags(std::span<const stokes::StokesMode> modes) {
    std::vector<ModeTag> out;
    out.reserve(modes.size());
    for (const auto& m : modes) {
        out.push_back({m.n, m.parity, m.m, m.kappa});
    }
    return out;
}

std::vector<ModeTag> tags(std::span<const laplace::LaplaceMode> modes) {
    std::vector<ModeTag> out;
    out.reserve(modes.size());
    for (const auto& m : modes) {
        out.push_back({m.n, m.parity, m.m, m.omega});
    }
    return out;
}

CouplingMatrix assemble_C(const AnnulusGeometry& g, std::span<const stokes::StokesMode> stokes,
                          std::span<const laplace::LaplaceMode> laplace,
                          const AssemblyOptions& options) {
    CouplingMatrix out;
    out.rows = tags(stokes);
    out.cols = tags(laplace);
    const int nr = static_cast<int>(stokes.size());
    const int nc = static_cast<int>(laplace.size());
    out.entries = Eigen::MatrixXd::Zero(nr, nc);
    if (nr == 0 || nc == 0) {
        return out;
    }

    double kappa_max = 0.0;
    double omega_max = 0.0;
    for (const auto& s : stokes) {
        kappa_max = std::max(kappa_max, s.kappa);
    }
    for (const auto& l : laplace) {
        omega_max = std::max(omega_max, l.omega);
    }
    const int nodes = options.radial_nodes > 0 ? options.radial_nodes
                                               : default_radial_nodes(g, kappa_max, omega_max);
    const QuadratureRule rule = gauss_legendre(nodes, g.r_in, g.r_out);
    const int workers = worker_count(options.threads);

    // radial profiles on the shared grid, weights folded into the Laplace side
    Eigen::MatrixXd chi_w(nodes, nc);
    detail::parallel_for(nc, workers, [&](int k) {
        for (int i = 0; i < nodes; ++i) {
            chi_w(i, k) = rule.weights[static_cast<std::size_t>(i)] *
                          laplace::radial(laplace[static_cast<std::size_t>(k)], rule.nodes[static_cast<std::size_t>(i)]).value;
        }
    });
    Eigen::MatrixXd vr(nodes, nr);
    Eigen::MatrixXd vphi(nodes, nr);
    std::vector<stokes::VelocityRadial> parities(static_cast<std::size_t>(nr));
    detail::parallel_for(nr, workers, [&](int j) {
        const auto& mode = stokes[static_cast<std::size_t>(j)];
        for (int i = 0; i < nodes; ++i) {
            const auto v = stokes::velocity_radial(mode, g, rule.nodes[static_cast<std::size_t>(i)]);
            vr(i, j) = v.radial_r;
            vphi(i, j) = v.radial_phi;
            if (i == 0) {
                parities[static_cast<std::size_t>(j)] = v;
            }
        }
    });
    Eigen::VectorXd r(nodes);
    for (int i = 0; i < nodes; ++i) {
        r(i) = rule.nodes[static_cast<std::size_t>(i)];
    }

    const double radial_sign = options.flip_grad_s_radial ? -1.0 : 1.0;
    detail::parallel_for(nr, workers, [&](int j) {
        const auto& s = stokes[static_cast<std::size_t>(j)];
        const auto& p = parities[static_cast<std::size_t>(j)];
        const TrigTerm t_r{1.0, p.r_parity, s.n};
        const TrigTerm t_phi{1.0, p.phi_parity, s.n};
        const bool has_radial = s.n != 0;
        for (int k = 0; k < nc; ++k) {
            const auto& l = laplace[static_cast<std::size_t>(k)];
            const TrigTerm t_chi{1.0, l.parity, l.n};
            // grad S . v = (sin phi + 1/(b r)) v_r + cos phi v_phi
            const double a_sin = has_radial ? angular(t_chi, t_r, kSin1) : 0.0;
            const double a_src = has_radial ? angular(t_chi, t_r) : 0.0;
            const double a_cos = angular(t_chi, t_phi, kCos1);
            if (a_sin == 0.0 && a_src == 0.0 && a_cos == 0.0) {
                continue;
            }
            double entry = 0.0;
            if (a_sin != 0.0) {
                entry += radial_sign * a_sin *
                         (chi_w.col(k).array() * vr.col(j).array() * r.array()).sum();
            }
            if (a_src != 0.0) {
                entry += radial_sign * a_src / g.b * (chi_w.col(k).array() * vr.col(j).array()).sum();
            }
            if (a_cos != 0.0) {
                entry += a_cos * (chi_w.col(k).array() * vphi.col(j).array() * r.array()).sum();
            }
            out.entries(j, k) = entry;
        }
    });
    return out;
}

CouplingMatrix scale_C(const CouplingMatrix& raw) {
    if (raw.scaled) {
        throw DomainError("matrix is already scaled");
    }
    CouplingMatrix out = raw;
    for (Eigen::Index j = 0; j < out.entries.rows(); ++j) {
        for (Eigen::Index k = 0; k < out.entries.cols(); ++k) {
            out.entries(j, k) = raw.entries(j, k) /
                                (raw.rows[static_cast<std::size_t>(j)].weight *
                                 raw.cols[static_cast<std::size_t>(k)].weight);
        }
    }
    out.scaled = true;
    return out;
}

CouplingMatrix unscale_C(const CouplingMatrix& scaled) {
    if (!scaled.scaled) {
        throw DomainError("matrix is not scaled");
    }
    CouplingMatrix out = scaled;
    for (Eigen::Index j = 0; j < out.entries.rows(); ++j) {
        for (Eigen::Index k = 0; k < out.entries.cols(); ++k) {
            out.entries(j, k) = scaled.entries(j, k) *
                                (scaled.rows[static_cast<std::size_t>(j)].weight *
                                 scaled.cols[static_cast<std::size_t>(k)].weight);
        }
    }
    out.scaled = false;
    return out;
}

Eigen::MatrixXd truncated_block(const CouplingMatrix& scaled, const TruncationLevel& level) {
    if (level.stokes_cut < 0 || level.laplace_cut < 0 ||
        level.stokes_cut > scaled.entries.rows() || level.laplace_cut > scaled.entries.cols()) {
        throw DomainError("truncation cut exceeds the assembled matrix");
    }
    return scaled.entries.topLeftCorner(level.stokes_cut, level.laplace_cut);
}

Eigen::MatrixXd assemble_gamma(const Eigen::MatrixXd& block) {
    const Eigen::Index p = block.rows();
    const Eigen::Index q = block.cols();
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(p + q, p + q);
    gamma.topRightCorner(p, q) = block;
    gamma.bottomLeftCorner(q, p) = block.transpose();
    return gamma;
}

Eigen::MatrixXd assemble_gamma(const CouplingMatrix& scaled, const TruncationLevel& level) {
    return assemble_gamma(truncated_block(scaled, level));
}

bool is_multiplicity_safe(std::span<const double> values, int cut) {
    if (cut < 1 || cut >= static_cast<int>(values.size())) {
        return false;
    }
    const double inside = values[static_cast<std::size_t>(cut - 1)];
    const double outside = values[static_cast<std::size_t>(cut)];
    return outside - inside > 1e-9 * std::abs(inside);
}

std::vector<TruncationLevel> propose_ladder(std::span<const double> row_values,
                                            std::span<const double> col_values,
                                            std::span<const int> targets) {
    std::vector<int> sorted(targets.begin(), targets.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<TruncationLevel> ladder;
    int previous = 0;
    for (int target : sorted) {
        if (target < 1) {
            throw DomainError("ladder targets must be positive");
        }
        int cut = std::max(target, previous + 1);
        while (!(is_multiplicity_safe(row_values, cut) && is_multiplicity_safe(col_values, cut))) {
            ++cut;
            if (cut >= static_cast<int>(std::min(row_values.size(), col_values.size()))) {
                throw DomainError("spectra too short to place a multiplicity-safe cut near " +
                                  std::to_string(target));
            }
        }
        ladder.push_back({target, cut, cut, cut});
        previous = cut;
    }
    return ladder;
}

int enumeration_length(std::span<const int> targets) {
    int top = 0;
    for (int t : targets) {
        top = std::max(top, t);
    }
    return 2 * top + 20;
}

std::vector<TruncationLevel> propose_ladder(const AnnulusGeometry& g, std::span<const int> targets) {
    const int count = enumeration_length(targets);
    std::vector<double> rows;
    std::vector<double> cols;
    for (const auto& m : stokes::enumerate_spectrum(g, count)) {
        rows.push_back(m.kappa);
    }
    for (const auto& m : laplace::enumerate_spectrum(g, count)) {
        cols.push_back(m.omega);
    }
    return propose_ladder(rows, cols, targets);
}

std::size_t zero_count(const CouplingMatrix& m) {
    return static_cast<std::size_t>((m.entries.array() == 0.0).count());
}

void write_csv(std::ostream& out, const CouplingMatrix& raw, const CouplingMatrix& scaled) {
    if (raw.entries.rows() != scaled.entries.rows() || raw.entries.cols() != scaled.entries.cols()) {
        throw DomainError("raw and scaled matrices differ in shape");
    }
    out << "j,k,n_v,parity_v,m_v,n_chi,parity_chi,m_chi,raw,scaled\n";
    const auto old_precision = out.precision(17);
    for (Eigen::Index j = 0; j < raw.entries.rows(); ++j) {
        const ModeTag& rt = raw.rows[static_cast<std::size_t>(j)];
        for (Eigen::Index k = 0; k < raw.entries.cols(); ++k) {
            const ModeTag& ct = raw.cols[static_cast<std::size_t>(k)];
            out << j + 1 << ',' << k + 1 << ',' << rt.n << ',' << to_string(rt.parity) << ','
                << rt.m << ',' << ct.n << ',' << to_string(ct.parity) << ',' << ct.m << ','
                << raw.entries(j, k) << ',' << scaled.entries(j, k) << '\n';
        }
    }
    out.precision(old_precision);
}

}  // namespace rac::coupling
