#include "rac/diagnostics.hpp"

#include "rac/errors.hpp"
#include "rac/specfun.hpp"
#include "rac/streamfunction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace rac::diagnostics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Richardson-extrapolated central differences (fourth order)
double d1(const std::function<double(double)>& f, double x, double h) {
    auto c = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
    return (4.0 * c(0.5 * h) - c(h)) / 3.0;
}

double d2(const std::function<double(double)>& f, double x, double h) {
    const double fx = f(x);
    auto c = [&](double s) { return (f(x + s) - 2.0 * fx + f(x - s)) / (s * s); };
    return (4.0 * c(0.5 * h) - c(h)) / 3.0;
}

// 50 interior radii, strictly inside the annulus
std::vector<double> interior_radii(const AnnulusGeometry& g) {
    std::vector<double> r(50);
    for (int i = 0; i < 50; ++i) {
        r[static_cast<std::size_t>(i)] = g.r_in + (i + 1) * g.gap() / 51.0;
    }
    return r;
}

double radial_step(const AnnulusGeometry& g, double r, double wavenumber) {
    const double wall = std::min(r - g.r_in, g.r_out - r);
    return std::min(0.02 / std::max(wavenumber, 1.0), 0.5 * wall);
}

// applies d^2/dr^2 + (1/r) d/dr - n^2 / r^2 to a radial profile
double radial_laplacian_fd(const std::function<double(double)>& f, double r, int n, double h) {
    return d2(f, r, h) + d1(f, r, h) / r - n * n * f(r) / (r * r);
}

int radial_nodes(const AnnulusGeometry& g, double k) {
    return 80 + static_cast<int>(std::ceil(2.0 * k * g.gap()));
}

bool nonzero_triple(Parity p1, int n1, Parity p2, int n2, Parity p3, int n3) {
    const Parity ps[3] = {p1, p2, p3};
    const int ns[3] = {n1, n2, n3};
    int sins = 0;
    for (int i = 0; i < 3; ++i) {
        if (ps[i] == Parity::Sin) {
            if (ns[i] == 0) {
                return false;
            }
            ++sins;
        }
    }
    if (sins % 2 != 0) {
        return false;
    }
    return n1 == n2 + n3 || n2 == n1 + n3 || n3 == n1 + n2;
}

Parity flip(Parity p) { return p == Parity::Cos ? Parity::Sin : Parity::Cos; }

}  // namespace

double AnnulusQuadrature::phi(int k) const { return kTwoPi * k / n_phi; }

double AnnulusQuadrature::weight(std::size_t i) const {
    return radial.weights[i] * radial.nodes[i] * kTwoPi / n_phi;
}

AnnulusQuadrature make_quadrature(const AnnulusGeometry& g, int n_r, int n_phi) {
    return {gauss_legendre(n_r, g.r_in, g.r_out), n_phi};
}

double frobenius_gradient_sq(const stokes::Velocity& v, const stokes::VelocityGradient& d, double r,
                             double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    // v_x = v_r c - v_phi s,  v_y = v_r s + v_phi c
    const double dx_dr = d.dvr_dr * c - d.dvphi_dr * s;
    const double dy_dr = d.dvr_dr * s + d.dvphi_dr * c;
    const double dx_dphi = d.dvr_dphi * c - v.v_r * s - d.dvphi_dphi * s - v.v_phi * c;
    const double dy_dphi = d.dvr_dphi * s + v.v_r * c + d.dvphi_dphi * c - v.v_phi * s;
    return dx_dr * dx_dr + dy_dr * dy_dr + (dx_dphi * dx_dphi + dy_dphi * dy_dphi) / (r * r);
}

double gram_deviation(const AnnulusGeometry& g, std::span<const laplace::LaplaceMode> modes) {
    double k_max = 0.0;
    int n_max = 0;
    for (const auto& m : modes) {
        k_max = std::max(k_max, m.omega);
        n_max = std::max(n_max, m.n);
    }
    const auto q = make_quadrature(g, radial_nodes(g, k_max), 4 * n_max + 16);
    const auto count = static_cast<Eigen::Index>(modes.size());
    Eigen::MatrixXd values(count, static_cast<Eigen::Index>(q.radial.size()) * q.n_phi);
    Eigen::VectorXd w(values.cols());
    for (std::size_t i = 0; i < q.radial.size(); ++i) {
        for (int k = 0; k < q.n_phi; ++k) {
            const auto col = static_cast<Eigen::Index>(i) * q.n_phi + k;
            w(col) = q.weight(i);
            for (Eigen::Index j = 0; j < count; ++j) {
                values(j, col) = laplace::evaluate_chi(modes[static_cast<std::size_t>(j)], g,
                                                       q.radial.nodes[i], q.phi(k));
            }
        }
    }
    const Eigen::MatrixXd gram = values * w.asDiagonal() * values.transpose();
    return (gram - Eigen::MatrixXd::Identity(count, count)).cwiseAbs().maxCoeff();
}

double gram_deviation(const AnnulusGeometry& g, std::span<const stokes::StokesMode> modes) {
    double k_max = 0.0;
    int n_max = 0;
    for (const auto& m : modes) {
        k_max = std::max(k_max, m.kappa);
        n_max = std::max(n_max, m.n);
    }
    const auto q = make_quadrature(g, radial_nodes(g, k_max), 4 * n_max + 16);
    const auto count = static_cast<Eigen::Index>(modes.size());
    const auto points = static_cast<Eigen::Index>(q.radial.size()) * q.n_phi;
    Eigen::MatrixXd values(count, 2 * points);
    Eigen::VectorXd w(2 * points);
    for (std::size_t i = 0; i < q.radial.size(); ++i) {
        for (int k = 0; k < q.n_phi; ++k) {
            const auto col = static_cast<Eigen::Index>(i) * q.n_phi + k;
            w(col) = w(points + col) = q.weight(i);
            for (Eigen::Index j = 0; j < count; ++j) {
                const auto v = stokes::evaluate_velocity(modes[static_cast<std::size_t>(j)], g,
                                                         q.radial.nodes[i], q.phi(k));
                values(j, col) = v.v_r;
                values(j, points + col) = v.v_phi;
            }
        }
    }
    const Eigen::MatrixXd gram = values * w.asDiagonal() * values.transpose();
    return (gram - Eigen::MatrixXd::Identity(count, count)).cwiseAbs().maxCoeff();
}

double gram_deviation(const AnnulusGeometry& g, std::span<const biharmonic::BiharmonicMode> modes) {
    double k_max = 0.0;
    int n_max = 0;
    for (const auto& m : modes) {
        k_max = std::max(k_max, m.wavenumber());
        n_max = std::max(n_max, m.n);
    }
    const auto q = make_quadrature(g, radial_nodes(g, k_max), 4 * n_max + 16);
    const auto count = static_cast<Eigen::Index>(modes.size());
    Eigen::MatrixXd values(count, static_cast<Eigen::Index>(q.radial.size()) * q.n_phi);
    Eigen::VectorXd w(values.cols());
    for (std::size_t i = 0; i < q.radial.size(); ++i) {
        for (int k = 0; k < q.n_phi; ++k) {
            const auto col = static_cast<Eigen::Index>(i) * q.n_phi + k;
            w(col) = q.weight(i);
            for (Eigen::Index j = 0; j < count; ++j) {
                values(j, col) = biharmonic::evaluate_psi(modes[static_cast<std::size_t>(j)], g,
                                                          q.radial.nodes[i], q.phi(k));
            }
        }
    }
    const Eigen::MatrixXd gram = values * w.asDiagonal() * values.transpose();
    return (gram - Eigen::MatrixXd::Identity(count, count)).cwiseAbs().maxCoeff();
}

double boundary_trace(const AnnulusGeometry& g, const laplace::LaplaceMode& mode) {
    double worst = 0.0;
    for (double r : {g.r_in, g.r_out}) {
        for (int k = 0; k < 720; ++k) {
            worst = std::max(worst, std::abs(laplace::evaluate_chi(mode, g, r, kTwoPi * k / 720.0)));
        }
    }
    return worst;
}

double boundary_trace(const AnnulusGeometry& g, const stokes::StokesMode& mode) {
    double worst = 0.0;
    for (double r : {g.r_in, g.r_out}) {
        for (int k = 0; k < 720; ++k) {
            const auto v = stokes::evaluate_velocity(mode, g, r, kTwoPi * k / 720.0);
            worst = std::max(worst, std::hypot(v.v_r, v.v_phi));
        }
    }
    return worst;
}

double boundary_trace(const AnnulusGeometry& g, const biharmonic::BiharmonicMode& mode) {
    double worst = 0.0;
    for (double r : {g.r_in, g.r_out}) {
        for (int k = 0; k < 720; ++k) {
            const double phi = kTwoPi * k / 720.0;
            worst = std::max(worst, std::abs(biharmonic::evaluate_psi(mode, g, r, phi)));
            worst = std::max(worst, std::abs(biharmonic::evaluate_grad_psi(mode, g, r, phi).d_r));
        }
    }
    return worst;
}

double laplace_pde_residual(const AnnulusGeometry& g, const laplace::LaplaceMode& mode) {
    double worst = 0.0;
    const double hp = 0.02 / std::max(mode.n, 1);
    for (double r : interior_radii(g)) {
        const double hr = radial_step(g, r, mode.omega);
        for (int k = 0; k < 50; ++k) {
            const double phi = kTwoPi * k / 50.0;
            auto fr = [&](double s) { return laplace::evaluate_chi(mode, g, s, phi); };
            auto fp = [&](double s) { return laplace::evaluate_chi(mode, g, r, s); };
            const double lap = d2(fr, r, hr) + d1(fr, r, hr) / r + d2(fp, phi, hp) / (r * r);
            worst = std::max(worst, std::abs(lap + mode.omega * mode.omega * fr(r)));
        }
    }
    return worst / (mode.omega * mode.omega);
}

double stokes_ode_residual(const AnnulusGeometry& g, const stokes::StokesMode& mode) {
    const double k2 = mode.kappa * mode.kappa;
    double worst = 0.0;
    double scale = 0.0;
    for (double r : interior_radii(g)) {
        const double h = radial_step(g, r, mode.kappa);
        if (mode.n == 0) {
            auto u = [&](double s) { return stokes::profile(mode, g, s)[0]; };
            const double res = radial_laplacian_fd(u, r, 1, h) + k2 * u(r);
            worst = std::max(worst, std::abs(res));
            scale = std::max(scale, k2 * std::abs(u(r)));
            continue;
        }
        // Laplace of the stream profile, from the analytic f, f', f''
        auto lap = [&](double s) {
            const auto p = stokes::profile(mode, g, s);
            return p[2] + p[1] / s - mode.n * mode.n * p[0] / (s * s);
        };
        const double res = radial_laplacian_fd(lap, r, mode.n, h) + k2 * lap(r);
        worst = std::max(worst, std::abs(res));
        scale = std::max(scale, k2 * std::abs(lap(r)));
    }
    return worst / scale;
}

double stokes_divergence(const AnnulusGeometry& g, const stokes::StokesMode& mode) {
    double worst = 0.0;
    const double hp = 0.02 / std::max(mode.n, 1);
    for (double r : interior_radii(g)) {
        const double hr = radial_step(g, r, mode.kappa);
        for (int k = 0; k < 50; ++k) {
            const double phi = kTwoPi * k / 50.0;
            auto rvr = [&](double s) { return s * stokes::evaluate_velocity(mode, g, s, phi).v_r; };
            auto vphi = [&](double s) { return stokes::evaluate_velocity(mode, g, r, s).v_phi; };
            const double div = (d1(rvr, r, hr) + d1(vphi, phi, hp)) / r;
            worst = std::max(worst, std::abs(div));
        }
    }
    return worst;
}

double stokes_dirichlet_error(const AnnulusGeometry& g, const stokes::StokesMode& mode) {
    const auto q = make_quadrature(g, radial_nodes(g, mode.kappa), 4 * mode.n + 16);
    double total = 0.0;
    for (std::size_t i = 0; i < q.radial.size(); ++i) {
        const double r = q.radial.nodes[i];
        for (int k = 0; k < q.n_phi; ++k) {
            const double phi = q.phi(k);
            total += q.weight(i) * frobenius_gradient_sq(stokes::evaluate_velocity(mode, g, r, phi),
                                                         stokes::evaluate_velocity_gradient(mode, g, r, phi),
                                                         r, phi);
        }
    }
    const double k2 = mode.kappa * mode.kappa;
    return std::abs(total - k2) / k2;
}

double biharmonic_pde_residual(const AnnulusGeometry& g, const biharmonic::BiharmonicMode& mode) {
    double worst = 0.0;
    double scale = 0.0;
    for (double r : interior_radii(g)) {
        const double h = radial_step(g, r, mode.wavenumber());
        auto lap = [&](double s) { return biharmonic::radial(mode, g, s).laplacian; };
        const double value = biharmonic::radial(mode, g, r).value;
        const double res = radial_laplacian_fd(lap, r, mode.n, h) - mode.mu * mode.mu * value;
        worst = std::max(worst, std::abs(res));
        scale = std::max(scale, mode.mu * mode.mu * std::abs(value));
    }
    return worst / scale;
}

double biharmonic_delta_norm_error(const AnnulusGeometry& g, const biharmonic::BiharmonicMode& mode) {
    const auto q = make_quadrature(g, radial_nodes(g, mode.wavenumber()), 4 * mode.n + 16);
    double total = 0.0;
    for (std::size_t i = 0; i < q.radial.size(); ++i) {
        for (int k = 0; k < q.n_phi; ++k) {
            const double l = biharmonic::evaluate_laplacian_psi(mode, g, q.radial.nodes[i], q.phi(k));
            total += q.weight(i) * l * l;
        }
    }
    const double mu2 = mode.mu * mode.mu;
    return std::abs(total - mu2) / mu2;
}

int entry_bound_violations(const AnnulusGeometry& g, const coupling::CouplingMatrix& raw) {
    if (raw.scaled) {
        throw DomainError("entry bound applies to the raw matrix");
    }
    const double bound = std::sqrt(2.0) * gamma_S(g);
    return static_cast<int>((raw.entries.array().abs() > bound).count());
}

std::size_t predicted_zero_count_C(std::span<const coupling::ModeTag> rows,
                                   std::span<const coupling::ModeTag> cols) {
    std::size_t zeros = 0;
    for (const auto& s : rows) {
        // v_r carries the phi-derivative parity of the stream function, v_phi its own
        const Parity pr = flip(s.parity);
        const Parity pp = s.n == 0 ? Parity::Cos : s.parity;
        for (const auto& l : cols) {
            bool nonzero = nonzero_triple(l.parity, l.n, pp, s.n, Parity::Cos, 1);
            if (s.n != 0) {
                nonzero = nonzero || nonzero_triple(l.parity, l.n, pr, s.n, Parity::Sin, 1) ||
                          nonzero_triple(l.parity, l.n, pr, s.n, Parity::Cos, 0);
            }
            zeros += nonzero ? 0 : 1;
        }
    }
    return zeros;
}

QuotientCheck quotient_check(const AnnulusGeometry& g, int target,
                             const coupling::AssemblyOptions& assembly) {
    const int targets[1] = {target};
    const int count = coupling::enumeration_length(targets);
    const auto s_all = stokes::enumerate_spectrum(g, count);
    const auto l_all = laplace::enumerate_spectrum(g, count);
    std::vector<double> kap;
    std::vector<double> om;
    for (const auto& m : s_all) {
        kap.push_back(m.kappa);
    }
    for (const auto& m : l_all) {
        om.push_back(m.omega);
    }
    const auto level = coupling::propose_ladder(kap, om, targets).front();
    const auto s_modes = std::span(s_all).first(static_cast<std::size_t>(level.stokes_cut));
    const auto l_modes = std::span(l_all).first(static_cast<std::size_t>(level.laplace_cut));
    const auto scaled = coupling::scale_C(coupling::assemble_C(g, s_modes, l_modes, assembly));
    const auto sol = eigen::lambda_spectral(coupling::truncated_block(scaled, level));

    // c~ = u / sqrt 2, d~ = v / sqrt 2; physical coefficients c = c~ / kappa, d = d~ / omega
    std::vector<double> c(s_modes.size());
    std::vector<double> d(l_modes.size());
    double k_max = 0.0;
    int n_max = 0;
    for (std::size_t j = 0; j < s_modes.size(); ++j) {
        c[j] = sol.u(static_cast<Eigen::Index>(j)) / std::sqrt(2.0) / s_modes[j].kappa;
        k_max = std::max(k_max, s_modes[j].kappa);
        n_max = std::max(n_max, s_modes[j].n);
    }
    for (std::size_t k = 0; k < l_modes.size(); ++k) {
        d[k] = sol.v(static_cast<Eigen::Index>(k)) / std::sqrt(2.0) / l_modes[k].omega;
        k_max = std::max(k_max, l_modes[k].omega);
        n_max = std::max(n_max, l_modes[k].n);
    }

    const auto q = make_quadrature(g, radial_nodes(g, 2.0 * k_max), 4 * n_max + 24);
    double functional = 0.0;
    double dissipation = 0.0;
    for (std::size_t i = 0; i < q.radial.size(); ++i) {
        const double r = q.radial.nodes[i];
        for (int k = 0; k < q.n_phi; ++k) {
            const double phi = q.phi(k);
            stokes::Velocity w;
            stokes::VelocityGradient dw;
            for (std::size_t j = 0; j < s_modes.size(); ++j) {
                const auto v = stokes::evaluate_velocity(s_modes[j], g, r, phi);
                const auto dv = stokes::evaluate_velocity_gradient(s_modes[j], g, r, phi);
                w.v_r += c[j] * v.v_r;
                w.v_phi += c[j] * v.v_phi;
                dw.dvr_dr += c[j] * dv.dvr_dr;
                dw.dvr_dphi += c[j] * dv.dvr_dphi;
                dw.dvphi_dr += c[j] * dv.dvphi_dr;
                dw.dvphi_dphi += c[j] * dv.dvphi_dphi;
            }
            double theta = 0.0;
            SurfaceGradient dtheta;
            for (std::size_t m = 0; m < l_modes.size(); ++m) {
                theta += d[m] * laplace::evaluate_chi(l_modes[m], g, r, phi);
                const auto gc = laplace::evaluate_grad_chi(l_modes[m], g, r, phi);
                dtheta.d_r += d[m] * gc.d_r;
                dtheta.d_phi_over_r += d[m] * gc.d_phi_over_r;
            }
            const auto gs = grad_S(g, r, phi);
            functional += q.weight(i) * theta * (gs.d_r * w.v_r + gs.d_phi_over_r * w.v_phi);
            dissipation += q.weight(i) * (frobenius_gradient_sq(w, dw, r, phi) +
                                          dtheta.d_r * dtheta.d_r +
                                          dtheta.d_phi_over_r * dtheta.d_phi_over_r);
        }
    }
    QuotientCheck out;
    out.lambda = sol.lambda;
    out.functional = functional;
    out.dissipation = dissipation;
    out.quotient = functional / dissipation;
    out.relative_error = std::abs(out.quotient - 0.5 * sol.lambda) / (0.5 * sol.lambda);
    return out;
}

double skew_symmetry_defect(const AnnulusGeometry& g, const biharmonic::BiharmonicMode& psi,
                            const laplace::LaplaceMode& chi) {
    const auto q = make_quadrature(g, radial_nodes(g, psi.wavenumber() + chi.omega),
                                   2 * (psi.n + chi.n) + 16);
    double first = 0.0;
    double second = 0.0;
    for (std::size_t i = 0; i < q.radial.size(); ++i) {
        const double r = q.radial.nodes[i];
        for (int k = 0; k < q.n_phi; ++k) {
            const double phi = q.phi(k);
            const auto gs = grad_S(g, r, phi);
            const auto gc = laplace::evaluate_grad_chi(chi, g, r, phi);
            const auto gp = biharmonic::evaluate_grad_psi(psi, g, r, phi);
            // e . (a x b) = a_r b_phi - a_phi b_r in the (e_r, e_phi) frame
            first += q.weight(i) * biharmonic::evaluate_psi(psi, g, r, phi) *
                     (gc.d_r * gs.d_phi_over_r - gc.d_phi_over_r * gs.d_r);
            second += q.weight(i) * laplace::evaluate_chi(chi, g, r, phi) *
                      (gp.d_r * gs.d_phi_over_r - gp.d_phi_over_r * gs.d_r);
        }
    }
    return std::abs(first + second);
}

double measured_gamma_star(const AnnulusGeometry& g, const coupling::CouplingMatrix& raw_B) {
    const double gii = gamma_S_II(g);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < raw_B.entries.rows(); ++j) {
        for (Eigen::Index k = 0; k < raw_B.entries.cols(); ++k) {
            const double scale = gii * std::max(raw_B.rows[static_cast<std::size_t>(j)].weight,
                                                raw_B.cols[static_cast<std::size_t>(k)].weight);
            worst = std::max(worst, std::abs(raw_B.entries(j, k)) / scale);
        }
    }
    return worst;
}

std::vector<CheckResult> run_validation(const AnnulusGeometry& g, const ValidateOptions& options) {
    std::vector<CheckResult> out;
    auto add = [&](const std::string& module, const std::string& invariant, double observed,
                   double threshold) {
        out.push_back({module, invariant, observed <= threshold, observed, threshold});
    };
    const int modes = std::clamp(options.modes, 1, 40);
    const int max_ell = std::clamp(options.max_ell, 4, 40);

    {
        using specfun::CylinderKind;
        double wr = 0.0;
        double mw = 0.0;
        for (int n : {0, 1, 5, 20, 40}) {
            for (double x : {0.5, 1.0, 5.0, 50.0, 500.0}) {
                const double w = specfun::eval(CylinderKind::J, n + 1, x) * specfun::eval(CylinderKind::Y, n, x) -
                                 specfun::eval(CylinderKind::J, n, x) * specfun::eval(CylinderKind::Y, n + 1, x);
                wr = std::max(wr, std::abs(w * std::numbers::pi * x / 2.0 - 1.0));
                if (x <= 50.0) {
                    const double m = specfun::eval(CylinderKind::I, n, x) * specfun::eval(CylinderKind::K, n + 1, x) +
                                     specfun::eval(CylinderKind::I, n + 1, x) * specfun::eval(CylinderKind::K, n, x);
                    mw = std::max(mw, std::abs(m * x - 1.0));
                }
            }
        }
        add("specfun", "Wronskian J/Y (relative)", wr, 1e-11);
        add("specfun", "Wronskian I/K (relative)", mw, 1e-11);
    }

    {
        const double gs = gamma_S(g);
        const double g2 = gamma_S_II(g);
        add("geometry", "gamma_S >= gamma_S_II >= 1 (violation)",
            std::max({0.0, g2 - gs, 1.0 - g2}), 0.0);
        double fd = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double r = g.r_in + (i + 0.5) * g.gap() / 20.0;
            const double phi = 0.37 + 0.29 * i;
            const double h = 1e-5;
            const auto grad = grad_S(g, r, phi);
            const double dr = (potential_S(g, r + h, phi) - potential_S(g, r - h, phi)) / (2 * h);
            const double dp = (potential_S(g, r, phi + h) - potential_S(g, r, phi - h)) / (2 * h * r);
            fd = std::max({fd, std::abs(dr - grad.d_r) / std::max(1.0, std::abs(grad.d_r)),
                           std::abs(dp - grad.d_phi_over_r) / std::max(1.0, std::abs(grad.d_phi_over_r))});
        }
        add("geometry", "grad_S vs finite differences", fd, 1e-8);
    }

    const auto l_modes = laplace::enumerate_spectrum(g, modes);
    const auto s_modes = stokes::enumerate_spectrum(g, modes);
    const auto b_modes = biharmonic::enumerate_spectrum(g, modes);
    {
        double trace = 0.0;
        double pde = 0.0;
        for (const auto& m : l_modes) {
            trace = std::max(trace, boundary_trace(g, m));
            pde = std::max(pde, laplace_pde_residual(g, m));
        }
        add("laplace_basis", "boundary trace", trace, 1e-10);
        add("laplace_basis", "Gram deviation", gram_deviation(g, l_modes), 1e-8);
        add("laplace_basis", "PDE residual (relative)", pde, 1e-6);
    }
    {
        double trace = 0.0;
        double ode = 0.0;
        double div = 0.0;
        double dir = 0.0;
        for (const auto& m : s_modes) {
            trace = std::max(trace, boundary_trace(g, m));
            ode = std::max(ode, stokes_ode_residual(g, m));
            div = std::max(div, stokes_divergence(g, m));
            dir = std::max(dir, stokes_dirichlet_error(g, m));
        }
        add("stokes_basis", "boundary trace", trace, 1e-9);
        add("stokes_basis", "Gram deviation", gram_deviation(g, s_modes), 1e-8);
        add("stokes_basis", "ODE residual (relative)", ode, 1e-6);
        add("stokes_basis", "divergence", div, 1e-6);
        add("stokes_basis", "Dirichlet form = kappa^2 (relative)", dir, 1e-6);
    }
    {
        double trace = 0.0;
        double pde = 0.0;
        double dn = 0.0;
        for (const auto& m : b_modes) {
            trace = std::max(trace, boundary_trace(g, m));
            pde = std::max(pde, biharmonic_pde_residual(g, m));
            dn = std::max(dn, biharmonic_delta_norm_error(g, m));
        }
        add("biharmonic_xcheck", "clamped boundary trace", trace, 1e-9);
        add("biharmonic_xcheck", "Gram deviation", gram_deviation(g, b_modes), 1e-8);
        add("biharmonic_xcheck", "PDE residual (relative)", pde, 1e-5);
        add("biharmonic_xcheck", "Laplace-norm = mu^2 (relative)", dn, 1e-5);
    }

    {
        const auto raw = coupling::assemble_C(g, s_modes, l_modes, options.assembly);
        add("coupling", "entry bound violations", entry_bound_violations(g, raw), 0.0);
        const auto predicted = predicted_zero_count_C(raw.rows, raw.cols);
        const auto actual = coupling::zero_count(raw);
        add("coupling", "structural zeros: |actual - predicted|",
            std::abs(static_cast<double>(actual) - static_cast<double>(predicted)), 0.0);
        coupling::AssemblyOptions doubled = options.assembly;
        double k_max = 0.0;
        double w_max = 0.0;
        for (const auto& m : s_modes) {
            k_max = std::max(k_max, m.kappa);
        }
        for (const auto& m : l_modes) {
            w_max = std::max(w_max, m.omega);
        }
        doubled.radial_nodes = 2 * coupling::default_radial_nodes(g, k_max, w_max);
        const auto fine = coupling::assemble_C(g, s_modes, l_modes, doubled);
        const double conv = ((fine.entries - raw.entries).array().abs() /
                             (1.0 + raw.entries.array().abs())).maxCoeff();
        add("coupling", "quadrature doubling change", conv, 1e-10);
        const auto qc = quotient_check(g, std::min(22, max_ell), options.assembly);
        add("coupling", "F/D of reconstructed maximizer = lambda/2 (relative)", qc.relative_error, 1e-6);
    }

    {
        std::vector<int> targets;
        for (int t : {7, 12, 22, max_ell}) {
            if (t <= max_ell && (targets.empty() || t > targets.back())) {
                targets.push_back(t);
            }
        }
        eigen::SolveOptions so;
        so.backend = eigen::Backend::Both;
        so.assembly = options.assembly;
        bool monotone = true;
        eigen::SolveReport rep;
        try {
            rep = eigen::solve_ladder(g, targets, so);
        } catch (const MonotonicityError&) {
            monotone = false;
        }
        add("eigensolver", "ladder monotone (violations)", monotone && rep.monotone ? 0.0 : 1.0, 0.0);
        if (monotone) {
            add("eigensolver", "backend agreement", rep.backend_agreement, 1e-10);
            add("eigensolver", "+-lambda pairing spectrum error", rep.pairing_error, 1e-10);
        }
        const auto raw = coupling::assemble_C(g, std::span(s_modes).first(static_cast<std::size_t>(std::min(modes, 20))),
                                              std::span(l_modes).first(static_cast<std::size_t>(std::min(modes, 20))),
                                              options.assembly);
        const auto sol = eigen::lambda_spectral(coupling::scale_C(raw).entries);
        const auto block = coupling::scale_C(raw).entries;
        const double quotient = (sol.u / std::sqrt(2.0)).dot(block * (sol.v / std::sqrt(2.0))) /
                                (0.5 * sol.u.squaredNorm() + 0.5 * sol.v.squaredNorm());
        add("eigensolver", "maximizer quotient = lambda/2", std::abs(quotient - 0.5 * sol.lambda), 1e-12);
    }

    {
        const auto bl = std::span(b_modes).first(static_cast<std::size_t>(std::min(modes, 12)));
        const auto ll = std::span(l_modes).first(static_cast<std::size_t>(std::min(modes, 12)));
        double skew = 0.0;
        for (const auto& b : bl) {
            for (const auto& l : ll) {
                skew = std::max(skew, skew_symmetry_defect(g, b, l));
            }
        }
        add("biharmonic_xcheck", "skew symmetry defect", skew, 1e-9);
        const auto raw = streamfunction::assemble_B(g, b_modes, l_modes, options.assembly);
        const double gstar = measured_gamma_star(g, raw);
        add("biharmonic_xcheck", "measured gamma_* finite and positive (violation)",
            std::isfinite(gstar) && gstar > 0.0 ? 0.0 : 1.0, 0.0);
        std::vector<int> targets;
        for (int t : {7, 12, 22, max_ell}) {
            if (t <= max_ell && (targets.empty() || t > targets.back())) {
                targets.push_back(t);
            }
        }
        bool monotone = true;
        try {
            const auto rep = streamfunction::solve_streamfunction(g, targets);
            monotone = rep.monotone;
        } catch (const MonotonicityError&) {
            monotone = false;
        }
        add("biharmonic_xcheck", "ladder monotone (violations)", monotone ? 0.0 : 1.0, 0.0);
    }
    return out;
}

}  // namespace rac::diagnostics
