#include "rac/stokes_basis.hpp"

#include "clamped_system.hpp"
#include "rac/errors.hpp"
#include "rac/laplace_basis.hpp"
#include "rac/specfun.hpp"
#include "spectrum_scan.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace rac::stokes {

using specfun::CylinderKind;

namespace {

double scan_step(const AnnulusGeometry& g) { return std::numbers::pi / (16.0 * g.gap()); }

double lower_bound(const AnnulusGeometry& g, int n) {
    // Cartesian velocity components carry angular orders n - 1 and n + 1; the
    // n == 0 modes are the Laplace n == 1 radial problem
    if (n == 0) {
        return 1.0 / g.r_out;
    }
    return std::max((n - 1) / g.r_out, 1e-3 / g.gap());
}

// value, first and second r-derivative of the four stream basis functions
struct BasisJet {
    std::array<double, 4> f{};
    std::array<double, 4> f1{};
    std::array<double, 4> f2{};
};

BasisJet stream_basis(const AnnulusGeometry& g, int n, double kappa, double r) {
    BasisJet jet;
    const double x = kappa * r;
    const double dn = n;
    const CylinderKind kinds[2] = {CylinderKind::J, CylinderKind::Y};
    for (int c = 0; c < 2; ++c) {
        const double z = specfun::eval(kinds[c], n, x);
        const double dz = specfun::eval_derivative(kinds[c], n, x);
        jet.f[c] = z;
        jet.f1[c] = kappa * dz;
        // Bessel equation: Z'' = -Z'/x - (1 - n^2/x^2) Z
        jet.f2[c] = kappa * kappa * (-dz / x - (1.0 - dn * dn / (x * x)) * z);
    }
    const double p = std::pow(r / g.r_out, n);
    const double q = std::pow(g.r_in / r, n);
    jet.f[2] = p;
    jet.f1[2] = dn * p / r;
    jet.f2[2] = dn * (dn - 1.0) * p / (r * r);
    jet.f[3] = q;
    jet.f1[3] = -dn * q / r;
    jet.f2[3] = dn * (dn + 1.0) * q / (r * r);
    return jet;
}

// azimuthal n == 0 profile basis J_1, Y_1 with derivatives
BasisJet azimuthal_basis(double kappa, double r) {
    BasisJet jet;
    const double x = kappa * r;
    const CylinderKind kinds[2] = {CylinderKind::J, CylinderKind::Y};
    for (int c = 0; c < 2; ++c) {
        const double z = specfun::eval(kinds[c], 1, x);
        const double dz = specfun::eval_derivative(kinds[c], 1, x);
        jet.f[c] = z;
        jet.f1[c] = kappa * dz;
        jet.f2[c] = kappa * kappa * (-dz / x - (1.0 - 1.0 / (x * x)) * z);
    }
    return jet;
}

std::array<double, 3> combine(const BasisJet& jet, const std::array<double, 4>& c) {
    std::array<double, 3> out{};
    for (int k = 0; k < 4; ++k) {
        out[0] += c[k] * jet.f[k];
        out[1] += c[k] * jet.f1[k];
        out[2] += c[k] * jet.f2[k];
    }
    return out;
}

std::array<double, 3> raw_profile(const StokesMode& mode, const AnnulusGeometry& g, double r) {
    const BasisJet jet =
        mode.n == 0 ? azimuthal_basis(mode.kappa, r) : stream_basis(g, mode.n, mode.kappa, r);
    return combine(jet, mode.coeffs);
}

}  // namespace

Eigen::Matrix4d char_matrix(const AnnulusGeometry& g, int n, double kappa) {
    if (n < 1) {
        throw DomainError("the 4x4 characteristic matrix is defined for n >= 1");
    }
    if (!(kappa > 0.0)) {
        throw DomainError("kappa must be positive");
    }
    Eigen::Matrix4d m;
    const BasisJet inner = stream_basis(g, n, kappa, g.r_in);
    const BasisJet outer = stream_basis(g, n, kappa, g.r_out);
    for (int c = 0; c < 4; ++c) {
        m(0, c) = inner.f[c];
        m(1, c) = inner.f1[c];
        m(2, c) = outer.f[c];
        m(3, c) = outer.f1[c];
    }
    return m;
}

double char_det(const AnnulusGeometry& g, int n, double kappa) {
    if (n == 0) {
        return laplace::cross_product(g, 1, kappa);
    }
    return detail::equilibrated_determinant(char_matrix(g, n, kappa));
}

std::vector<double> roots_below(const AnnulusGeometry& g, int n, double cutoff) {
    return detail::scan_roots([&](double k) { return char_det(g, n, k); }, lower_bound(g, n),
                              cutoff, scan_step(g));
}

std::vector<double> find_roots(const AnnulusGeometry& g, int n, int count) {
    if (count < 1 || count > 400) {
        throw DomainError("root count must lie in [1, 400]");
    }
    double cutoff = lower_bound(g, n) + (count + 3) * std::numbers::pi / g.gap();
    for (int attempt = 0; attempt < 32; ++attempt, cutoff *= 1.25) {
        std::vector<double> roots = roots_below(g, n, cutoff);
        if (static_cast<int>(roots.size()) >= count) {
            roots.resize(static_cast<std::size_t>(count));
            return roots;
        }
    }
    throw ConvergenceError("could not bracket " + std::to_string(count) +
                           " Stokes roots for n = " + std::to_string(n));
}

StokesMode build_mode_at(const AnnulusGeometry& g, int n, Parity parity, int m, double kappa) {
    if (n == 0 && parity == Parity::Sin) {
        throw DomainError("sin parity requires n >= 1");
    }
    StokesMode mode;
    mode.n = n;
    mode.parity = parity;
    mode.m = m;
    mode.kappa = kappa;
    if (n == 0) {
        mode.coeffs = {specfun::eval(CylinderKind::Y, 1, kappa * g.r_in),
                       -specfun::eval(CylinderKind::J, 1, kappa * g.r_in), 0.0, 0.0};
    } else {
        const Eigen::Vector4d x = detail::clamped_nullvector(char_matrix(g, n, kappa));
        mode.coeffs = {x(0), x(1), x(2), x(3)};
    }

    const int nodes = 64 + static_cast<int>(std::ceil(1.5 * kappa * g.gap()));
    const QuadratureRule rule = gauss_legendre(nodes, g.r_in, g.r_out);
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double r = rule.nodes[i];
        const auto p = raw_profile(mode, g, r);
        if (n == 0) {
            integral += rule.weights[i] * p[0] * p[0] * r;
        } else {
            integral += rule.weights[i] * (n * n * p[0] * p[0] / (r * r) + p[1] * p[1]) * r;
        }
    }
    const double angular = n == 0 ? 2.0 * std::numbers::pi : std::numbers::pi;
    mode.norm = 1.0 / std::sqrt(angular * integral);

    // sign: u'(r_in) > 0 for n == 0, f''(r_in) > 0 otherwise
    const auto wall = raw_profile(mode, g, g.r_in);
    if ((n == 0 ? wall[1] : wall[2]) < 0.0) {
        for (double& c : mode.coeffs) {
            c = -c;
        }
    }
    return mode;
}

StokesMode build_mode(const AnnulusGeometry& g, int n, Parity parity, int m) {
    const std::vector<double> roots = find_roots(g, n, m);
    return build_mode_at(g, n, parity, m, roots.back());
}

std::vector<StokesMode> enumerate_spectrum(const AnnulusGeometry& g, int ell) {
    const double area = std::numbers::pi * (g.r_out * g.r_out - g.r_in * g.r_in);
    const double initial = 1.1 * std::sqrt(4.0 * std::numbers::pi * (ell + 4) / area) + 2.0;
    const auto entries = detail::enumerate_spectrum(
        ell, initial, [&](int n, double cutoff) { return roots_below(g, n, cutoff); },
        [&](int n) { return lower_bound(g, n); }, specfun::kOrderMax);
    std::vector<StokesMode> modes;
    modes.reserve(entries.size());
    for (const auto& e : entries) {
        modes.push_back(build_mode_at(g, e.n, e.parity, e.m, e.value));
    }
    return modes;
}

std::array<double, 3> profile(const StokesMode& mode, const AnnulusGeometry& g, double r) {
    auto p = raw_profile(mode, g, r);
    for (double& v : p) {
        v *= mode.norm;
    }
    return p;
}

VelocityRadial velocity_radial(const StokesMode& mode, const AnnulusGeometry& g, double r) {
    const auto p = profile(mode, g, r);
    VelocityRadial out;
    if (mode.n == 0) {
        out.radial_r = 0.0;
        out.radial_phi = p[0];
        return out;
    }
    const TrigTerm dt = trig_derivative(mode.parity, mode.n);
    out.radial_r = dt.coefficient * p[0] / r;
    out.r_parity = dt.parity;
    out.radial_phi = -p[1];
    out.phi_parity = mode.parity;
    return out;
}

Velocity evaluate_velocity(const StokesMode& mode, const AnnulusGeometry& g, double r, double phi) {
    if (!g.contains_radius(r)) {
        throw DomainError("radius outside the annulus");
    }
    const VelocityRadial v = velocity_radial(mode, g, r);
    return {v.radial_r * trig(v.r_parity, mode.n, phi),
            v.radial_phi * trig(v.phi_parity, mode.n, phi)};
}

VelocityGradient evaluate_velocity_gradient(const StokesMode& mode, const AnnulusGeometry& g,
                                            double r, double phi) {
    if (!g.contains_radius(r)) {
        throw DomainError("radius outside the annulus");
    }
    const auto p = profile(mode, g, r);
    VelocityGradient out;
    if (mode.n == 0) {
        out.dvphi_dr = p[1];
        return out;
    }
    const int n = mode.n;
    const TrigTerm d1 = trig_derivative(mode.parity, n);  // d/dphi T_p = d1.c * T_q
    const TrigTerm d2 = trig_derivative(d1.parity, n);    // d/dphi T_q = d2.c * T_p
    const double tp = trig(mode.parity, n, phi);
    const double tq = trig(d1.parity, n, phi);
    // v_r = c1 f T_q / r,  v_phi = -f' T_p
    out.dvr_dr = d1.coefficient * (p[1] / r - p[0] / (r * r)) * tq;
    out.dvr_dphi = d1.coefficient * d2.coefficient * p[0] / r * tp;
    out.dvphi_dr = -p[2] * tp;
    out.dvphi_dphi = -p[1] * d1.coefficient * tq;
    return out;
}

}  // namespace rac::stokes
