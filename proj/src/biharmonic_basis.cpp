#include "rac/biharmonic_basis.hpp"

#include "clamped_system.hpp"
#include "rac/errors.hpp"
#include "rac/specfun.hpp"
#include "spectrum_scan.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace rac::biharmonic {

using specfun::CylinderKind;

namespace {

double scan_step(const AnnulusGeometry& g) { return std::numbers::pi / (16.0 * g.gap()); }

double lower_bound(const AnnulusGeometry& g, int n) {
    // mu >= |grad psi|^2 / |psi|^2 >= n^2 / r_out^2
    return std::max(n / g.r_out, 1e-3 / g.gap());
}

struct BasisJet {
    std::array<double, 4> f{};
    std::array<double, 4> f1{};
    std::array<double, 4> lap{};  // Laplace of each column (radial factor)
};

BasisJet basis(int n, double k, double r, double i_scale, double k_scale) {
    BasisJet jet;
    const double x = k * r;
    const CylinderKind kinds[4] = {CylinderKind::J, CylinderKind::Y, CylinderKind::I,
                                   CylinderKind::K};
    const double scales[4] = {1.0, 1.0, 1.0 / i_scale, 1.0 / k_scale};
    const double lap_sign[4] = {-1.0, -1.0, 1.0, 1.0};
    for (int c = 0; c < 4; ++c) {
        const double z = scales[c] * specfun::eval(kinds[c], n, x);
        jet.f[c] = z;
        jet.f1[c] = scales[c] * k * specfun::eval_derivative(kinds[c], n, x);
        jet.lap[c] = lap_sign[c] * k * k * z;
    }
    return jet;
}

PsiRadial raw_radial(const BiharmonicMode& mode, double r) {
    const BasisJet jet = basis(mode.n, mode.wavenumber(), r, mode.i_scale, mode.k_scale);
    PsiRadial out;
    for (int c = 0; c < 4; ++c) {
        out.value += mode.coeffs[c] * jet.f[c];
        out.derivative += mode.coeffs[c] * jet.f1[c];
        out.laplacian += mode.coeffs[c] * jet.lap[c];
    }
    return out;
}

}  // namespace

double BiharmonicMode::wavenumber() const { return std::sqrt(mu); }

Eigen::Matrix4d char_matrix(const AnnulusGeometry& g, int n, double k) {
    if (!(k > 0.0)) {
        throw DomainError("biharmonic wavenumber must be positive");
    }
    const double i_scale = specfun::eval(CylinderKind::I, n, k * g.r_out);
    const double k_scale = specfun::eval(CylinderKind::K, n, k * g.r_in);
    const BasisJet inner = basis(n, k, g.r_in, i_scale, k_scale);
    const BasisJet outer = basis(n, k, g.r_out, i_scale, k_scale);
    Eigen::Matrix4d m;
    for (int c = 0; c < 4; ++c) {
        m(0, c) = inner.f[c];
        m(1, c) = inner.f1[c];
        m(2, c) = outer.f[c];
        m(3, c) = outer.f1[c];
    }
    return m;
}

double biharmonic_char_det(const AnnulusGeometry& g, int n, double k) {
    return detail::equilibrated_determinant(char_matrix(g, n, k));
}

std::vector<double> roots_below(const AnnulusGeometry& g, int n, double cutoff) {
    return detail::scan_roots([&](double k) { return biharmonic_char_det(g, n, k); },
                              lower_bound(g, n), cutoff, scan_step(g));
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
                           " biharmonic roots for n = " + std::to_string(n));
}

BiharmonicMode build_mode_at(const AnnulusGeometry& g, int n, Parity parity, int m, double k) {
    if (n == 0 && parity == Parity::Sin) {
        throw DomainError("sin parity requires n >= 1");
    }
    BiharmonicMode mode;
    mode.n = n;
    mode.parity = parity;
    mode.m = m;
    mode.mu = k * k;
    const Eigen::Vector4d x = detail::clamped_nullvector(char_matrix(g, n, k));
    mode.coeffs = {x(0), x(1), x(2), x(3)};
    mode.i_scale = specfun::eval(CylinderKind::I, n, k * g.r_out);
    mode.k_scale = specfun::eval(CylinderKind::K, n, k * g.r_in);

    const int nodes = 64 + static_cast<int>(std::ceil(1.5 * k * g.gap()));
    const QuadratureRule rule = gauss_legendre(nodes, g.r_in, g.r_out);
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double r = rule.nodes[i];
        const double v = raw_radial(mode, r).value;
        integral += rule.weights[i] * v * v * r;
    }
    const double angular = n == 0 ? 2.0 * std::numbers::pi : std::numbers::pi;
    mode.norm = 1.0 / std::sqrt(angular * integral);
    // P(r_in) = P'(r_in) = 0, so the sign is fixed by the wall curvature,
    // which equals the Laplacian there
    if (raw_radial(mode, g.r_in).laplacian < 0.0) {
        for (double& c : mode.coeffs) {
            c = -c;
        }
    }
    return mode;
}

std::vector<BiharmonicMode> enumerate_spectrum(const AnnulusGeometry& g, int ell) {
    const double area = std::numbers::pi * (g.r_out * g.r_out - g.r_in * g.r_in);
    const double initial = 1.1 * std::sqrt(4.0 * std::numbers::pi * (ell + 4) / area) + 2.0;
    const auto entries = detail::enumerate_spectrum(
        ell, initial, [&](int n, double cutoff) { return roots_below(g, n, cutoff); },
        [&](int n) { return lower_bound(g, n); }, specfun::kOrderMax);
    std::vector<BiharmonicMode> modes;
    modes.reserve(entries.size());
    for (const auto& e : entries) {
        modes.push_back(build_mode_at(g, e.n, e.parity, e.m, e.value));
    }
    return modes;
}

PsiRadial radial(const BiharmonicMode& mode, const AnnulusGeometry& g, double r) {
    (void)g;  // kept in the signature for symmetry with the other bases
    PsiRadial p = raw_radial(mode, r);
    p.value *= mode.norm;
    p.derivative *= mode.norm;
    p.laplacian *= mode.norm;
    return p;
}

double evaluate_psi(const BiharmonicMode& mode, const AnnulusGeometry& g, double r, double phi) {
    if (!g.contains_radius(r)) {
        throw DomainError("radius outside the annulus");
    }
    return radial(mode, g, r).value * trig(mode.parity, mode.n, phi);
}

SurfaceGradient evaluate_grad_psi(const BiharmonicMode& mode, const AnnulusGeometry& g, double r,
                                  double phi) {
    if (!g.contains_radius(r)) {
        throw DomainError("radius outside the annulus");
    }
    const PsiRadial p = radial(mode, g, r);
    const TrigTerm dt = trig_derivative(mode.parity, mode.n);
    return {p.derivative * trig(mode.parity, mode.n, phi),
            p.value * dt.coefficient * trig(dt.parity, dt.n, phi) / r};
}

double evaluate_laplacian_psi(const BiharmonicMode& mode, const AnnulusGeometry& g, double r,
                              double phi) {
    if (!g.contains_radius(r)) {
        throw DomainError("radius outside the annulus");
    }
    return radial(mode, g, r).laplacian * trig(mode.parity, mode.n, phi);
}

}  // namespace rac::biharmonic
