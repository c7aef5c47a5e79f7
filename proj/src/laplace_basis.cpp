#include "rac/laplace_basis.hpp"

#include "rac/errors.hpp"
#include "rac/specfun.hpp"
#include "spectrum_scan.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace rac::laplace {

using specfun::CylinderKind;

namespace {

double scan_step(const AnnulusGeometry& g) { return std::numbers::pi / (16.0 * g.gap()); }

double lower_bound(const AnnulusGeometry& g, int n) {
    // omega^2 > n^2 / r_out^2 from the angular part of the Rayleigh quotient
    return n == 0 ? 1e-3 / g.gap() : n / g.r_out;
}

double unnormalized_radial(const LaplaceMode& mode, double r) {
    return mode.c_J * specfun::eval(CylinderKind::J, mode.n, mode.omega * r) +
           mode.c_Y * specfun::eval(CylinderKind::Y, mode.n, mode.omega * r);
}

}  // namespace

double cross_product(const AnnulusGeometry& g, int n, double omega) {
    if (!(omega > 0.0)) {
        throw DomainError("omega must be positive");
    }
    const double a = omega * g.r_in;
    const double b = omega * g.r_out;
    return specfun::eval(CylinderKind::J, n, a) * specfun::eval(CylinderKind::Y, n, b) -
           specfun::eval(CylinderKind::J, n, b) * specfun::eval(CylinderKind::Y, n, a);
}

double cross_product_scale(const AnnulusGeometry& g, int n, double omega) {
    const double a = omega * g.r_in;
    const double b = omega * g.r_out;
    return std::abs(specfun::eval(CylinderKind::J, n, a) * specfun::eval(CylinderKind::Y, n, b)) +
           std::abs(specfun::eval(CylinderKind::J, n, b) * specfun::eval(CylinderKind::Y, n, a));
}

std::vector<double> roots_below(const AnnulusGeometry& g, int n, double cutoff) {
    return detail::scan_roots([&](double w) { return cross_product(g, n, w); }, lower_bound(g, n),
                              cutoff, scan_step(g));
}

std::vector<double> find_roots(const AnnulusGeometry& g, int n, int count) {
    if (count < 1 || count > 400) {
        throw DomainError("root count must lie in [1, 400]");
    }
    // roots are asymptotically spaced by pi / gap
    double cutoff = lower_bound(g, n) + (count + 2) * std::numbers::pi / g.gap();
    for (int attempt = 0; attempt < 32; ++attempt, cutoff *= 1.25) {
        std::vector<double> roots = roots_below(g, n, cutoff);
        if (static_cast<int>(roots.size()) >= count) {
            roots.resize(static_cast<std::size_t>(count));
            return roots;
        }
    }
    throw ConvergenceError("could not bracket " + std::to_string(count) + " roots for n = " +
                           std::to_string(n));
}

LaplaceMode build_mode(const AnnulusGeometry& g, int n, Parity parity, int m, double omega) {
    if (n == 0 && parity == Parity::Sin) {
        throw DomainError("sin parity requires n >= 1");
    }
    LaplaceMode mode;
    mode.n = n;
    mode.parity = parity;
    mode.m = m;
    mode.omega = omega;
    mode.c_J = specfun::eval(CylinderKind::Y, n, omega * g.r_in);
    mode.c_Y = -specfun::eval(CylinderKind::J, n, omega * g.r_in);

    const int nodes = 48 + static_cast<int>(std::ceil(1.5 * omega * g.gap()));
    const QuadratureRule rule = gauss_legendre(nodes, g.r_in, g.r_out);
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double r = rule.nodes[i];
        const double v = unnormalized_radial(mode, r);
        integral += rule.weights[i] * v * v * r;
    }
    const double angular = n == 0 ? 2.0 * std::numbers::pi : std::numbers::pi;
    // R'(r_in) = -2 norm / (pi r_in) by the Wronskian, so the sign is fixed
    mode.norm = 1.0 / std::sqrt(angular * integral);
    return mode;
}

std::vector<LaplaceMode> enumerate_spectrum(const AnnulusGeometry& g, int ell) {
    const double area = std::numbers::pi * (g.r_out * g.r_out - g.r_in * g.r_in);
    // Weyl estimate N(omega) ~ area omega^2 / (4 pi)
    const double initial = 1.1 * std::sqrt(4.0 * std::numbers::pi * (ell + 4) / area) + 1.0;
    const auto entries = detail::enumerate_spectrum(
        ell, initial, [&](int n, double cutoff) { return roots_below(g, n, cutoff); },
        [&](int n) { return lower_bound(g, n); }, specfun::kOrderMax);
    std::vector<LaplaceMode> modes;
    modes.reserve(entries.size());
    std::map<int, std::size_t> highest;  // n -> index of the largest-m mode
    for (const auto& e : entries) {
        modes.push_back(build_mode(g, e.n, e.parity, e.m, e.value));
        auto [it, fresh] = highest.try_emplace(e.n, modes.size() - 1);
        if (!fresh && modes[it->second].m < e.m) {
            it->second = modes.size() - 1;
        }
    }
    // a skipped root would shift m away from the Sturm node count
    for (const auto& [n, index] : highest) {
        const LaplaceMode& mode = modes[index];
        if (radial_node_count(mode, g) != mode.m - 1) {
            throw ConvergenceError("root scan for n = " + std::to_string(n) +
                                   " is inconsistent with the Sturm node count");
        }
    }
    return modes;
}

RadialSample radial(const LaplaceMode& mode, double r) {
    const double x = mode.omega * r;
    const double value = mode.c_J * specfun::eval(CylinderKind::J, mode.n, x) +
                         mode.c_Y * specfun::eval(CylinderKind::Y, mode.n, x);
    const double deriv = mode.c_J * specfun::eval_derivative(CylinderKind::J, mode.n, x) +
                         mode.c_Y * specfun::eval_derivative(CylinderKind::Y, mode.n, x);
    return {mode.norm * value, mode.norm * mode.omega * deriv};
}

double evaluate_chi(const LaplaceMode& mode, const AnnulusGeometry& g, double r, double phi) {
    if (!g.contains_radius(r)) {
        throw DomainError("radius outside the annulus");
    }
    return radial(mode, r).value * trig(mode.parity, mode.n, phi);
}

SurfaceGradient evaluate_grad_chi(const LaplaceMode& mode, const AnnulusGeometry& g, double r,
                                  double phi) {
    if (!g.contains_radius(r)) {
        throw DomainError("radius outside the annulus");
    }
    const RadialSample s = radial(mode, r);
    const TrigTerm dt = trig_derivative(mode.parity, mode.n);
    return {s.derivative * trig(mode.parity, mode.n, phi),
            s.value * dt.coefficient * trig(dt.parity, dt.n, phi) / r};
}

int radial_node_count(const LaplaceMode& mode, const AnnulusGeometry& g) {
    constexpr int kSamples = 4000;
    int changes = 0;
    double prev = 0.0;
    for (int i = 1; i < kSamples; ++i) {
        const double r = g.r_in + g.gap() * i / kSamples;
        const double v = radial(mode, r).value;
        if (prev != 0.0 && v != 0.0 && std::signbit(prev) != std::signbit(v)) {
            ++changes;
        }
        if (v != 0.0) {
            prev = v;
        }
    }
    return changes;
}

}  // namespace rac::laplace
