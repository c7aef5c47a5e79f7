#include "rac/geometry.hpp"

#include "rac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace rac {

namespace {

void require_radius(const AnnulusGeometry& g, double r) {
    if (!g.contains_radius(r)) {
        throw DomainError("radius " + std::to_string(r) + " outside [" + std::to_string(g.r_in) +
                          ", " + std::to_string(g.r_out) + "]");
    }
}

// Golden-section maximization of f on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi, double& arg) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > 1e-12 * (1.0 + std::abs(a) + std::abs(b))) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    arg = 0.5 * (a + b);
    double best = f(arg);
    for (double x : {lo, hi}) {
        if (const double fx = f(x); fx > best) {
            best = fx;
            arg = x;
        }
    }
    return best;
}

// Coarse (r, phi) grid followed by alternating golden-section sweeps.
double maximize_over_annulus(const AnnulusGeometry& g,
                             const std::function<double(const SurfaceGradient&)>& measure) {
    constexpr int kRadial = 64;
    constexpr int kAngular = 720;
    const double two_pi = 2.0 * std::numbers::pi;
    auto value = [&](double r, double phi) { return measure(grad_S(g, r, phi)); };

    double best = -1.0;
    double best_r = g.r_in;
    double best_phi = 0.0;
    for (int i = 0; i <= kRadial; ++i) {
        const double r = g.r_in + g.gap() * i / kRadial;
        for (int k = 0; k < kAngular; ++k) {
            const double phi = two_pi * k / kAngular;
            if (const double v = value(r, phi); v > best) {
                best = v;
                best_r = r;
                best_phi = phi;
            }
        }
    }
    const double dphi = two_pi / kAngular;
    const double dr = g.gap() / kRadial;
    for (int sweep = 0; sweep < 4; ++sweep) {
        double arg = best_phi;
        golden_max([&](double phi) { return value(best_r, phi); }, best_phi - dphi,
                   best_phi + dphi, arg);
        best_phi = arg;
        const double r_lo = std::max(g.r_in, best_r - dr);
        const double r_hi = std::min(g.r_out, best_r + dr);
        best = golden_max([&](double r) { return value(r, best_phi); }, r_lo, r_hi, arg);
        best_r = arg;
    }
    return best;
}

}  // namespace

bool AnnulusGeometry::contains_radius(double r) const {
    // accept rounding noise at the boundary circles
    const double slack = 1e-12 * r_out;
    return r >= r_in - slack && r <= r_out + slack;
}

AnnulusGeometry make_geometry(double A) {
    if (!(A > 0.0) || !std::isfinite(A)) {
        throw DomainError("A must be positive");
    }
    AnnulusGeometry g;
    g.A = A;
    g.r_in = 0.5 * A;
    g.r_out = 1.0 + 0.5 * A;
    g.b = std::log1p(2.0 / A);
    return g;
}

double potential_S(const AnnulusGeometry& g, double r, double phi) {
    require_radius(g, r);
    return r * std::sin(phi) + std::log(r) / g.b;
}

SurfaceGradient grad_S(const AnnulusGeometry& g, double r, double phi) {
    require_radius(g, r);
    return {std::sin(phi) + 1.0 / (g.b * r), std::cos(phi)};
}

double gamma_S(const AnnulusGeometry& g) {
    return maximize_over_annulus(
        g, [](const SurfaceGradient& s) { return std::abs(s.d_r) + std::abs(s.d_phi_over_r); });
}

double gamma_S_II(const AnnulusGeometry& g) {
    return maximize_over_annulus(g, [](const SurfaceGradient& s) { return std::hypot(s.d_r, s.d_phi_over_r); });
}

}  // namespace rac
