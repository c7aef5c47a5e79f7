#include "oracles.hpp"

#include "rac/errors.hpp"
#include "rac/laplace_basis.hpp"
#include "rac/specfun.hpp"

#include <doctest.h>

#include <algorithm>
#include <tuple>

using rac::Parity;
using rac::make_geometry;
namespace lap = rac::laplace;
using rac::specfun::CylinderKind;

namespace {

// cross product written out from the cylinder functions
double oracle_cross(const rac::AnnulusGeometry& g, int n, double w) {
    using rac::specfun::eval;
    return eval(CylinderKind::J, n, w * g.r_in) * eval(CylinderKind::Y, n, w * g.r_out) -
           eval(CylinderKind::J, n, w * g.r_out) * eval(CylinderKind::Y, n, w * g.r_in);
}

std::vector<double> oracle_roots(const rac::AnnulusGeometry& g, int n, double hi, double step) {
    return oracle::scan_roots([&](double w) { return oracle_cross(g, n, w); }, 0.1, hi, step);
}

struct Entry {
    double omega;
    int n;
    Parity parity;
};

// brute-force enumeration over n <= 40, m <= 40, globally sorted
std::vector<Entry> oracle_enumeration(const rac::AnnulusGeometry& g, double cutoff) {
    std::vector<Entry> all;
    for (int n = 0; n <= 40; ++n) {
        auto roots = oracle_roots(g, n, cutoff, 2e-3);
        if (roots.size() > 40) {
            roots.resize(40);
        }
        for (double w : roots) {
            all.push_back({w, n, Parity::Cos});
            if (n > 0) {
                all.push_back({w, n, Parity::Sin});
            }
        }
    }
    std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
        if (std::abs(a.omega - b.omega) > 1e-9) {
            return a.omega < b.omega;
        }
        return std::tie(a.n, a.parity) < std::tie(b.n, b.parity);
    });
    return all;
}

}  // namespace

TEST_CASE("roots of the cross product match the fine scan") {
    const auto g = make_geometry(1.0);
    const auto scan = oracle_roots(g, 0, 20.0, 1e-3);
    const auto lib = lap::roots_below(g, 0, 20.0);
    REQUIRE(scan.size() == lib.size());
    for (std::size_t i = 0; i < scan.size(); ++i) {
        CHECK(std::abs(scan[i] - lib[i]) < 1e-10);
        // sign change across each reported root
        CHECK((oracle_cross(g, 0, lib[i] - 1e-7) < 0) != (oracle_cross(g, 0, lib[i] + 1e-7) < 0));
    }
    const auto first = lap::find_roots(g, 0, 3);
    REQUIRE(first.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(first[i] - scan[i]) < 1e-10);
    }
    // extended precision for the first root
    const double lo = scan[0] - 1e-4;
    const double hi = scan[0] + 1e-4;
    const oracle::mp ri = g.r_in;
    const oracle::mp ro = g.r_out;
    const double exact = oracle::mp_root(
        [&](const oracle::mp& w) {
            return oracle::bessel_j(0, w * ri) * oracle::bessel_y(0, w * ro) -
                   oracle::bessel_j(0, w * ro) * oracle::bessel_y(0, w * ri);
        },
        lo, hi);
    CHECK(std::abs(first[0] - exact) < 1e-10);
}

TEST_CASE("root asymptotics and ordering in n") {
    const auto g = make_geometry(1.0);
    const auto r0 = lap::find_roots(g, 0, 20);
    const auto r1 = lap::find_roots(g, 1, 20);
    CHECK(std::abs(r0[4] / (5.0 * std::numbers::pi) - 1.0) < 0.02);
    for (int m = 0; m < 20; ++m) {
        CHECK(r1[static_cast<std::size_t>(m)] > r0[static_cast<std::size_t>(m)]);
    }
    for (std::size_t i = 1; i < r0.size(); ++i) {
        CHECK(r0[i] - r0[i - 1] > 1e-6);
    }
}

TEST_CASE("enumeration matches the brute-force oracle") {
    for (double A : {1.0, 10.0}) {
        const auto g = make_geometry(A);
        const auto modes = lap::enumerate_spectrum(g, 40);
        const auto ref = oracle_enumeration(g, modes.back().omega + 0.5);
        REQUIRE(ref.size() >= modes.size());
        for (std::size_t i = 0; i < modes.size(); ++i) {
            CAPTURE(A);
            CAPTURE(i);
            CHECK(modes[i].n == ref[i].n);
            CHECK(modes[i].parity == ref[i].parity);
            CHECK(std::abs(modes[i].omega - ref[i].omega) < 1e-9);
        }
        // ordering and multiplicities as emitted
        for (std::size_t i = 1; i < modes.size(); ++i) {
            CHECK(modes[i].omega >= modes[i - 1].omega);
        }
        for (std::size_t i = 0; i < modes.size(); ++i) {
            if (modes[i].n == 0) {
                CHECK(modes[i].parity == Parity::Cos);
            } else if (modes[i].parity == Parity::Cos && i + 1 < modes.size()) {
                CHECK(modes[i + 1].n == modes[i].n);
                CHECK(modes[i + 1].parity == Parity::Sin);
                CHECK(modes[i + 1].omega == modes[i].omega);
            }
        }
    }
    // the l = 12 prefix uses no n beyond the largest n whose first root lies below the last omega
    const auto g = make_geometry(1.0);
    const auto modes = lap::enumerate_spectrum(g, 12);
    int n_allowed = 0;
    for (int n = 0; n <= 40; ++n) {
        if (oracle_roots(g, n, modes.back().omega + 1e-9, 2e-3).empty()) {
            break;
        }
        n_allowed = n;
    }
    for (const auto& m : modes) {
        CHECK(m.n <= n_allowed);
    }
}

TEST_CASE("boundary values and Sturm node count") {
    for (double A : {1.0, 10.0}) {
        const auto g = make_geometry(A);
        for (const auto& m : lap::enumerate_spectrum(g, 30)) {
            for (int k = 0; k < 720; ++k) {
                const double phi = 2.0 * std::numbers::pi * k / 720.0;
                CHECK(std::abs(lap::evaluate_chi(m, g, g.r_in, phi)) < 1e-10);
                CHECK(std::abs(lap::evaluate_chi(m, g, g.r_out, phi)) < 1e-10);
            }
            CHECK(lap::radial_node_count(m, g) == m.m - 1);
        }
        CHECK_THROWS_AS(lap::evaluate_chi(lap::enumerate_spectrum(g, 1)[0], g, g.r_in - 0.1, 0.0),
                        rac::DomainError);
    }
}

TEST_CASE("orthonormality under an independent tensor rule") {
    for (double A : {1.0, 10.0}) {
        const auto g = make_geometry(A);
        const auto modes = lap::enumerate_spectrum(g, 30);
        const auto t = oracle::tensor_rule<100>(g.r_in, g.r_out, 96);
        Eigen::MatrixXd v(static_cast<Eigen::Index>(modes.size()), static_cast<Eigen::Index>(t.w.size()));
        for (std::size_t i = 0; i < t.w.size(); ++i) {
            for (std::size_t j = 0; j < modes.size(); ++j) {
                v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
                    lap::evaluate_chi(modes[j], g, t.r[i], t.phi[i]);
            }
        }
        const Eigen::Map<const Eigen::VectorXd> w(t.w.data(), static_cast<Eigen::Index>(t.w.size()));
        const Eigen::MatrixXd gram = v * w.asDiagonal() * v.transpose();
        CAPTURE(A);
        CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("Helmholtz residual by h-refined five-point Laplacian") {
    for (double A : {1.0, 10.0}) {
        const auto g = make_geometry(A);
        for (const auto& m : lap::enumerate_spectrum(g, 12)) {
            double worst = 0.0;
            for (int i = 1; i <= 50; ++i) {
                const double r = g.r_in + i * g.gap() / 51.0;
                const double h = std::min(0.02 / m.omega, 0.4 * std::min(r - g.r_in, g.r_out - r));
                for (int k = 0; k < 50; ++k) {
                    const double phi = 2.0 * std::numbers::pi * k / 50.0;
                    auto f = [&](double rr, double pp) { return lap::evaluate_chi(m, g, rr, pp); };
                    auto five = [&](double s) {
                        const double kk = s;  // angular step, same size
                        const double c = f(r, phi);
                        return (f(r + s, phi) - 2 * c + f(r - s, phi)) / (s * s) +
                               (f(r + s, phi) - f(r - s, phi)) / (2 * s * r) +
                               (f(r, phi + kk) - 2 * c + f(r, phi - kk)) / (r * r * kk * kk);
                    };
                    const double lap_h = (4.0 * five(0.5 * h) - five(h)) / 3.0;
                    worst = std::max(worst, std::abs(lap_h + m.omega * m.omega * f(r, phi)));
                }
            }
            CAPTURE(A);
            CAPTURE(m.n);
            CAPTURE(m.m);
            CHECK(worst < 1e-6 * m.omega * m.omega);
        }
    }
}

TEST_CASE("gradient against finite differences") {
    const auto g = make_geometry(1.0);
    for (const auto& m : lap::enumerate_spectrum(g, 10)) {
        for (double r : {0.7, 1.0, 1.33}) {
            for (double phi : {0.2, 2.0, 4.4}) {
                const auto grad = lap::evaluate_grad_chi(m, g, r, phi);
                const double dr = oracle::derivative([&](double s) { return lap::evaluate_chi(m, g, s, phi); }, r, 1e-3);
                const double dp =
                    oracle::derivative([&](double s) { return lap::evaluate_chi(m, g, r, s); }, phi, 1e-3) / r;
                CHECK(std::abs(grad.d_r - dr) < 1e-7 * m.omega);
                CHECK(std::abs(grad.d_phi_over_r - dp) < 1e-7 * m.omega);
            }
        }
    }
}
