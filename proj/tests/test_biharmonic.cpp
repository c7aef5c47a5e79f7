#include "oracles.hpp"

#include "rac/biharmonic_basis.hpp"
#include "rac/diagnostics.hpp"
#include "rac/geometry.hpp"
#include "rac/laplace_basis.hpp"
#include "rac/specfun.hpp"
#include "rac/streamfunction.hpp"

#include <doctest.h>

#include <random>

using rac::Parity;
using rac::make_geometry;
namespace bih = rac::biharmonic;
namespace lap = rac::laplace;
using rac::specfun::CylinderKind;
using rac::specfun::eval;
using rac::specfun::eval_derivative;

namespace {

Eigen::Matrix4d oracle_matrix(const rac::AnnulusGeometry& g, int n, double k) {
    Eigen::Matrix4d m;
    int row = 0;
    const CylinderKind kinds[4] = {CylinderKind::J, CylinderKind::Y, CylinderKind::I, CylinderKind::K};
    for (double r : {g.r_in, g.r_out}) {
        for (int c = 0; c < 4; ++c) {
            m(row, c) = eval(kinds[c], n, k * r);
            m(row + 1, c) = k * eval_derivative(kinds[c], n, k * r);
        }
        row += 2;
    }
    for (int c = 0; c < 4; ++c) {
        m.col(c) /= m.col(c).cwiseAbs().maxCoeff();
    }
    for (int r = 0; r < 4; ++r) {
        m.row(r) /= m.row(r).cwiseAbs().maxCoeff();
    }
    return m;
}

// e . (a x b) in the polar frame
double cross(const rac::SurfaceGradient& a, const rac::SurfaceGradient& b) {
    return a.d_r * b.d_phi_over_r - a.d_phi_over_r * b.d_r;
}

}  // namespace

TEST_CASE("clamped roots against the independent characteristic system") {
    for (double A : {1.0, 10.0}) {
        const auto g = make_geometry(A);
        for (int n : {0, 1, 2, 5, 10}) {
            const auto lib = bih::roots_below(g, n, 30.0);
            const auto ref = oracle::scan_roots([&](double k) { return oracle_matrix(g, n, k).determinant(); },
                                                0.5, 30.0, 5e-3);
            CAPTURE(A);
            CAPTURE(n);
            REQUIRE(lib.size() == ref.size());
            for (std::size_t i = 0; i < lib.size(); ++i) {
                CHECK(std::abs(lib[i] - ref[i]) < 1e-9 * ref[i]);
                const Eigen::JacobiSVD<Eigen::Matrix4d> svd(oracle_matrix(g, n, lib[i]));
                CHECK(svd.singularValues()(2) > 1e-6 * svd.singularValues()(0));
            }
        }
    }
}

TEST_CASE("clamped traces, L2 orthonormality and the Laplace-norm identity") {
    for (double A : {1.0, 10.0}) {
        const auto g = make_geometry(A);
        const auto modes = bih::enumerate_spectrum(g, 30);
        CHECK(modes.front().mu > 0.0);
        for (std::size_t i = 0; i < modes.size(); ++i) {
            const auto& m = modes[i];
            CHECK(m.mu == doctest::Approx(m.wavenumber() * m.wavenumber()).epsilon(1e-14));
            if (i > 0) {
                CHECK(m.mu >= modes[i - 1].mu);
            }
            for (double r : {g.r_in, g.r_out}) {
                const auto p = bih::radial(m, g, r);
                CHECK(std::abs(p.value) < 1e-9);
                CHECK(std::abs(p.derivative) < 1e-9);
            }
        }
        const auto t = oracle::tensor_rule<80>(g.r_in, g.r_out, 96);
        const auto pts = static_cast<Eigen::Index>(t.w.size());
        Eigen::MatrixXd v(static_cast<Eigen::Index>(modes.size()), pts);
        Eigen::MatrixXd l(static_cast<Eigen::Index>(modes.size()), pts);
        for (Eigen::Index i = 0; i < pts; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            for (std::size_t j = 0; j < modes.size(); ++j) {
                v(static_cast<Eigen::Index>(j), i) = bih::evaluate_psi(modes[j], g, t.r[ui], t.phi[ui]);
                l(static_cast<Eigen::Index>(j), i) = bih::evaluate_laplacian_psi(modes[j], g, t.r[ui], t.phi[ui]);
            }
        }
        const Eigen::Map<const Eigen::VectorXd> w(t.w.data(), pts);
        const Eigen::MatrixXd gram = v * w.asDiagonal() * v.transpose();
        CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-8);
        const Eigen::MatrixXd delta = l * w.asDiagonal() * l.transpose();
        for (std::size_t j = 0; j < modes.size(); ++j) {
            const double mu2 = modes[j].mu * modes[j].mu;
            CHECK(std::abs(delta(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) - mu2) < 1e-5 * mu2);
        }
    }
}

TEST_CASE("analytic Laplacian and the fourth-order equation") {
    for (double A : {1.0, 10.0}) {
        const auto g = make_geometry(A);
        for (const auto& m : bih::enumerate_spectrum(g, 16)) {
            auto P = [&](double r) { return bih::radial(m, g, r).value; };
            auto L = [&](double r) { return bih::radial(m, g, r).laplacian; };
            auto radial_lap = [&](const std::function<double(double)>& f, double r, double h) {
                auto d2 = [&](double s) { return (f(r + s) - 2 * f(r) + f(r - s)) / (s * s); };
                return (4 * d2(0.5 * h) - d2(h)) / 3 + oracle::derivative(f, r, h) / r - m.n * m.n * f(r) / (r * r);
            };
            double lap_err = 0.0;
            double res = 0.0;
            double scale = 0.0;
            double lscale = 0.0;
            for (int i = 1; i <= 50; ++i) {
                const double r = g.r_in + i * g.gap() / 51.0;
                const double h = std::min(0.02 / m.wavenumber(), 0.4 * std::min(r - g.r_in, g.r_out - r));
                lap_err = std::max(lap_err, std::abs(radial_lap(P, r, h) - L(r)));
                lscale = std::max(lscale, std::abs(L(r)));
                res = std::max(res, std::abs(radial_lap(L, r, h) - m.mu * m.mu * P(r)));
                scale = std::max(scale, m.mu * m.mu * std::abs(P(r)));
            }
            CAPTURE(A);
            CAPTURE(m.n);
            CAPTURE(m.m);
            CHECK(lap_err < 1e-6 * lscale);
            CHECK(res < 1e-5 * scale);
        }
    }
}

TEST_CASE("B entries against blind quadrature, and skew symmetry on random pairs") {
    const auto g = make_geometry(1.0);
    const auto bm = bih::enumerate_spectrum(g, 20);
    const auto lm = lap::enumerate_spectrum(g, 20);
    const auto raw = rac::streamfunction::assemble_B(g, bm, lm);
    CHECK(!raw.scaled);
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> pick(0, 19);
    int nonzero = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto j = static_cast<std::size_t>(pick(rng));
        const auto k = static_cast<std::size_t>(pick(rng));
        const double first = oracle::annulus_integral(
            [&](double r, double phi) {
                return bih::evaluate_psi(bm[j], g, r, phi) *
                       cross(lap::evaluate_grad_chi(lm[k], g, r, phi), rac::grad_S(g, r, phi));
            },
            g.r_in, g.r_out, 64);
        const double second = oracle::annulus_integral(
            [&](double r, double phi) {
                return lap::evaluate_chi(lm[k], g, r, phi) *
                       cross(bih::evaluate_grad_psi(bm[j], g, r, phi), rac::grad_S(g, r, phi));
            },
            g.r_in, g.r_out, 64);
        CAPTURE(j);
        CAPTURE(k);
        CHECK(std::abs(first + second) < 1e-9);
        const double entry = raw.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
        CHECK(std::abs(entry - first) < 1e-10 * (1.0 + std::abs(first)));
        nonzero += entry != 0.0 ? 1 : 0;
        if (std::abs(bm[j].n - lm[k].n) > 1) {
            CHECK(entry == 0.0);
        }
    }
    CHECK(nonzero > 0);
    CHECK(rac::diagnostics::skew_symmetry_defect(g, bm[3], lm[2]) < 1e-9);
}

TEST_CASE("entry bound with the measured constant, and decay of the scaled entries") {
    for (double A : {1.0, 10.0}) {
        const auto g = make_geometry(A);
        const auto bm = bih::enumerate_spectrum(g, 30);
        const auto lm = lap::enumerate_spectrum(g, 30);
        const auto raw = rac::streamfunction::assemble_B(g, bm, lm);
        const auto scaled = rac::streamfunction::scale_B(raw);
        const double gstar = rac::diagnostics::measured_gamma_star(g, raw);
        CHECK(std::isfinite(gstar));
        CHECK(gstar > 0.0);
        const double gii = rac::gamma_S_II(g);
        for (Eigen::Index j = 0; j < raw.entries.rows(); ++j) {
            for (Eigen::Index k = 0; k < raw.entries.cols(); ++k) {
                const double mu = bm[static_cast<std::size_t>(j)].mu;
                const double om = lm[static_cast<std::size_t>(k)].omega;
                CHECK(std::abs(raw.entries(j, k)) <= gstar * gii * std::max(mu, om) * (1 + 1e-14));
                CHECK(std::abs(scaled.entries(j, k)) <= gstar * gii / std::min(mu, om) * (1 + 1e-14));
                CHECK(scaled.entries(j, k) == raw.entries(j, k) / (mu * om));
            }
        }
    }
}

TEST_CASE("streamfunction ladder is monotone") {
    const auto g = make_geometry(1.0);
    const int targets[] = {7, 12, 22, 40};
    const auto rep = rac::streamfunction::solve_streamfunction(g, targets);
    CHECK(rep.path == "streamfunction");
    CHECK(rep.monotone);
    for (std::size_t i = 1; i < rep.levels.size(); ++i) {
        CHECK(rep.levels[i].lambda >= rep.levels[i - 1].lambda - 1e-12);
        CHECK(rep.levels[i].ra_c == 2.0 / rep.levels[i].lambda);
    }
}
