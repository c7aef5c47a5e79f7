#include "oracles.hpp"

#include "rac/coupling.hpp"
#include "rac/diagnostics.hpp"
#include "rac/geometry.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using rac::Parity;
using rac::make_geometry;
namespace cp = rac::coupling;
namespace lap = rac::laplace;
namespace sto = rac::stokes;

namespace {

struct Fixture {
    rac::AnnulusGeometry g;
    std::vector<sto::StokesMode> s;
    std::vector<lap::LaplaceMode> l;
    cp::CouplingMatrix raw;
};

Fixture make(double A, int count) {
    Fixture f;
    f.g = make_geometry(A);
    f.s = sto::enumerate_spectrum(f.g, count);
    f.l = lap::enumerate_spectrum(f.g, count);
    f.raw = cp::assemble_C(f.g, f.s, f.l);
    return f;
}

double blind_entry(const Fixture& f, std::size_t j, std::size_t k) {
    return oracle::annulus_integral(
        [&](double r, double phi) {
            const auto v = sto::evaluate_velocity(f.s[j], f.g, r, phi);
            const auto gs = rac::grad_S(f.g, r, phi);
            return lap::evaluate_chi(f.l[k], f.g, r, phi) * (gs.d_r * v.v_r + gs.d_phi_over_r * v.v_phi);
        },
        f.g.r_in, f.g.r_out, 128);
}

}  // namespace

TEST_CASE("entries against blind two-dimensional quadrature") {
    const auto f = make(1.0, 30);
    // first Stokes n = 1 cos mode against the first Laplace n = 0 mode
    std::size_t j1 = f.s.size();
    for (std::size_t j = 0; j < f.s.size(); ++j) {
        if (f.s[j].n == 1 && f.s[j].parity == Parity::Cos) {
            j1 = j;
            break;
        }
    }
    REQUIRE(j1 < f.s.size());
    REQUIRE(f.l[0].n == 0);
    const double e = f.raw.entries(static_cast<Eigen::Index>(j1), 0);
    CHECK(e != 0.0);
    CHECK(std::abs(e - blind_entry(f, j1, 0)) < 1e-10);

    std::mt19937 rng(5);
    std::uniform_int_distribution<int> pick(0, 29);
    for (int t = 0; t < 40; ++t) {
        const auto j = static_cast<std::size_t>(pick(rng));
        const auto k = static_cast<std::size_t>(pick(rng));
        CAPTURE(j);
        CAPTURE(k);
        CHECK(std::abs(f.raw.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) -
                       blind_entry(f, j, k)) < 1e-10);
    }
}

TEST_CASE("selection rules give exact zeros") {
    for (double A : {1.0, 10.0}) {
        const auto f = make(A, 40);
        for (std::size_t j = 0; j < f.s.size(); ++j) {
            for (std::size_t k = 0; k < f.l.size(); ++k) {
                const double e = f.raw.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
                if (std::abs(f.s[j].n - f.l[k].n) > 1) {
                    CHECK(e == 0.0);
                }
            }
        }
        CHECK(cp::zero_count(f.raw) == rac::diagnostics::predicted_zero_count_C(f.raw.rows, f.raw.cols));
        CHECK(cp::zero_count(f.raw) > f.raw.entries.size() / 2);
    }
}

TEST_CASE("entry bound, scaling and decay") {
    for (double A : {1.0, 10.0}) {
        const auto f = make(A, 40);
        const double bound = std::sqrt(2.0) * rac::gamma_S(f.g);
        CHECK(f.raw.entries.cwiseAbs().maxCoeff() <= bound);
        CHECK(rac::diagnostics::entry_bound_violations(f.g, f.raw) == 0);
        const auto scaled = cp::scale_C(f.raw);
        CHECK(scaled.scaled);
        const auto back = cp::unscale_C(scaled);
        CHECK(!back.scaled);
        for (Eigen::Index j = 0; j < f.raw.entries.rows(); ++j) {
            const double kappa = f.s[static_cast<std::size_t>(j)].kappa;
            CHECK(scaled.entries.row(j).cwiseAbs().maxCoeff() <= bound / (kappa * f.l[0].omega));
            for (Eigen::Index k = 0; k < f.raw.entries.cols(); ++k) {
                const double raw = f.raw.entries(j, k);
                if (raw == 0.0) {
                    CHECK(scaled.entries(j, k) == 0.0);
                }
                CHECK(scaled.entries(j, k) == raw / (kappa * f.l[static_cast<std::size_t>(k)].omega));
                CHECK(std::abs(back.entries(j, k) - raw) <= 2.0 * std::numeric_limits<double>::epsilon() * std::abs(raw));
            }
        }
    }
}

TEST_CASE("quadrature doubling and deterministic parallel assembly") {
    const auto g = make_geometry(1.0);
    const auto s = sto::enumerate_spectrum(g, 40);
    const auto l = lap::enumerate_spectrum(g, 40);
    cp::AssemblyOptions one;
    one.threads = 1;
    cp::AssemblyOptions many;
    many.threads = 8;
    const auto a = cp::assemble_C(g, s, l, one);
    const auto b = cp::assemble_C(g, s, l, many);
    CHECK((a.entries.array() == b.entries.array()).all());
    cp::AssemblyOptions doubled;
    doubled.radial_nodes = 2 * cp::default_radial_nodes(g, s.back().kappa, l.back().omega);
    const auto c = cp::assemble_C(g, s, l, doubled);
    CHECK(((c.entries - a.entries).array().abs() / (1.0 + a.entries.array().abs())).maxCoeff() <= 1e-10);
}

TEST_CASE("block matrix properties") {
    const auto f = make(1.0, 20);
    const auto scaled = cp::scale_C(f.raw);
    const cp::TruncationLevel level{12, 12, 12, 12};
    const Eigen::MatrixXd gamma = cp::assemble_gamma(scaled, level);
    CHECK(gamma.rows() == 24);
    CHECK((gamma.array() == gamma.transpose().array()).all());
    CHECK(gamma.trace() == 0.0);
    const Eigen::MatrixXd zero = cp::assemble_gamma(Eigen::MatrixXd::Zero(5, 4));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(zero);
    CHECK(es.eigenvalues().cwiseAbs().maxCoeff() == 0.0);
    CHECK((cp::truncated_block(scaled, level).array() == scaled.entries.topLeftCorner(12, 12).array()).all());
}

TEST_CASE("truncation ladder") {
    const auto g = make_geometry(1.0);
    const int targets[] = {7, 12, 22, 49, 92, 300};
    const auto ladder = cp::propose_ladder(g, targets);
    REQUIRE(ladder.size() == 6);
    const int count = cp::enumeration_length(targets);
    std::vector<double> kap;
    std::vector<double> om;
    for (const auto& m : sto::enumerate_spectrum(g, count)) {
        kap.push_back(m.kappa);
    }
    for (const auto& m : lap::enumerate_spectrum(g, count)) {
        om.push_back(m.omega);
    }
    std::ostringstream log;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        const auto& lv = ladder[i];
        log << lv.target << "->" << lv.ell << " ";
        CHECK(lv.ell >= lv.target);
        CHECK(lv.stokes_cut == lv.ell);
        CHECK(lv.laplace_cut == lv.ell);
        CHECK(cp::is_multiplicity_safe(kap, lv.stokes_cut));
        CHECK(cp::is_multiplicity_safe(om, lv.laplace_cut));
        if (i > 0) {
            CHECK(lv.ell > ladder[i - 1].ell);
        }
    }
    MESSAGE("realized cuts (A = 1): " << log.str());

    // a target landing inside a cos/sin pair is pushed past it
    const double rows[] = {1.0, 2.0, 2.0, 3.0, 4.0, 4.0, 5.0};
    const double cols[] = {1.0, 1.5, 1.5, 2.5, 3.0, 6.0, 7.0};
    const int t2[] = {2, 4};
    const auto lad = cp::propose_ladder(rows, cols, t2);
    REQUIRE(lad.size() == 2);
    CHECK(lad[0].ell == 3);
    CHECK(lad[1].ell == 4);
    CHECK_FALSE(cp::is_multiplicity_safe(rows, 2));
    CHECK(cp::is_multiplicity_safe(rows, 3));
}

TEST_CASE("random coefficient vectors: matrix quotient equals F/D of the fields") {
    const auto f = make(1.0, 16);
    const auto scaled = cp::scale_C(f.raw);
    std::mt19937_64 rng(99);
    std::normal_distribution<double> nd;
    const auto t = oracle::tensor_rule<60>(f.g.r_in, f.g.r_out, 64);
    for (int trial = 0; trial < 3; ++trial) {
        Eigen::VectorXd ct(16);
        Eigen::VectorXd dt(16);
        for (int i = 0; i < 16; ++i) {
            ct(i) = nd(rng);
            dt(i) = nd(rng);
        }
        const double matrix_q = ct.dot(scaled.entries * dt) / (ct.squaredNorm() + dt.squaredNorm());
        double F = 0.0;
        double D = 0.0;
        for (std::size_t i = 0; i < t.w.size(); ++i) {
            const double r = t.r[i];
            const double phi = t.phi[i];
            const double c = std::cos(phi);
            const double s = std::sin(phi);
            double vr = 0, vp = 0, vr_r = 0, vr_p = 0, vp_r = 0, vp_p = 0;
            for (std::size_t j = 0; j < 16; ++j) {
                const double a = ct(static_cast<Eigen::Index>(j)) / f.s[j].kappa;
                const auto v = sto::evaluate_velocity(f.s[j], f.g, r, phi);
                const auto d = sto::evaluate_velocity_gradient(f.s[j], f.g, r, phi);
                vr += a * v.v_r;
                vp += a * v.v_phi;
                vr_r += a * d.dvr_dr;
                vr_p += a * d.dvr_dphi;
                vp_r += a * d.dvphi_dr;
                vp_p += a * d.dvphi_dphi;
            }
            double th = 0, th_r = 0, th_p = 0;
            for (std::size_t k = 0; k < 16; ++k) {
                const double b = dt(static_cast<Eigen::Index>(k)) / f.l[k].omega;
                th += b * lap::evaluate_chi(f.l[k], f.g, r, phi);
                const auto gc = lap::evaluate_grad_chi(f.l[k], f.g, r, phi);
                th_r += b * gc.d_r;
                th_p += b * gc.d_phi_over_r;
            }
            // buoyancy direction and heat-source term written out directly
            const double sx = 0.0;
            const double sy = 1.0;
            const double src = 1.0 / (f.g.b * r);
            const double vx = vr * c - vp * s;
            const double vy = vr * s + vp * c;
            F += t.w[i] * th * (sx * vx + sy * vy + src * vr);
            // Cartesian velocity gradient by the chain rule
            const double ux_r = vr_r * c - vp_r * s;
            const double uy_r = vr_r * s + vp_r * c;
            const double ux_p = (vr_p * c - vr * s - vp_p * s - vp * c) / r;
            const double uy_p = (vr_p * s + vr * c + vp_p * c - vp * s) / r;
            D += t.w[i] * (ux_r * ux_r + uy_r * uy_r + ux_p * ux_p + uy_p * uy_p + th_r * th_r + th_p * th_p);
        }
        CHECK(std::abs(F / D - matrix_q) <= 1e-6 * std::abs(matrix_q));
    }
}

TEST_CASE("csv dump") {
    const auto f = make(1.0, 4);
    std::ostringstream out;
    cp::write_csv(out, f.raw, cp::scale_C(f.raw));
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "j,k,n_v,parity_v,m_v,n_chi,parity_chi,m_chi,raw,scaled");
    int lines = 0;
    for (std::string line; std::getline(in, line);) {
        ++lines;
    }
    CHECK(lines == 16);
}
