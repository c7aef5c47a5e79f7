#include "rac/diagnostics.hpp"
#include "rac/geometry.hpp"

#include <doctest.h>

#include <algorithm>
#include <iostream>

namespace diag = rac::diagnostics;

namespace {

void dump(const std::vector<diag::CheckResult>& checks) {
    for (const auto& c : checks) {
        if (!c.pass) {
            std::cout << "  failed " << c.module << " / " << c.invariant << ": " << c.observed << " vs "
                      << c.threshold << "\n";
        }
    }
}

const diag::CheckResult* find(const std::vector<diag::CheckResult>& checks, const std::string& module,
                              const std::string& needle) {
    for (const auto& c : checks) {
        if (c.module == module && c.invariant.find(needle) != std::string::npos) {
            return &c;
        }
    }
    return nullptr;
}

}  // namespace

TEST_CASE("validation suite passes at A = 1") {
    diag::ValidateOptions opt;
    opt.modes = 20;
    opt.max_ell = 30;
    const auto checks = diag::run_validation(rac::make_geometry(1.0), opt);
    dump(checks);
    CHECK(checks.size() > 20);
    CHECK(std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; }));
    // every module reports something
    for (const char* m : {"specfun", "geometry", "laplace_basis", "stokes_basis", "coupling", "eigensolver",
                          "biharmonic_xcheck"}) {
        CAPTURE(m);
        CHECK(std::any_of(checks.begin(), checks.end(), [&](const auto& c) { return c.module == m; }));
    }
}

TEST_CASE("validation suite passes at A = 10") {
    diag::ValidateOptions opt;
    opt.modes = 12;
    opt.max_ell = 24;
    const auto checks = diag::run_validation(rac::make_geometry(10.0), opt);
    dump(checks);
    CHECK(std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; }));
}

TEST_CASE("a flipped radial grad S is caught by the quotient check") {
    diag::ValidateOptions opt;
    opt.modes = 8;
    opt.max_ell = 22;
    opt.assembly.flip_grad_s_radial = true;
    const auto checks = diag::run_validation(rac::make_geometry(1.0), opt);
    const auto* q = find(checks, "coupling", "F/D");
    REQUIRE(q != nullptr);
    CHECK_FALSE(q->pass);
    CHECK(q->observed > 1e-3);
}

TEST_CASE("quotient check on the honest assembly") {
    const auto q = diag::quotient_check(rac::make_geometry(1.0), 22);
    CHECK(q.relative_error < 1e-6);
    CHECK(q.dissipation == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(q.quotient == doctest::Approx(0.5 * q.lambda).epsilon(1e-6));
}
