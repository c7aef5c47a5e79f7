#include "rac/specfun.hpp"

#include "rac/errors.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <string>

namespace rac::specfun {

namespace {

void check_args(CylinderKind kind, int order, double x) {
    // the derivative recurrence reaches order + 1, so allow one past the cap
    if (order < 0 || order > kOrderMax + 1) {
        throw DomainError("cylinder function order " + std::to_string(order) +
                          " outside [0, " + std::to_string(kOrderMax) + "]");
    }
    if (!std::isfinite(x)) {
        throw DomainError("cylinder function argument is not finite");
    }
    const bool singular_at_zero = kind == CylinderKind::Y || kind == CylinderKind::K;
    if (singular_at_zero ? x <= 0.0 : x < 0.0) {
        throw DomainError(std::string(to_string(kind)) + "_n requires x " +
                          (singular_at_zero ? "> 0" : ">= 0") + ", got " + std::to_string(x));
    }
}

double raw_eval(CylinderKind kind, int order, double x) {
    try {
        switch (kind) {
            case CylinderKind::J: return boost::math::cyl_bessel_j(order, x);
            case CylinderKind::Y: return boost::math::cyl_neumann(order, x);
            case CylinderKind::I: return boost::math::cyl_bessel_i(order, x);
            case CylinderKind::K: return boost::math::cyl_bessel_k(order, x);
        }
    } catch (const std::overflow_error& e) {
        throw OverflowError(std::string(to_string(kind)) + "_" + std::to_string(order) + "(" +
                            std::to_string(x) + ") overflows: " + e.what());
    } catch (const std::domain_error& e) {
        throw DomainError(e.what());
    }
    return 0.0;  // unreachable
}

double checked(double v, CylinderKind kind, int order, double x) {
    if (!std::isfinite(v)) {
        throw OverflowError(std::string(to_string(kind)) + "_" + std::to_string(order) + "(" +
                            std::to_string(x) + ") is not representable");
    }
    return v;
}

}  // namespace

std::string_view to_string(CylinderKind kind) {
    switch (kind) {
        case CylinderKind::J: return "J";
        case CylinderKind::Y: return "Y";
        case CylinderKind::I: return "I";
        case CylinderKind::K: return "K";
    }
    return "?";
}

double eval(CylinderKind kind, int order, double x) {
    check_args(kind, order, x);
    return checked(raw_eval(kind, order, x), kind, order, x);
}

double eval_derivative(CylinderKind kind, int order, double x) {
    check_args(kind, order, x);
    if (order > kOrderMax) {
        throw DomainError("derivative order " + std::to_string(order) + " exceeds kOrderMax");
    }
    if (order == 0) {
        const double c1 = raw_eval(kind, 1, x);
        return checked(kind == CylinderKind::I ? c1 : -c1, kind, 0, x);
    }
    const double lo = raw_eval(kind, order - 1, x);
    const double hi = raw_eval(kind, order + 1, x);
    double d = 0.0;
    switch (kind) {
        case CylinderKind::J:
        case CylinderKind::Y: d = 0.5 * (lo - hi); break;
        case CylinderKind::I: d = 0.5 * (lo + hi); break;
        case CylinderKind::K: d = -0.5 * (lo + hi); break;
    }
    return checked(d, kind, order, x);
}

}  // namespace rac::specfun
