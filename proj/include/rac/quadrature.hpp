#pragma once

#include <span>
#include <vector>

namespace rac {

/// Gauss-Legendre rule mapped to an interval.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [lo, hi]. Nodes on [-1, 1] are cached per n.
QuadratureRule gauss_legendre(int n, double lo, double hi);

/// Angular factor cos(n phi) or sin(n phi). sin is only meaningful for n >= 1.
enum class Parity { Cos, Sin };

const char* to_string(Parity p);
double trig(Parity p, int n, double phi);

/// A scaled trig term  coefficient * trig(parity, n, phi).
struct TrigTerm {
    double coefficient = 1.0;
    Parity parity = Parity::Cos;
    int n = 0;
};

/// d/dphi of trig(p, n, phi), expressed as a single TrigTerm.
TrigTerm trig_derivative(Parity p, int n);

/// Exact integral over [0, 2 pi] of the product of the given trig factors
/// (any count). Computed from the exponential expansion, so selection rule
/// zeros come out as exact 0.
double angular_integral(std::span<const TrigTerm> factors);

}  // namespace rac
