#include "rac/quadrature.hpp"

#include "rac/errors.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>

namespace rac {

namespace {

struct ReferenceRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Newton iteration on P_n with the Tricomi initial guess.
ReferenceRule build_reference(int n) {
    ReferenceRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // recompute the derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        rule.x[n / 2] = 0.0;
    }
    return rule;
}

const ReferenceRule& reference(int n) {
    static std::mutex mutex;
    static std::map<int, ReferenceRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, build_reference(n)).first;
    }
    return it->second;
}

}  // namespace

QuadratureRule gauss_legendre(int n, double lo, double hi) {
    if (n < 1) {
        throw DomainError("Gauss-Legendre rule needs at least one node");
    }
    const ReferenceRule& ref = reference(n);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * ref.x[i];
        rule.weights[i] = half * ref.w[i];
    }
    return rule;
}

const char* to_string(Parity p) { return p == Parity::Cos ? "cos" : "sin"; }

double trig(Parity p, int n, double phi) {
    return p == Parity::Cos ? std::cos(n * phi) : std::sin(n * phi);
}

TrigTerm trig_derivative(Parity p, int n) {
    if (p == Parity::Cos) {
        return {-static_cast<double>(n), Parity::Sin, n};
    }
    return {static_cast<double>(n), Parity::Cos, n};
}

double angular_integral(std::span<const TrigTerm> factors) {
    // cos(n x) = (e^{inx} + e^{-inx}) / 2,  sin(n x) = (e^{inx} - e^{-inx}) / (2i).
    // The integral of e^{ikx} over a period is 2 pi [k == 0].
    using cplx = std::complex<double>;
    const std::size_t count = factors.size();
    cplx total = 0.0;
    const std::size_t combos = std::size_t{1} << count;
    for (std::size_t mask = 0; mask < combos; ++mask) {
        long frequency = 0;
        cplx coef = 1.0;
        for (std::size_t i = 0; i < count; ++i) {
            const TrigTerm& f = factors[i];
            const bool negative = (mask >> i) & 1U;
            frequency += negative ? -f.n : f.n;
            if (f.parity == Parity::Cos) {
                coef *= 0.5;
            } else {
                coef *= negative ? cplx(0.0, 0.5) : cplx(0.0, -0.5);
            }
        }
        if (frequency == 0) {
            total += coef;
        }
    }
    double scale = 2.0 * std::numbers::pi;
    for (const TrigTerm& f : factors) {
        scale *= f.coefficient;
    }
    return scale * total.real();
}

}  // namespace rac
