#include "spectrum_scan.hpp"

#include "rac/errors.hpp"
#include "rac/specfun.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <tuple>

namespace rac::detail {

std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                               double step) {
    std::vector<double> roots;
    if (!(hi > lo) || !(step > 0.0)) {
        return roots;
    }
    const auto steps = static_cast<std::int64_t>(std::ceil((hi - lo) / step));
    double a = lo;
    double fa = f(a);
    for (std::int64_t i = 1; i <= steps; ++i) {
        const double b = std::min(hi, lo + step * static_cast<double>(i));
        const double fb = f(b);
        if (fa == 0.0) {
            roots.push_back(a);
        } else if (fb != 0.0 && std::signbit(fa) != std::signbit(fb)) {
            std::uintmax_t iterations = 200;
            const auto bracket = boost::math::tools::toms748_solve(
                f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(50), iterations);
            if (iterations >= 200) {
                throw ConvergenceError("root refinement did not converge in [" + std::to_string(a) +
                                       ", " + std::to_string(b) + "]");
            }
            roots.push_back(0.5 * (bracket.first + bracket.second));
        }
        a = b;
        fa = fb;
    }
    return roots;
}

void sort_spectrum(std::vector<SpectrumEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
        return std::tie(x.value, x.n, x.parity, x.m) < std::tie(y.value, y.n, y.parity, y.m);
    });
    auto by_index = [](const SpectrumEntry& x, const SpectrumEntry& y) {
        return std::tie(x.n, x.parity, x.m) < std::tie(y.n, y.parity, y.m);
    };
    std::size_t start = 0;
    while (start < entries.size()) {
        std::size_t end = start + 1;
        while (end < entries.size() &&
               entries[end].value - entries[end - 1].value <= 1e-9 * entries[end - 1].value) {
            ++end;
        }
        std::sort(entries.begin() + static_cast<std::ptrdiff_t>(start),
                  entries.begin() + static_cast<std::ptrdiff_t>(end), by_index);
        start = end;
    }
}

std::vector<SpectrumEntry> enumerate_spectrum(
    int count, double initial_cutoff,
    const std::function<std::vector<double>(int, double)>& roots_below,
    const std::function<double(int)>& lower_bound, int max_order) {
    if (count < 1) {
        throw DomainError("spectrum length must be at least 1");
    }
    double cutoff = initial_cutoff;
    for (int attempt = 0; attempt < 64; ++attempt, cutoff *= 1.25) {
        std::vector<SpectrumEntry> entries;
        for (int n = 0; lower_bound(n) < cutoff; ++n) {
            if (n > max_order) {
                throw DomainError("spectrum request needs angular order above " +
                                  std::to_string(max_order));
            }
            const std::vector<double> roots = roots_below(n, cutoff);
            for (std::size_t i = 0; i < roots.size(); ++i) {
                const int m = static_cast<int>(i) + 1;
                entries.push_back({n, Parity::Cos, m, roots[i]});
                if (n >= 1) {
                    entries.push_back({n, Parity::Sin, m, roots[i]});
                }
            }
        }
        if (static_cast<int>(entries.size()) >= count) {
            sort_spectrum(entries);
            entries.resize(static_cast<std::size_t>(count));
            return entries;
        }
    }
    throw ConvergenceError("spectrum enumeration did not reach the requested length");
}

}  // namespace rac::detail
