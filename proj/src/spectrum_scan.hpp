#pragma once

// Shared root bracketing and spectrum enumeration used by the three bases.

#include "rac/quadrature.hpp"

#include <functional>
#include <vector>

namespace rac::detail {

/// Sign-change scan of f over [lo, hi] with the given step, each bracket
/// refined by TOMS 748 to ~1e-15 relative. Throws ConvergenceError if a
/// bracket does not converge within 200 iterations.
std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                               double step);

struct SpectrumEntry {
    int n = 0;
    Parity parity = Parity::Cos;
    int m = 1;
    double value = 0.0;  ///< wavenumber (omega, kappa or sqrt(mu))
};

/// All (n, m) wavenumbers below a cutoff, expanded into cos/sin partners for
/// n >= 1, sorted by (value, n, parity). The cutoff grows until at least
/// `count` entries exist; the returned list is the first `count` entries.
///
/// roots_below(n, cutoff) returns the ascending roots for angular index n;
/// lower_bound(n) is a strict lower bound on every root of index n.
std::vector<SpectrumEntry> enumerate_spectrum(
    int count, double initial_cutoff,
    const std::function<std::vector<double>(int, double)>& roots_below,
    const std::function<double(int)>& lower_bound, int max_order);

/// Sort in place by value, then order near-ties (1e-9 relative) by (n, parity, m).
void sort_spectrum(std::vector<SpectrumEntry>& entries);

}  // namespace rac::detail
