#pragma once

#include <string_view>

namespace rac::specfun {

/// Cylinder function families: Bessel J, Neumann Y, modified Bessel I and K.
enum class CylinderKind { J, Y, I, K };

/// Largest integer order the kernel is certified for.
inline constexpr int kOrderMax = 80;

std::string_view to_string(CylinderKind kind);

/// C_n(x) for integer order 0 <= n <= kOrderMax (one more is accepted so the
/// derivative recurrence can reach n + 1).
///
/// Throws DomainError for x <= 0 with Y/K, x < 0 with J/I, or an order outside
/// [0, kOrderMax]. Throws OverflowError when the value exceeds the binary64
/// range (I_n at large x, Y_n/K_n of high order at tiny x).
double eval(CylinderKind kind, int order, double x);

/// dC_n/dx from the two-term recurrence:
///   J, Y:  (C_{n-1} - C_{n+1}) / 2,   C_0' = -C_1
///   I:     (I_{n-1} + I_{n+1}) / 2,   I_0' = I_1
///   K:    -(K_{n-1} + K_{n+1}) / 2,   K_0' = -K_1
double eval_derivative(CylinderKind kind, int order, double x);

}  // namespace rac::specfun
