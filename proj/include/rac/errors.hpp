#pragma once

#include <stdexcept>
#include <string>

namespace rac {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result not representable in binary64 (e.g. I_n at very large argument).
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// An iterative process (root refinement, power iteration, quadrature
/// doubling) did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Characteristic matrix has a nullspace of dimension > 1 at a reported root.
class DegenerateNullspaceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Determinant bracket [lo, lo + delta] does not contain the largest root.
class NoSignChangeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// lambda decreased along a nested ladder.
class MonotonicityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rac
