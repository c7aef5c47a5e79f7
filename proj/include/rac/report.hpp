#pragma once

#include "rac/eigensolver.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rac::report {

/// JSON document: one report as an object, several as an array.
/// {geometry{A, r_in, r_out, b}, path, backend,
///  levels[{target, ell, stokes_cut, laplace_cut, lambda, ra_c, iterations, residual,
///          lambda_spectral, lambda_bisection, top_gap, degenerate}],
///  checks{monotone, pairing{ok, levels, spectrum_error}, backend_agreement}}
/// backend_agreement is null when only one backend ran.
std::string to_json(std::span<const eigen::SolveReport> reports);
/// Inverse of to_json; accepts an object or an array. Throws DomainError on
/// malformed input.
std::vector<eigen::SolveReport> from_json(const std::string& text);

/// Fixed header, one row per level, 17 significant digits, '.' decimal point.
extern const char* const kCsvHeader;
void write_csv(std::ostream& out, std::span<const eigen::SolveReport> reports);

/// Human-readable level table with the checks underneath.
void write_text(std::ostream& out, std::span<const eigen::SolveReport> reports);

/// 17 significant digits, independent of the global locale.
std::string format_double(double x);

}  // namespace rac::report
