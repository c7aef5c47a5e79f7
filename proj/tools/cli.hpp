#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rac::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2 };

struct ReferenceRow {
    int ell = 0;
    double lambda = 0.0;
    double ra_c = 0.0;
};

struct ReferenceTable {
    std::string preset;
    double A = 1.0;
    std::vector<ReferenceRow> rows;
};

/// Published convergence tables, embedded as reference constants
/// (double rounding of the tabulated 32-digit values).
const ReferenceTable& reference_table(const std::string& preset);

/// Geometric ladder 8, 16, 32, ... with 2 ell <= 600.
std::vector<int> auto_targets();

/// Parses "7,12,22" or "auto". Throws DomainError on anything else.
std::vector<int> parse_targets(const std::string& text);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rac::cli
