#include "cli.hpp"

#include "rac/biharmonic_basis.hpp"
#include "rac/diagnostics.hpp"
#include "rac/eigensolver.hpp"
#include "rac/errors.hpp"
#include "rac/laplace_basis.hpp"
#include "rac/report.hpp"
#include "rac/stokes_basis.hpp"
#include "rac/streamfunction.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace rac::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_positive_A(double A) {
    if (!(A > 0.0) || !std::isfinite(A)) {
        throw UsageError("A must be positive");
    }
}

void check_thread_env() {
    if (const char* env = std::getenv("RAC_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v <= 0) {
            throw UsageError("RAC_THREADS must be a positive integer");
        }
    }
}

// write once, at the end; a failed open is a usage problem
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw UsageError("cannot open output file '" + path + "'");
        }
        f << text;
        if (!f) {
            std::filesystem::remove(tmp);
            throw UsageError("cannot write output file '" + path + "'");
        }
    }
    std::filesystem::rename(tmp, target);
}

std::string render(const std::string& format, const std::vector<eigen::SolveReport>& reports) {
    std::ostringstream s;
    if (format == "json") {
        s << report::to_json(reports);
    } else if (format == "csv") {
        report::write_csv(s, reports);
    } else {
        report::write_text(s, reports);
    }
    return s.str();
}

std::string fmt(double x, int precision = 17) {
    std::ostringstream s;
    s << std::setprecision(precision) << x;
    return s.str();
}

std::string sci(double x) {
    std::ostringstream s;
    s << std::setprecision(3) << std::scientific << x;
    return s.str();
}

struct SolveArgs {
    double A = 1.0;
    std::string targets = "auto";
    std::string backend = "spectral";
    std::string path = "velocity";
    std::string format = "json";
    std::string output;
    double delta = 1.0;
    int threads = 0;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
    require_positive_A(a.A);
    if (!(a.delta > 0.0)) {
        throw UsageError("delta must be positive");
    }
    if (a.threads < 0) {
        throw UsageError("threads must be non-negative");
    }
    std::vector<int> targets;
    try {
        targets = parse_targets(a.targets);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const AnnulusGeometry g = make_geometry(a.A);

    eigen::SolveOptions options;
    options.backend = eigen::parse_backend(a.backend);
    options.delta = a.delta;
    options.assembly.threads = a.threads;

    std::vector<std::string> paths;
    if (a.path == "both") {
        paths = {"velocity", "streamfunction"};
    } else {
        paths = {a.path};
    }
    std::vector<eigen::SolveReport> reports;
    bool failed = false;
    for (const auto& p : paths) {
        eigen::SolveReport partial;
        partial.geometry = g;
        partial.path = p;
        partial.backend = options.backend;
        options.partial = &partial;
        try {
            reports.push_back(p == "velocity" ? eigen::solve_ladder(g, targets, options)
                                              : streamfunction::solve_streamfunction(g, targets, options));
        } catch (const std::exception& e) {
            err << "numerical failure on the " << p << " path: " << e.what() << '\n';
            reports.push_back(partial);
            failed = true;
            break;
        }
    }
    emit(a.output, render(a.format, reports), out);
    return failed ? kNumerical : kOk;
}

struct BasisArgs {
    std::string kind;
    double A = 1.0;
    int count = 10;
    std::string format = "text";
};

int cmd_basis(const BasisArgs& a, std::ostream& out) {
    require_positive_A(a.A);
    if (a.count < 1) {
        throw UsageError("count must be at least 1");
    }
    const AnnulusGeometry g = make_geometry(a.A);
    struct Row {
        int n;
        Parity parity;
        int m;
        double root;
    };
    std::vector<Row> rows;
    if (a.kind == "laplace") {
        for (const auto& m : laplace::enumerate_spectrum(g, a.count)) {
            rows.push_back({m.n, m.parity, m.m, m.omega});
        }
    } else if (a.kind == "stokes") {
        for (const auto& m : stokes::enumerate_spectrum(g, a.count)) {
            rows.push_back({m.n, m.parity, m.m, m.kappa});
        }
    } else {
        for (const auto& m : biharmonic::enumerate_spectrum(g, a.count)) {
            rows.push_back({m.n, m.parity, m.m, m.mu});
        }
    }
    const char* root_name = a.kind == "laplace" ? "omega" : a.kind == "stokes" ? "kappa" : "mu";
    if (a.format == "csv") {
        out << "index,n,parity,m," << root_name << '\n';
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out << i + 1 << ',' << rows[i].n << ',' << to_string(rows[i].parity) << ',' << rows[i].m << ','
                << report::format_double(rows[i].root) << '\n';
        }
        return kOk;
    }
    out << std::setw(6) << "index" << std::setw(5) << "n" << std::setw(7) << "parity" << std::setw(5) << "m"
        << std::setw(26) << root_name << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << std::setw(6) << i + 1 << std::setw(5) << rows[i].n << std::setw(7) << to_string(rows[i].parity)
            << std::setw(5) << rows[i].m << std::setw(26) << report::format_double(rows[i].root) << '\n';
    }
    return kOk;
}

struct ValidateArgs {
    double A = 1.0;
    int modes = 30;
    int max_ell = 40;
    bool flip = false;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
    require_positive_A(a.A);
    if (a.modes < 1 || a.modes > 40) {
        throw UsageError("modes must be in [1, 40]");
    }
    if (a.max_ell < 4 || a.max_ell > 40) {
        throw UsageError("max-ell must be in [4, 40]");
    }
    diagnostics::ValidateOptions options;
    options.modes = a.modes;
    options.max_ell = a.max_ell;
    options.assembly.flip_grad_s_radial = a.flip;
    const auto checks = diagnostics::run_validation(make_geometry(a.A), options);
    int passed = 0;
    for (const auto& c : checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.module << ": " << c.invariant << "  observed " << sci(c.observed)
            << " threshold " << sci(c.threshold) << '\n';
        passed += c.pass ? 1 : 0;
    }
    out << passed << "/" << checks.size() << " checks passed\n";
    return passed == static_cast<int>(checks.size()) ? kOk : kNumerical;
}

struct TableArgs {
    std::string preset;
    std::string format = "text";
    std::string output;
    std::string backend = "spectral";
};

int cmd_table(const TableArgs& a, std::ostream& out, std::ostream& err) {
    check_thread_env();
    const ReferenceTable& ref = reference_table(a.preset);
    std::vector<int> targets;
    for (const auto& r : ref.rows) {
        targets.push_back(r.ell);
    }
    eigen::SolveOptions options;
    options.backend = eigen::parse_backend(a.backend);
    eigen::SolveReport rep;
    try {
        rep = eigen::solve_ladder(make_geometry(ref.A), targets, options);
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    std::ostringstream s;
    if (a.format == "csv") {
        s << "ell_ref,ell,stokes_cut,laplace_cut,ra_c_ref,ra_c,deviation,relative_deviation,cut_differs\n";
    } else {
        s << "A = " << fmt(ref.A) << " (" << ref.preset << ")\n";
        s << std::setw(6) << "ell_j" << std::setw(6) << "ell" << std::setw(6) << "rows" << std::setw(6) << "cols"
          << std::setw(22) << "Ra_c reference" << std::setw(22) << "Ra_c computed" << std::setw(12) << "deviation"
          << std::setw(12) << "relative" << '\n';
    }
    for (std::size_t i = 0; i < ref.rows.size(); ++i) {
        const auto& r = ref.rows[i];
        const auto& l = rep.levels[i];
        const double dev = l.ra_c - r.ra_c;
        const bool differs = l.ell != r.ell;
        if (a.format == "csv") {
            s << r.ell << ',' << l.ell << ',' << l.stokes_cut << ',' << l.laplace_cut << ','
              << report::format_double(r.ra_c) << ',' << report::format_double(l.ra_c) << ','
              << report::format_double(dev) << ',' << report::format_double(dev / r.ra_c) << ','
              << (differs ? 1 : 0) << '\n';
        } else {
            s << std::setw(6) << r.ell << std::setw(6) << l.ell << std::setw(6) << l.stokes_cut << std::setw(6)
              << l.laplace_cut << std::setw(22) << fmt(r.ra_c, 15) << std::setw(22) << fmt(l.ra_c, 15)
              << std::setw(12) << sci(dev) << std::setw(12) << sci(dev / r.ra_c) << (differs ? "  *" : "")
              << '\n';
        }
    }
    if (a.format != "csv") {
        s << "* realized cut differs from the reference ell_j\n";
    }
    emit(a.output, s.str(), out);
    return kOk;
}

}  // namespace

const ReferenceTable& reference_table(const std::string& preset) {
    static const ReferenceTable a1{"paper-a1",
                                   1.0,
                                   {{7, 0.065275715709889022, 30.639265739938989},
                                    {12, 0.067433400164287488, 29.658892998535073},
                                    {22, 0.070024363834146515, 28.561487609327266},
                                    {49, 0.070752337753538312, 28.267617205340757},
                                    {92, 0.070843842842887569, 28.231105481325422},
                                    {300, 0.070926398413629913, 28.198245571928834}}};
    static const ReferenceTable a10{"paper-a10",
                                    10.0,
                                    {{11, 0.036922959760029763, 54.166838547029520},
                                     {21, 0.036922959760029763, 54.166838547029520},
                                     {39, 0.036988540331501779, 54.070800904156620},
                                     {62, 0.036988763473199326, 54.070474711843913},
                                     {90, 0.036988784077179802, 54.070444592794772}}};
    if (preset == "paper-a1") {
        return a1;
    }
    if (preset == "paper-a10") {
        return a10;
    }
    throw DomainError("unknown preset '" + preset + "'");
}

std::vector<int> auto_targets() {
    std::vector<int> out;
    for (int t = 8; 2 * t <= 600; t *= 2) {
        out.push_back(t);
    }
    return out;
}

std::vector<int> parse_targets(const std::string& text) {
    if (text == "auto") {
        return auto_targets();
    }
    std::vector<int> out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw DomainError("targets must be 'auto' or a comma-separated list of positive integers");
        }
        if (used != item.size() || v < 1) {
            throw DomainError("targets must be 'auto' or a comma-separated list of positive integers");
        }
        if (!out.empty() && v <= out.back()) {
            throw DomainError("targets must be strictly increasing");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw DomainError("targets must not be empty");
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Critical Rayleigh number of a horizontal annulus by spectral Galerkin reduction", "rac"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "Ra_c along a truncation ladder");
    s->add_option("--A", solve.A, "inverse relative gap width 2 R_i / (R_o - R_i)")->required();
    s->add_option("--targets", solve.targets, "comma-separated ladder targets or 'auto'");
    s->add_option("--backend", solve.backend)->check(CLI::IsMember({"spectral", "bisection", "both"}));
    s->add_option("--path", solve.path)->check(CLI::IsMember({"velocity", "streamfunction", "both"}));
    s->add_option("--format", solve.format)->check(CLI::IsMember({"json", "csv", "text"}));
    s->add_option("--output,-o", solve.output, "output file (default: standard output)");
    s->add_option("--delta", solve.delta, "initial bisection bracket width");
    s->add_option("--threads", solve.threads, "assembly workers (0: hardware)");

    BasisArgs basis;
    auto* b = app.add_subcommand("basis", "list an enumerated eigenbasis");
    b->add_option("--kind", basis.kind)->required()->check(CLI::IsMember({"laplace", "stokes", "biharmonic"}));
    b->add_option("--A", basis.A)->required();
    b->add_option("--count", basis.count);
    b->add_option("--format", basis.format)->check(CLI::IsMember({"text", "csv"}));

    ValidateArgs validate;
    auto* v = app.add_subcommand("validate", "run every invariant suite at reduced size");
    v->add_option("--A", validate.A)->required();
    v->add_option("--modes", validate.modes, "modes per family");
    v->add_option("--max-ell", validate.max_ell, "largest ladder level");
    v->add_flag("--inject-grad-s-flip", validate.flip)->group("");

    TableArgs table;
    auto* t = app.add_subcommand("table", "compare against a reference convergence table");
    t->add_option("--preset", table.preset)->required()->check(CLI::IsMember({"paper-a1", "paper-a10"}));
    t->add_option("--format", table.format)->check(CLI::IsMember({"text", "csv"}));
    t->add_option("--output,-o", table.output);
    t->add_option("--backend", table.backend)->check(CLI::IsMember({"spectral", "bisection", "both"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        check_thread_env();
        if (s->parsed()) {
            return cmd_solve(solve, out, err);
        }
        if (b->parsed()) {
            return cmd_basis(basis, out);
        }
        if (v->parsed()) {
            return cmd_validate(validate, out);
        }
        return cmd_table(table, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
}

}  // namespace rac::cli
