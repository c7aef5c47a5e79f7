#include "rac/report.hpp"

#include "rac/errors.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace rac::report {

using nlohmann::json;

const char* const kCsvHeader =
    "path,backend,A,target,ell,stokes_cut,laplace_cut,lambda,ra_c,iterations,residual,"
    "lambda_spectral,lambda_bisection,top_gap,degenerate";

namespace {

json level_json(const eigen::LevelRecord& l) {
    return {{"target", l.target},
            {"ell", l.ell},
            {"stokes_cut", l.stokes_cut},
            {"laplace_cut", l.laplace_cut},
            {"lambda", l.lambda},
            {"ra_c", l.ra_c},
            {"iterations", l.iterations},
            {"residual", l.residual},
            {"lambda_spectral", l.lambda_spectral},
            {"lambda_bisection", l.lambda_bisection},
            {"top_gap", l.top_gap},
            {"degenerate", l.degenerate}};
}

json report_json(const eigen::SolveReport& r) {
    json levels = json::array();
    for (const auto& l : r.levels) {
        levels.push_back(level_json(l));
    }
    json checks = {{"monotone", r.monotone},
                   {"pairing",
                    {{"ok", r.pairing_ok}, {"levels", r.pairing_levels}, {"spectrum_error", r.pairing_error}}}};
    checks["backend_agreement"] = r.backend_agreement < 0.0 ? json(nullptr) : json(r.backend_agreement);
    return {{"geometry",
             {{"A", r.geometry.A}, {"r_in", r.geometry.r_in}, {"r_out", r.geometry.r_out}, {"b", r.geometry.b}}},
            {"path", r.path},
            {"backend", eigen::to_string(r.backend)},
            {"levels", levels},
            {"checks", checks}};
}

eigen::SolveReport parse_report(const json& j) {
    eigen::SolveReport r;
    const auto& g = j.at("geometry");
    r.geometry.A = g.at("A").get<double>();
    r.geometry.r_in = g.at("r_in").get<double>();
    r.geometry.r_out = g.at("r_out").get<double>();
    r.geometry.b = g.at("b").get<double>();
    r.path = j.at("path").get<std::string>();
    r.backend = eigen::parse_backend(j.at("backend").get<std::string>());
    for (const auto& l : j.at("levels")) {
        eigen::LevelRecord rec;
        rec.target = l.at("target").get<int>();
        rec.ell = l.at("ell").get<int>();
        rec.stokes_cut = l.at("stokes_cut").get<int>();
        rec.laplace_cut = l.at("laplace_cut").get<int>();
        rec.lambda = l.at("lambda").get<double>();
        rec.ra_c = l.at("ra_c").get<double>();
        rec.iterations = l.at("iterations").get<int>();
        rec.residual = l.at("residual").get<double>();
        rec.lambda_spectral = l.at("lambda_spectral").get<double>();
        rec.lambda_bisection = l.at("lambda_bisection").get<double>();
        rec.top_gap = l.at("top_gap").get<double>();
        rec.degenerate = l.at("degenerate").get<bool>();
        r.levels.push_back(rec);
    }
    const auto& c = j.at("checks");
    r.monotone = c.at("monotone").get<bool>();
    r.pairing_ok = c.at("pairing").at("ok").get<bool>();
    r.pairing_levels = c.at("pairing").at("levels").get<int>();
    r.pairing_error = c.at("pairing").at("spectrum_error").get<double>();
    const auto& agreement = c.at("backend_agreement");
    r.backend_agreement = agreement.is_null() ? -1.0 : agreement.get<double>();
    return r;
}

}  // namespace

std::string format_double(double x) {
    if (!std::isfinite(x)) {
        return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string to_json(std::span<const eigen::SolveReport> reports) {
    json doc;
    if (reports.size() == 1) {
        doc = report_json(reports.front());
    } else {
        doc = json::array();
        for (const auto& r : reports) {
            doc.push_back(report_json(r));
        }
    }
    return doc.dump(2) + "\n";
}

std::vector<eigen::SolveReport> from_json(const std::string& text) {
    std::vector<eigen::SolveReport> out;
    try {
        const json doc = json::parse(text);
        if (doc.is_array()) {
            for (const auto& j : doc) {
                out.push_back(parse_report(j));
            }
        } else {
            out.push_back(parse_report(doc));
        }
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed report: ") + e.what());
    }
    return out;
}

void write_csv(std::ostream& out, std::span<const eigen::SolveReport> reports) {
    out << kCsvHeader << '\n';
    for (const auto& r : reports) {
        for (const auto& l : r.levels) {
            out << r.path << ',' << eigen::to_string(r.backend) << ',' << format_double(r.geometry.A) << ','
                << l.target << ',' << l.ell << ',' << l.stokes_cut << ',' << l.laplace_cut << ','
                << format_double(l.lambda) << ',' << format_double(l.ra_c) << ',' << l.iterations << ','
                << format_double(l.residual) << ',' << format_double(l.lambda_spectral) << ','
                << format_double(l.lambda_bisection) << ',' << format_double(l.top_gap) << ','
                << (l.degenerate ? 1 : 0) << '\n';
        }
    }
}

void write_text(std::ostream& out, std::span<const eigen::SolveReport> reports) {
    for (const auto& r : reports) {
        out << "A = " << format_double(r.geometry.A) << "  path = " << r.path
            << "  backend = " << eigen::to_string(r.backend) << '\n';
        out << std::setw(7) << "target" << std::setw(6) << "ell" << std::setw(7) << "rows" << std::setw(7)
            << "cols" << std::setw(26) << "lambda" << std::setw(26) << "Ra_c" << std::setw(7) << "iter"
            << std::setw(12) << "residual" << '\n';
        for (const auto& l : r.levels) {
            out << std::setw(7) << l.target << std::setw(6) << l.ell << std::setw(7) << l.stokes_cut
                << std::setw(7) << l.laplace_cut << std::setw(26) << format_double(l.lambda) << std::setw(26)
                << format_double(l.ra_c) << std::setw(7) << l.iterations << std::setw(12)
                << std::setprecision(3) << std::scientific << l.residual << std::defaultfloat
                << (l.degenerate ? "  (degenerate top pair)" : "") << '\n';
        }
        out << "monotone: " << (r.monotone ? "yes" : "no") << "  pairing: "
            << (r.pairing_levels == 0 ? "not checked" : r.pairing_ok ? "ok" : "FAILED");
        if (r.pairing_levels > 0) {
            out << " (" << r.pairing_levels << " levels, max error " << std::setprecision(3) << std::scientific
                << r.pairing_error << std::defaultfloat << ")";
        }
        if (r.backend_agreement >= 0.0) {
            out << "  backend agreement: " << std::setprecision(3) << std::scientific << r.backend_agreement
                << std::defaultfloat;
        }
        out << "\n\n";
    }
}

}  // namespace rac::report
