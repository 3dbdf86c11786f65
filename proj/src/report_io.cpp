#include "cvteleport/report_io.hpp"

#include "cvteleport/sweep.hpp"

#include <sstream>

namespace cvteleport {

namespace {

nlohmann::ordered_json cm_to_json(const CovarianceMatrix& sigma) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (int i = 0; i < sigma.mat().rows(); ++i) {
        for (int j = 0; j < sigma.mat().cols(); ++j) {
            entries.push_back(sigma(i, j));
        }
    }
    return {{"n_modes", sigma.n_modes()}, {"entries", std::move(entries)}};
}

void render_cm(std::ostringstream& out, const std::string& title, const CovarianceMatrix& sigma) {
    out << title << " (" << sigma.n_modes() << " modes):\n";
    for (int i = 0; i < sigma.mat().rows(); ++i) {
        out << " ";
        for (int j = 0; j < sigma.mat().cols(); ++j) {
            out << " " << format_g17(sigma(i, j));
        }
        out << "\n";
    }
}

constexpr const char* kFidelityNote =
    "fidelity formula mixes a vacuum-variance-1/2 offset (the 1/4 terms) with "
    "vacuum-variance-1 covariance matrices; F < 1 even for identical pure states";

}  // namespace

nlohmann::ordered_json teleport_report_to_json(const TeleportReport& report,
                                               const ProtocolConfig& config) {
    nlohmann::ordered_json j;
    j["config"] = {{"q", config.source.q},
                   {"eta", config.source.eta},
                   {"r", config.amplifier.r},
                   {"phi", config.amplifier.phi},
                   {"convention", to_string(config.convention)}};
    j["derived"] = {{"c", config.amplifier.c}, {"s", config.amplifier.s},
                    {"k", config.amplifier.k}, {"h", config.amplifier.h},
                    {"x", config.source.x},    {"y", config.source.y},
                    {"u", config.source.u},    {"v", config.source.v}};
    j["sigma_in"] = cm_to_json(report.sigma_in);
    j["sigma_shared"] = cm_to_json(report.sigma_shared);
    j["sigma_out"] = cm_to_json(report.sigma_out);
    j["metrics"] = {{"nu_pipeline", report.nu_pipeline},
                    {"nu_closed_form", report.nu_closed_form},
                    {"log_negativity_bits", report.log_negativity},
                    {"fidelity", report.fidelity}};
    nlohmann::ordered_json residuals;
    for (const auto& [name, value] : report.residuals) {
        residuals[name] = value;
    }
    j["residuals"] = std::move(residuals);
    j["notes"] = nlohmann::ordered_json::array({kFidelityNote});
    return j;
}

std::string teleport_report_to_text(const TeleportReport& report, const ProtocolConfig& config) {
    std::ostringstream out;
    out << "teleportation run\n";
    out << "  q = " << format_g17(config.source.q) << "  eta = " << format_g17(config.source.eta)
        << "\n";
    out << "  r = " << format_g17(config.amplifier.r)
        << "  phi = " << format_g17(config.amplifier.phi) << "\n";
    out << "  convention = " << to_string(config.convention) << "\n\n";
    render_cm(out, "sigma_in", report.sigma_in);
    out << "\n";
    render_cm(out, "sigma_shared", report.sigma_shared);
    out << "\n";
    render_cm(out, "sigma_out", report.sigma_out);
    out << "\nmetrics:\n";
    out << "  nu_pipeline        = " << format_g17(report.nu_pipeline) << "\n";
    out << "  nu_closed_form     = " << format_g17(report.nu_closed_form) << "\n";
    out << "  log_negativity     = " << format_g17(report.log_negativity) << " bits\n";
    out << "  fidelity           = " << format_g17(report.fidelity) << "\n";
    out << "residuals:\n";
    for (const auto& [name, value] : report.residuals) {
        out << "  " << name << " = " << format_g17(value) << "\n";
    }
    out << "note: " << kFidelityNote << "\n";
    return out.str();
}

nlohmann::ordered_json verify_report_to_json(const VerifyReport& report) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& check : report.checks) {
        checks.push_back({{"name", check.name},
                          {"status", to_string(check.status)},
                          {"measured", check.measured},
                          {"expected", check.expected},
                          {"tolerance", check.tolerance},
                          {"detail", check.detail}});
    }
    j["checks"] = std::move(checks);
    j["resolved_b2_ordering"] = report.resolved_b2_ordering;
    j["eq11_vs_eq14_discrepancy"] = report.eq11_vs_eq14_discrepancy;
    j["hard_failures"] = report.hard_failures();
    return j;
}

std::string verify_report_to_text(const VerifyReport& report) {
    std::ostringstream out;
    out << "verification suite\n";
    for (const auto& check : report.checks) {
        out << "  [" << to_string(check.status) << "] " << check.name
            << ": measured = " << format_g17(check.measured)
            << ", expected = " << format_g17(check.expected)
            << ", tolerance = " << format_g17(check.tolerance) << "\n";
        if (!check.detail.empty()) {
            out << "      " << check.detail << "\n";
        }
    }
    out << "resolved B2 input order:";
    for (const auto& label : report.resolved_b2_ordering) {
        out << " " << label;
    }
    out << "\n";
    out << "eq11 vs eq14 max discrepancy: " << format_g17(report.eq11_vs_eq14_discrepancy)
        << "\n";
    out << "hard failures: " << report.hard_failures() << "\n";
    return out.str();
}

}  // namespace cvteleport
