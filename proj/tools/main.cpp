#include "cvteleport/metrics.hpp"
#include "cvteleport/protocol.hpp"
#include "cvteleport/report_io.hpp"
#include "cvteleport/sweep.hpp"
#include "cvteleport/verification.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitArgumentError = 2;
constexpr int kExitIoError = 3;

// Writes to `path` when given, stdout otherwise. Returns false on I/O failure.
bool emit(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return static_cast<bool>(std::cout);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        return false;
    }
    out << payload;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian-state simulator for continuous-variable teleportation of "
                 "two-mode squeezed states"};
    app.require_subcommand(1);

    double q = 0.0;
    double eta = std::numbers::pi / 4.0;
    double r = 0.0;
    double phi = std::numbers::pi / 8.0;
    std::string convention = "as-printed";
    std::string format = "text";
    std::string metric = "both";
    std::string nu_route = "pipeline";
    std::string out_path;

    auto add_common = [&](CLI::App* cmd, bool with_phases) {
        if (with_phases) {
            cmd->add_option("--eta", eta, "source amplifier phase (radians)");
            cmd->add_option("--phi", phi, "teleportation amplifier phase (radians)");
        }
        cmd->add_option("--convention", convention, "gain convention")
            ->check(CLI::IsMember({"as-printed", "gain-corrected"}));
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "machine"}));
        cmd->add_option("--out", out_path, "output path");
    };

    CLI::App* run = app.add_subcommand("run", "single teleportation run");
    run->add_option("--q", q, "source squeezing");
    run->add_option("--r", r, "teleportation amplifier squeezing");
    run->add_option("--nu-route", nu_route, "nu_minus source for reporting")
        ->check(CLI::IsMember({"pipeline", "closed-form"}));
    add_common(run, true);

    cvteleport::SweepGrid grid;
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    sweep->add_option("--q-min", grid.q_min, "minimum source squeezing");
    sweep->add_option("--q-max", grid.q_max, "maximum source squeezing");
    sweep->add_option("--q-steps", grid.q_steps, "source squeezing steps");
    sweep->add_option("--r-min", grid.r_min, "minimum amplifier squeezing");
    sweep->add_option("--r-max", grid.r_max, "maximum amplifier squeezing");
    sweep->add_option("--r-steps", grid.r_steps, "amplifier squeezing steps");
    sweep->add_option("--eta", grid.eta, "source amplifier phase (radians)");
    sweep->add_option("--phi", grid.phi, "teleportation amplifier phase (radians)");
    sweep->add_option("--metric", metric, "which metric columns to fill")
        ->check(CLI::IsMember({"en", "fidelity", "both"}));
    sweep->add_option("--nu-route", nu_route, "nu_minus source")
        ->check(CLI::IsMember({"pipeline", "closed-form"}));
    sweep->add_option("--convention", convention, "gain convention")
        ->check(CLI::IsMember({"as-printed", "gain-corrected"}));
    sweep->add_option("--out", out_path, "CSV output path")->required();

    CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "machine"}));
    verify->add_option("--out", out_path, "report output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitArgumentError;
    }

    try {
        if (run->parsed()) {
            const cvteleport::ProtocolConfig config{
                cvteleport::SourceSpec(q, eta), cvteleport::AmplifierSpec(r, phi),
                cvteleport::convention_from_string(convention)};
            cvteleport::TeleportReport report = cvteleport::teleport(config);
            if (cvteleport::nu_route_from_string(nu_route) == cvteleport::NuRoute::closed_form) {
                report.log_negativity = std::max(0.0, -std::log2(report.nu_closed_form));
            }
            const std::string payload =
                format == "machine"
                    ? cvteleport::teleport_report_to_json(report, config).dump(2) + "\n"
                    : cvteleport::teleport_report_to_text(report, config);
            if (!emit(out_path, payload)) {
                std::cerr << "error: cannot write " << out_path << "\n";
                return kExitIoError;
            }
            return kExitOk;
        }
        if (sweep->parsed()) {
            grid.convention = cvteleport::convention_from_string(convention);
            const std::string csv = cvteleport::run_sweep_csv(
                grid, cvteleport::sweep_metric_from_string(metric),
                cvteleport::nu_route_from_string(nu_route));
            if (!emit(out_path, csv)) {
                std::cerr << "error: cannot write " << out_path << "\n";
                return kExitIoError;
            }
            return kExitOk;
        }
        // verify
        const cvteleport::VerifyReport report = cvteleport::run_suite();
        const std::string payload =
            format == "machine" ? cvteleport::verify_report_to_json(report).dump(2) + "\n"
                                : cvteleport::verify_report_to_text(report);
        if (!emit(out_path, payload)) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kExitIoError;
        }
        return report.all_hard_passed() ? kExitOk : kExitVerifyFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgumentError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFailure;
    }
}
