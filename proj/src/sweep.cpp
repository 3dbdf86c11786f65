#include "cvteleport/sweep.hpp"

#include "cvteleport/metrics.hpp"
#include "cvteleport/protocol.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cvteleport {

SweepGrid::SweepGrid() : eta(std::numbers::pi / 4.0), phi(std::numbers::pi / 8.0) {}

void SweepGrid::validate() const {
    if (!(q_min <= q_max) || !(r_min <= r_max)) {
        throw std::invalid_argument("sweep grid requires min <= max");
    }
    if (q_steps < 1 || r_steps < 1) {
        throw std::invalid_argument("sweep grid requires steps >= 1");
    }
    if (q_min < 0.0 || r_min < 0.0) {
        throw std::invalid_argument("sweep grid squeezings must be >= 0");
    }
}

double SweepGrid::q_at(int i) const {
    return q_steps == 1 ? q_min : q_min + (q_max - q_min) * i / (q_steps - 1);
}

double SweepGrid::r_at(int j) const {
    return r_steps == 1 ? r_min : r_min + (r_max - r_min) * j / (r_steps - 1);
}

SweepMetric sweep_metric_from_string(const std::string& name) {
    if (name == "en") return SweepMetric::en;
    if (name == "fidelity") return SweepMetric::fidelity;
    if (name == "both") return SweepMetric::both;
    throw std::invalid_argument("unknown metric: " + name);
}

NuRoute nu_route_from_string(const std::string& name) {
    if (name == "pipeline") return NuRoute::pipeline;
    if (name == "closed-form") return NuRoute::closed_form;
    throw std::invalid_argument("unknown nu route: " + name);
}

std::string format_g17(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string run_sweep_csv(const SweepGrid& grid, SweepMetric metric, NuRoute route) {
    grid.validate();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::string csv = "q,r,nu_minus,log_negativity,fidelity,convention\n";
    for (int i = 0; i < grid.q_steps; ++i) {
        const double q = grid.q_at(i);
        for (int j = 0; j < grid.r_steps; ++j) {
            const double r = grid.r_at(j);
            const ProtocolConfig config{SourceSpec(q, grid.eta), AmplifierSpec(r, grid.phi),
                                        grid.convention};
            const TeleportReport report = teleport(config);
            double nu = report.nu_pipeline;
            double en = report.log_negativity;
            if (route == NuRoute::closed_form) {
                nu = report.nu_closed_form;
                en = std::max(0.0, -std::log2(nu));
            }
            const double log_neg = metric == SweepMetric::fidelity ? nan : en;
            const double fid = metric == SweepMetric::en ? nan : report.fidelity;
            csv += format_g17(q);
            csv += ',';
            csv += format_g17(r);
            csv += ',';
            csv += format_g17(nu);
            csv += ',';
            csv += format_g17(log_neg);
            csv += ',';
            csv += format_g17(fid);
            csv += ',';
            csv += to_string(grid.convention);
            csv += '\n';
        }
    }
    return csv;
}

}  // namespace cvteleport
