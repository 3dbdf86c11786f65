#pragma once

#include "cvteleport/transforms.hpp"

#include <string>

namespace cvteleport {

/// Parameter grid for the entanglement/fidelity surfaces. Defaults mirror
/// the visible figure axes: q, r in [0, 2] with 41 steps each, phases
/// eta = pi/4 (u = 0, v = 1) and phi = pi/8 (h = k = 1/sqrt 2).
struct SweepGrid {
    double q_min = 0.0;
    double q_max = 2.0;
    int q_steps = 41;
    double r_min = 0.0;
    double r_max = 2.0;
    int r_steps = 41;
    double eta;  // defaulted in the constructor
    double phi;
    GainConvention convention = GainConvention::as_printed;

    SweepGrid();

    void validate() const;
    double q_at(int i) const;
    double r_at(int j) const;
};

/// Which metric columns of the CSV are populated; the others print "nan".
enum class SweepMetric { en, fidelity, both };

/// Source of the nu_minus column (and of log_negativity): the pipeline PT
/// spectrum or the closed-form expression.
enum class NuRoute { pipeline, closed_form };

SweepMetric sweep_metric_from_string(const std::string& name);
NuRoute nu_route_from_string(const std::string& name);

/// Renders the full CSV (header `q,r,nu_minus,log_negativity,fidelity,convention`,
/// rows in row-major q-outer order, 17 significant digits, LF endings).
/// A pure function of its arguments: identical bytes on every call.
std::string run_sweep_csv(const SweepGrid& grid, SweepMetric metric,
                          NuRoute route = NuRoute::pipeline);

/// printf "%.17g" formatting used for all numeric text output.
std::string format_g17(double value);

}  // namespace cvteleport
