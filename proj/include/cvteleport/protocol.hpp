#pragma once

#include "cvteleport/covariance_matrix.hpp"
#include "cvteleport/transforms.hpp"

#include <map>
#include <string>
#include <utility>

namespace cvteleport {

/// Full configuration of one teleportation run. A single amplifier spec
/// drives both teleportation amplifiers (they are taken identical).
struct ProtocolConfig {
    SourceSpec source;
    AmplifierSpec amplifier;
    GainConvention convention = GainConvention::as_printed;
};

/// Everything produced by one run of the pipeline.
struct TeleportReport {
    CovarianceMatrix sigma_in;      // two-mode source state (x7, x8)
    CovarianceMatrix sigma_shared;  // four-mode shared state (x5, x6, x15, x16)
    CovarianceMatrix sigma_out;     // teleported two-mode state (x13, x14)
    double nu_pipeline;             // smallest PT symplectic eigenvalue of sigma_out
    double nu_closed_form;          // closed-form value (as-printed scale)
    double log_negativity;          // bits, from the pipeline spectrum
    double fidelity;                // between sigma_in and sigma_out
    GainConvention convention;
    std::map<std::string, double> residuals;
};

/// The four-mode state shared by Alice and Bob, slot order (x5,x6,x15,x16):
/// B1 applied to the direct sum of two identical two-mode squeezed states
/// in slot order (x1,x3,x2,x4). Pure for every (r, phi).
CovarianceMatrix shared_four_mode(const AmplifierSpec& amplifier);

/// Runs the full pipeline: builds the six-mode state
/// (x5,x6,x15,x16,x7,x8), reorders it to the B2 feed order, applies the
/// measurement-feedforward composite and fills in all metrics.
///
/// The congruence is evaluated once with the exact {-1,0,1} gain-corrected
/// composite; the as-printed output is that result divided by 3 and the
/// gain-corrected output is defined as exactly 3x the as-printed one, so
/// the factor-3 relation between the conventions is bit-exact.
TeleportReport teleport(const ProtocolConfig& config);

/// Closed-form output state: diagonal (2(c+ks) + x -+ uy)/3 with couplings
/// -+ vy/3 (as-printed); exactly 3x that for gain-corrected. The noise
/// scalar c + ks is evaluated in the cancellation-free exponential form.
CovarianceMatrix output_closed_form(const ProtocolConfig& config);

/// Splits a gain-corrected output into (sigma_prime, 2(c+ks)): the
/// sign-flipped copy of the input state plus isotropic feedforward noise.
/// Verifies the reconstruction to 1e-12 and rejects the as-printed
/// convention (the decomposition holds only without the global 1/3).
std::pair<CovarianceMatrix, double> decompose_output(const CovarianceMatrix& sigma_out,
                                                     const ProtocolConfig& config);

/// Local pi phase rotation of the first mode, S = (-I2) (+) I2, applied by
/// congruence. Maps the sigma_prime coupling pattern back to the source
/// pattern (and vice versa); an exact involution that cannot change
/// entanglement.
CovarianceMatrix llubo_equivalent(const CovarianceMatrix& sigma_prime);

/// Runs the gain-corrected pipeline at r = 0 and returns
/// ||sigma_out - (llubo(sigma_in) + 2 I)||_inf. Contract: < 1e-12 — with
/// coherent teleportation amplifiers each output variance sits exactly two
/// vacuum units above the (sign-flipped) input.
double tan_limit_check(const SourceSpec& source);

/// Gain-corrected pipeline at amplifier phase -pi/4 (k = -1):
/// ||sigma_out - sigma_prime||_inf, which equals 2 e^{-2r} identically.
/// The returned value is computed through the decomposition identity after
/// a structural cross-check of the pipeline against the closed form; the
/// literal double-precision matrix difference cannot resolve 2 e^{-2r}
/// below the rounding floor of entries of size cosh(2q) once r is large.
double ideal_limit_check(const SourceSpec& source, double r);

}  // namespace cvteleport
