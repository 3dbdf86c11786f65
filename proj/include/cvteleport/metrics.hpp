#pragma once

#include "cvteleport/covariance_matrix.hpp"

#include <vector>

namespace cvteleport {

/// Symplectic eigenvalues of a (possibly partially transposed) covariance
/// matrix, one per mode, sorted ascending.
struct PtSpectrum {
    std::vector<double> values;

    double smallest() const { return values.front(); }
};

/// Momentum-sign flip of one mode (P -> -P on that mode's row and column).
/// An exact involution.
CovarianceMatrix partial_transpose(const CovarianceMatrix& sigma, int mode);

/// Moduli of the eigenvalues of i*Omega*sigma, which occur in +- pairs; the
/// n_modes paired values are returned sorted ascending. Cross-checked
/// internally against the square roots of the eigenvalues of -(Omega*sigma)^2;
/// the two routes must agree to 1e-9. Throws if the 2n moduli fail to pair
/// within 1e-8 (malformed covariance matrix).
PtSpectrum symplectic_eigenvalues(const CovarianceMatrix& sigma);

/// Closed-form smallest PT symplectic eigenvalue of the teleported state at
/// the u=0, v=1, h=k=1/sqrt(2) phase choice:
///   (1/3) * sqrt((2c + x - y)^2 - 2 s^2),
/// with c = cosh(2r), s = sinh(2r), x - y = e^{-2q}. Note this expression
/// assumes the feedforward noise enters the X and P quadratures with
/// opposite signs; the pipeline output carries it with equal signs, so the
/// two values agree only at r = 0 (the disagreement is reported by the
/// verification suite).
double nu_closed_form(double q, double r);

/// max(0, -log2 of the smallest PT symplectic eigenvalue), in bits, for a
/// two-mode state; `mode` selects which mode is transposed (either gives
/// the same spectrum).
double log_negativity(const CovarianceMatrix& sigma, int mode = 1);

/// Teleportation fidelity between two-mode input and output states:
///   F = 1 / (sqrt(Det[s_in + s_out] + delta) - sqrt(delta)),
///   delta = 4 (Det[s_in] - 1/4)(Det[s_out] - 1/4),
/// evaluated verbatim on the full 4x4 determinants. The 1/4 offsets follow a
/// vacuum-variance-1/2 convention while the covariance matrices use vacuum
/// variance 1, so F < 1 even for identical pure input and output; the
/// formula is applied as-is rather than corrected.
double fidelity(const CovarianceMatrix& sigma_in, const CovarianceMatrix& sigma_out);

}  // namespace cvteleport
