#pragma once

#include "cvteleport/covariance_matrix.hpp"
#include "cvteleport/metrics.hpp"
#include "cvteleport/transforms.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cvteleport {

enum class CheckStatus { pass, fail, informational };

const char* to_string(CheckStatus status);

/// One named verification check. `informational` entries record a measured
/// quantity without ever failing the suite.
struct CheckResult {
    std::string name;
    CheckStatus status;
    double measured;
    double expected;
    double tolerance;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;  // sorted by name
    std::vector<std::string> resolved_b2_ordering;
    double eq11_vs_eq14_discrepancy;

    int hard_failures() const;
    bool all_hard_passed() const { return hard_failures() == 0; }
    const CheckResult* find(const std::string& name) const;
};

/// Independent spectral route used only for cross-checks: square roots of
/// the eigenvalues of -(Omega*sigma)^2, paired and sorted. Deliberately a
/// separate implementation from metrics::symplectic_eigenvalues.
PtSpectrum oracle_symplectic_spectrum(const CovarianceMatrix& sigma);

/// Single-mode symplectic rotation(theta) * squeeze(z) * rotation(theta2).
/// Identity at theta = z = theta2 = 0.
Eigen::Matrix2d local_symplectic_block(double theta, double z, double theta2);

/// Block-diagonal symplectic built per mode from seeded rotation angles in
/// [0, 2pi) and squeeze parameters in [-1, 1]. Satisfies S Omega S^T = Omega
/// to 1e-12; identical seeds give identical matrices.
LinearTransform random_local_symplectic(std::uint64_t seed, int n_modes);

/// Seeded physical covariance matrix: S * D * S^T with D diagonal >= 1 and
/// S a symplectic built from local blocks and an orthogonal mode mixer.
/// Physical by construction.
CovarianceMatrix random_physical_cm(std::uint64_t seed, int n_modes);

/// Runs every acceptance-level check and module invariant; deterministic
/// (fixed seeds), failures are reported rather than thrown.
VerifyReport run_suite();

}  // namespace cvteleport
