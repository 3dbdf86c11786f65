#include "cvteleport/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cvteleport {

namespace {

// Sorted moduli come in adjacent pairs (+nu, -nu); collapse them to one
// value per mode, checking the pairing tolerance.
std::vector<double> pair_moduli(std::vector<double> moduli, double pair_tol) {
    std::sort(moduli.begin(), moduli.end());
    std::vector<double> paired;
    paired.reserve(moduli.size() / 2);
    for (std::size_t i = 0; i + 1 < moduli.size(); i += 2) {
        const double gap = moduli[i + 1] - moduli[i];
        if (gap > pair_tol * std::max(1.0, moduli[i + 1])) {
            throw std::runtime_error("symplectic eigenvalues fail to pair (gap " +
                                     std::to_string(gap) + "); malformed covariance matrix");
        }
        paired.push_back(0.5 * (moduli[i] + moduli[i + 1]));
    }
    return paired;
}

std::vector<double> spectrum_from_omega_sigma(const Eigen::MatrixXd& os) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(os, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigensolve of Omega*sigma failed");
    }
    std::vector<double> moduli(static_cast<std::size_t>(os.rows()));
    for (Eigen::Index i = 0; i < os.rows(); ++i) {
        moduli[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()(i));
    }
    return pair_moduli(std::move(moduli), 1e-8);
}

std::vector<double> spectrum_from_squared(const Eigen::MatrixXd& os) {
    const Eigen::MatrixXd squared = -(os * os);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(squared, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigensolve of -(Omega*sigma)^2 failed");
    }
    const double scale = std::max(1.0, squared.cwiseAbs().maxCoeff());
    std::vector<double> moduli(static_cast<std::size_t>(os.rows()));
    for (Eigen::Index i = 0; i < os.rows(); ++i) {
        const auto ev = solver.eigenvalues()(i);
        if (std::abs(ev.imag()) > 1e-9 * scale) {
            throw std::runtime_error("-(Omega*sigma)^2 has non-real eigenvalues; "
                                     "malformed covariance matrix");
        }
        moduli[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, ev.real()));
    }
    return pair_moduli(std::move(moduli), 1e-8);
}

void require_two_modes(const CovarianceMatrix& sigma, const char* what) {
    if (sigma.n_modes() != 2) {
        throw std::invalid_argument(std::string(what) + " requires a two-mode state");
    }
}

}  // namespace

CovarianceMatrix partial_transpose(const CovarianceMatrix& sigma, int mode) {
    if (mode < 0 || mode >= sigma.n_modes()) {
        throw std::invalid_argument("partial_transpose: mode index out of range");
    }
    Eigen::MatrixXd m = sigma.mat();
    const int p = 2 * mode + 1;
    m.row(p) = -m.row(p);
    m.col(p) = -m.col(p);
    return CovarianceMatrix(std::move(m));
}

PtSpectrum symplectic_eigenvalues(const CovarianceMatrix& sigma) {
    const Eigen::MatrixXd os = symplectic_form(sigma.n_modes()) * sigma.mat();
    std::vector<double> primary = spectrum_from_omega_sigma(os);
    const std::vector<double> check = spectrum_from_squared(os);
    for (std::size_t i = 0; i < primary.size(); ++i) {
        if (std::abs(primary[i] - check[i]) > 1e-9 * std::max(1.0, primary[i])) {
            throw std::runtime_error("symplectic spectrum routes disagree beyond 1e-9");
        }
    }
    return PtSpectrum{std::move(primary)};
}

double nu_closed_form(double q, double r) {
    if (!std::isfinite(q) || !std::isfinite(r) || q < 0.0 || r < 0.0) {
        throw std::invalid_argument("nu_closed_form requires finite q, r >= 0");
    }
    const double c = std::cosh(2.0 * r);
    const double s = std::sinh(2.0 * r);
    const double a = 2.0 * c + std::exp(-2.0 * q);  // 2c + x - y
    const double radicand = a * a - 2.0 * s * s;
    if (radicand < 0.0) {
        throw std::domain_error("nu_closed_form: negative radicand at q=" + std::to_string(q) +
                                ", r=" + std::to_string(r));
    }
    return std::sqrt(radicand) / 3.0;
}

double log_negativity(const CovarianceMatrix& sigma, int mode) {
    require_two_modes(sigma, "log_negativity");
    const double nu = symplectic_eigenvalues(partial_transpose(sigma, mode)).smallest();
    return std::max(0.0, -std::log2(nu));
}

double fidelity(const CovarianceMatrix& sigma_in, const CovarianceMatrix& sigma_out) {
    require_two_modes(sigma_in, "fidelity");
    require_two_modes(sigma_out, "fidelity");
    const double det_in = sigma_in.mat().determinant();
    const double det_out = sigma_out.mat().determinant();
    const double delta = 4.0 * (det_in - 0.25) * (det_out - 0.25);
    if (delta < 0.0) {
        throw std::domain_error("fidelity: delta is negative");
    }
    const double det_sum = (sigma_in.mat() + sigma_out.mat()).determinant();
    const double under_root = det_sum + delta;
    if (under_root <= 0.0) {
        throw std::domain_error("fidelity: non-positive value under the outer square root");
    }
    const double denom = std::sqrt(under_root) - std::sqrt(delta);
    if (denom <= 0.0) {
        throw std::domain_error("fidelity: non-positive denominator");
    }
    return 1.0 / denom;
}

}  // namespace cvteleport
