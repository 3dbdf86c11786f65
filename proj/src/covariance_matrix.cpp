#include "cvteleport/covariance_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cvteleport {

namespace {

constexpr double kSymmetryTol = 1e-12;

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
}

}  // namespace

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("covariance matrix must be square");
    }
    if (entries_.rows() < 2 || entries_.rows() % 2 != 0) {
        throw std::invalid_argument("covariance matrix dimension must be a positive even number");
    }
    if (!entries_.allFinite()) {
        throw std::invalid_argument("covariance matrix entries must be finite");
    }
    const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTol) {
        throw std::invalid_argument("covariance matrix is not symmetric (residual " +
                                    std::to_string(asym) + ")");
    }
}

Eigen::MatrixXd symplectic_form(int n_modes) {
    if (n_modes < 1) {
        throw std::invalid_argument("n_modes must be >= 1");
    }
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int m = 0; m < n_modes; ++m) {
        omega(2 * m, 2 * m + 1) = 1.0;
        omega(2 * m + 1, 2 * m) = -1.0;
    }
    return omega;
}

CovarianceMatrix vacuum(int n_modes) {
    if (n_modes < 1) {
        throw std::invalid_argument("n_modes must be >= 1");
    }
    return CovarianceMatrix(Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

AmplifierSpec::AmplifierSpec(double r_in, double phi_in) : r(r_in), phi(phi_in) {
    require_finite(r, "r");
    require_finite(phi, "phi");
    if (r < 0.0) {
        throw std::invalid_argument("squeezing parameter r must be >= 0");
    }
    c = std::cosh(2.0 * r);
    s = std::sinh(2.0 * r);
    k = std::sin(2.0 * phi);
    h = std::cos(2.0 * phi);
    if (!std::isfinite(c)) {
        throw std::invalid_argument("squeezing parameter r too large for double precision");
    }
    // c^2 - s^2 = 1 up to cancellation of order c^2 * eps, hence the scaling.
    if (std::abs(c * c - s * s - 1.0) > 1e-12 * std::max(1.0, c * c) ||
        std::abs(h * h + k * k - 1.0) > 1e-12) {
        throw std::logic_error("amplifier derived quantities violate hyperbolic identities");
    }
}

double AmplifierSpec::noise_term() const {
    return 0.5 * ((1.0 + k) * std::exp(2.0 * r) + (1.0 - k) * std::exp(-2.0 * r));
}

SourceSpec::SourceSpec(double q_in, double eta_in) : q(q_in), eta(eta_in) {
    require_finite(q, "q");
    require_finite(eta, "eta");
    if (q < 0.0) {
        throw std::invalid_argument("squeezing parameter q must be >= 0");
    }
    x = std::cosh(2.0 * q);
    y = std::sinh(2.0 * q);
    u = std::cos(2.0 * eta);
    v = std::sin(2.0 * eta);
    if (!std::isfinite(x)) {
        throw std::invalid_argument("squeezing parameter q too large for double precision");
    }
    if (std::abs(x * x - y * y - 1.0) > 1e-12 * std::max(1.0, x * x) ||
        std::abs(u * u + v * v - 1.0) > 1e-12) {
        throw std::logic_error("source derived quantities violate hyperbolic identities");
    }
}

CovarianceMatrix two_mode_squeezed(const AmplifierSpec& spec) {
    const double hs = spec.h * spec.s;
    const double ks = spec.k * spec.s;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    m(0, 0) = spec.c - hs;
    m(1, 1) = spec.c + hs;
    m(2, 2) = spec.c + hs;
    m(3, 3) = spec.c - hs;
    m(0, 2) = m(2, 0) = ks;
    m(1, 3) = m(3, 1) = -ks;
    return CovarianceMatrix(std::move(m));
}

CovarianceMatrix source_state(const SourceSpec& spec) {
    const double uy = spec.u * spec.y;
    const double vy = spec.v * spec.y;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    m(0, 0) = spec.x - uy;
    m(1, 1) = spec.x + uy;
    m(2, 2) = spec.x + uy;
    m(3, 3) = spec.x - uy;
    m(0, 2) = m(2, 0) = vy;
    m(1, 3) = m(3, 1) = -vy;
    return CovarianceMatrix(std::move(m));
}

CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b) {
    const auto na = a.mat().rows();
    const auto nb = b.mat().rows();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(na + nb, na + nb);
    m.topLeftCorner(na, na) = a.mat();
    m.bottomRightCorner(nb, nb) = b.mat();
    return CovarianceMatrix(std::move(m));
}

CovarianceMatrix permute_modes(const CovarianceMatrix& sigma, const std::vector<int>& perm) {
    const int n = sigma.n_modes();
    if (static_cast<int>(perm.size()) != n) {
        throw std::invalid_argument("permutation size must equal the mode count");
    }
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[p]) {
            throw std::invalid_argument("permutation must be a bijection on mode indices");
        }
        seen[p] = true;
    }
    Eigen::MatrixXd m(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m.block<2, 2>(2 * i, 2 * j) = sigma.mat().block<2, 2>(2 * perm[i], 2 * perm[j]);
        }
    }
    return CovarianceMatrix(std::move(m));
}

bool is_physical(const CovarianceMatrix& sigma, double tol) {
    const int n = sigma.n_modes();
    Eigen::MatrixXcd herm =
        sigma.mat().cast<std::complex<double>>() +
        std::complex<double>(0.0, 1.0) * symplectic_form(n).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("Hermitian eigensolve failed in is_physical");
    }
    return solver.eigenvalues().minCoeff() >= -tol;
}

}  // namespace cvteleport
