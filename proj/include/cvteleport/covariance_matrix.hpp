#pragma once

#include <Eigen/Dense>

#include <vector>

namespace cvteleport {

/// Second-moment matrix of an n-mode Gaussian state, in vacuum-variance-1
/// units (vacuum = identity) and interleaved (X1,P1,X2,P2,...) quadrature
/// ordering. First moments are zero throughout this library.
///
/// Construction validates squareness, even dimension, finiteness and
/// symmetry (absolute tolerance 1e-12). Values are immutable.
class CovarianceMatrix {
  public:
    explicit CovarianceMatrix(Eigen::MatrixXd entries);

    int n_modes() const { return static_cast<int>(entries_.rows()) / 2; }
    const Eigen::MatrixXd& mat() const { return entries_; }
    double operator()(int i, int j) const { return entries_(i, j); }

  private:
    Eigen::MatrixXd entries_;
};

/// The canonical antisymmetric form: block-diagonal copies of
/// [[0,1],[-1,0]], one per mode. Satisfies Omega^T = -Omega, Omega^2 = -I.
Eigen::MatrixXd symplectic_form(int n_modes);

/// n-mode vacuum state (2n x 2n identity).
CovarianceMatrix vacuum(int n_modes);

/// Parameters of a teleportation amplifier: squeezing r >= 0 and phase phi.
/// Derived quantities: c = cosh(2r), s = sinh(2r), k = sin(2phi),
/// h = cos(2phi), with c^2 - s^2 = 1 and h^2 + k^2 = 1.
struct AmplifierSpec {
    AmplifierSpec(double r, double phi);

    double r;
    double phi;
    double c;
    double s;
    double k;
    double h;

    /// c + k*s evaluated as ((1+k)e^{2r} + (1-k)e^{-2r})/2. The naive form
    /// cancels catastrophically for k near -1 at large r (the true value is
    /// e^{-2r}); this form has no cancellation and is exact at k = +-1.
    double noise_term() const;
};

/// Parameters of the source amplifier: squeezing q >= 0 and phase eta.
/// Derived: x = cosh(2q), y = sinh(2q), u = cos(2eta), v = sin(2eta).
struct SourceSpec {
    SourceSpec(double q, double eta);

    double q;
    double eta;
    double x;
    double y;
    double u;
    double v;
};

/// Two-mode squeezed state of a teleportation amplifier:
///   [[alpha, gamma], [gamma^T, beta]]
/// with alpha = diag(c-hs, c+hs), beta = diag(c+hs, c-hs),
/// gamma = diag(ks, -ks). Pure (det = 1).
CovarianceMatrix two_mode_squeezed(const AmplifierSpec& spec);

/// Two-mode state emitted by the source amplifier: diagonal
/// (x-uy, x+uy, x+uy, x-uy) with couplings +vy at (X1,X2) and -vy at (P1,P2).
/// Pure (det = 1).
CovarianceMatrix source_state(const SourceSpec& spec);

/// Block-diagonal combination of two states (modes of `a` first).
CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b);

/// Reorders modes: output mode i is input mode perm[i] (0-based), rows and
/// columns moved in (X,P) pairs. perm must be a bijection on 0..n-1.
CovarianceMatrix permute_modes(const CovarianceMatrix& sigma, const std::vector<int>& perm);

/// Bona fide condition: true iff the minimum eigenvalue of sigma + i*Omega
/// is >= -tol (complex Hermitian eigensolve).
bool is_physical(const CovarianceMatrix& sigma, double tol = 1e-9);

}  // namespace cvteleport
