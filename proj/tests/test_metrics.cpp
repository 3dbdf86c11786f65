#include "cvteleport/metrics.hpp"
#include "cvteleport/protocol.hpp"
#include "cvteleport/verification.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace cvteleport;
using test_helpers::max_abs_diff;

namespace {
constexpr double kPi = std::numbers::pi;
const double kSinh1 = std::sinh(1.0);
}  // namespace

TEST_CASE("partial transpose") {
    const CovarianceMatrix src = source_state(SourceSpec(0.5, kPi / 4));
    const CovarianceMatrix pt = partial_transpose(src, 1);
    // The (P1,P2) coupling flips sign; the (X1,X2) coupling is untouched.
    CHECK(pt(0, 2) == src(0, 2));
    CHECK(pt(1, 3) == -src(1, 3));
    CHECK(std::abs(pt(0, 2) - kSinh1) <= 1e-12);
    CHECK(std::abs(pt(1, 3) - kSinh1) <= 1e-12);

    CHECK(max_abs_diff(partial_transpose(pt, 1).mat(), src.mat()) == 0.0);
    CHECK(max_abs_diff(partial_transpose(vacuum(2), 0).mat(), vacuum(2).mat()) == 0.0);
    CHECK_THROWS_AS(partial_transpose(src, 2), std::invalid_argument);
    CHECK_THROWS_AS(partial_transpose(src, -1), std::invalid_argument);
}

TEST_CASE("symplectic eigenvalues of pure states") {
    const PtSpectrum vac = symplectic_eigenvalues(vacuum(2));
    CHECK(std::abs(vac.values[0] - 1.0) <= 1e-12);
    CHECK(std::abs(vac.values[1] - 1.0) <= 1e-12);

    for (double q : {0.0, 0.5, 1.0, 2.0}) {
        for (double eta : {0.0, kPi / 8, kPi / 4}) {
            const PtSpectrum s = symplectic_eigenvalues(source_state(SourceSpec(q, eta)));
            CHECK(std::abs(s.values[0] - 1.0) <= 1e-9);
            CHECK(std::abs(s.values[1] - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("PT spectrum of the source family has the closed-form floor") {
    for (double q : {0.25, 0.5, 1.0, 1.5, 2.0}) {
        const CovarianceMatrix pt =
            partial_transpose(source_state(SourceSpec(q, kPi / 4)), 1);
        CHECK(std::abs(symplectic_eigenvalues(pt).smallest() - std::exp(-2.0 * q)) <= 1e-12);
    }
}

TEST_CASE("nu closed form") {
    CHECK(nu_closed_form(0.0, 0.0) == 1.0);
    CHECK(std::abs(nu_closed_form(0.5, 0.0) - 0.78929314705714744) <= 1e-12);
    CHECK(std::abs(nu_closed_form(1.0, 0.0) - 0.71177842774553756) <= 1e-12);
    CHECK(std::abs(nu_closed_form(0.5, 0.0) - (2.0 + std::exp(-1.0)) / 3.0) <= 1e-15);
    CHECK_THROWS_AS(nu_closed_form(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(nu_closed_form(0.0, -0.1), std::invalid_argument);
}

TEST_CASE("log negativity") {
    CHECK(log_negativity(vacuum(2)) == 0.0);
    CHECK(std::abs(log_negativity(source_state(SourceSpec(0.5, kPi / 4))) -
                   1.4426950408889634) <= 1e-12);
    // E_N = 2 q log2(e) for the u = 0 family.
    for (double q : {0.25, 0.75, 1.5, 2.0}) {
        const double expected = 2.0 * q / std::numbers::ln2;
        CHECK(std::abs(log_negativity(source_state(SourceSpec(q, kPi / 4))) - expected) <=
              1e-12 * std::max(1.0, expected));
    }
    // Product input: no entanglement survives teleportation, exactly.
    for (double r : {0.0, 1.0}) {
        const TeleportReport report = teleport(
            {SourceSpec(0.0, kPi / 4), AmplifierSpec(r, kPi / 8), GainConvention::as_printed});
        CHECK(report.log_negativity == 0.0);
    }
    CHECK_THROWS_AS(log_negativity(vacuum(1)), std::invalid_argument);
    CHECK_THROWS_AS(log_negativity(vacuum(3)), std::invalid_argument);
}

TEST_CASE("fidelity formula") {
    const double anchor = fidelity(vacuum(2), vacuum(2));
    CHECK(std::abs(anchor - 1.0 / (std::sqrt(16.0 + 2.25) - 1.5)) <= 1e-9);
    CHECK(std::abs(anchor - 0.36075011704117285) <= 1e-9);

    // Det = 1/4 on both sides makes delta vanish: F = 1/sqrt(Det[in + out]).
    const CovarianceMatrix half(std::sqrt(0.5) * Eigen::MatrixXd::Identity(4, 4));
    CHECK(std::abs(fidelity(half, half) - 0.5) <= 1e-12);

    // fidelity(sigma, sigma) decreases as lambda*I grows.
    double previous = std::numeric_limits<double>::infinity();
    for (double lambda : {1.0, 1.25, 1.5, 2.0, 3.0}) {
        const CovarianceMatrix state(lambda * Eigen::MatrixXd::Identity(4, 4));
        const double f = fidelity(state, state);
        CHECK(f < previous);
        previous = f;
    }

    CHECK_THROWS_AS(fidelity(vacuum(1), vacuum(1)), std::invalid_argument);
    // One determinant below 1/4 makes delta negative.
    const CovarianceMatrix shallow(0.6 * Eigen::MatrixXd::Identity(4, 4));
    CHECK_THROWS_AS(fidelity(shallow, vacuum(2)), std::domain_error);
}

TEST_CASE("log negativity is invariant under local symplectics") {
    const TeleportReport base = teleport(
        {SourceSpec(1.5, kPi / 4), AmplifierSpec(0.0, kPi / 8), GainConvention::as_printed});
    REQUIRE(base.log_negativity > 0.0);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const LinearTransform local = random_local_symplectic(seed, 2);
        const double transformed = log_negativity(apply(local, base.sigma_out));
        CHECK(std::abs(transformed - base.log_negativity) <= 1e-9);
    }
}

TEST_CASE("entanglement/fidelity trade-off in the source squeezing") {
    for (double r : {0.0, 0.5, 1.0}) {
        double prev_en = -1.0;
        double prev_f = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 8; ++i) {
            const double q = 0.25 * i;
            const TeleportReport report = teleport(
                {SourceSpec(q, kPi / 4), AmplifierSpec(r, kPi / 8), GainConvention::as_printed});
            CHECK(report.log_negativity >= prev_en - 1e-12);
            CHECK(report.fidelity <= prev_f + 1e-12);
            prev_en = report.log_negativity;
            prev_f = report.fidelity;
        }
    }
}
