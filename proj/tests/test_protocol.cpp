#include "cvteleport/protocol.hpp"
#include "cvteleport/metrics.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace cvteleport;
using test_helpers::max_abs_diff;
using test_helpers::max_abs_diff_identity;

namespace {
constexpr double kPi = std::numbers::pi;

ProtocolConfig config_at(double q, double r, GainConvention conv,
                         double eta = kPi / 4, double phi = kPi / 8) {
    return ProtocolConfig{SourceSpec(q, eta), AmplifierSpec(r, phi), conv};
}
}  // namespace

TEST_CASE("shared four-mode state") {
    CHECK(max_abs_diff_identity(shared_four_mode(AmplifierSpec(0.0, 0.3)).mat()) <= 1e-12);

    for (double r : {0.0, 0.5, 1.0, 2.0}) {
        for (double phi : {0.0, kPi / 8, kPi / 4}) {
            const CovarianceMatrix shared = shared_four_mode(AmplifierSpec(r, phi));
            CHECK(is_physical(shared, 1e-9));
            for (double nu : symplectic_eigenvalues(shared).values) {
                CHECK(std::abs(nu - 1.0) <= 1e-9);
            }
        }
    }

    // Entangled across Bob's (x5,x16) vs Alice's (x6,x15) cut.
    const CovarianceMatrix shared = shared_four_mode(AmplifierSpec(0.5, kPi / 8));
    const CovarianceMatrix pt = partial_transpose(partial_transpose(shared, 1), 2);
    CHECK(symplectic_eigenvalues(pt).smallest() < 1.0);
}

TEST_CASE("teleporting the double vacuum") {
    const TeleportReport ap = teleport(config_at(0.0, 0.0, GainConvention::as_printed));
    CHECK(max_abs_diff_identity(ap.sigma_out.mat()) <= 1e-12);
    const TeleportReport gc = teleport(config_at(0.0, 0.0, GainConvention::gain_corrected));
    CHECK(max_abs_diff(gc.sigma_out.mat(), 3.0 * Eigen::MatrixXd::Identity(4, 4)) <= 1e-12);
}

TEST_CASE("coherent amplifiers add noise but keep the coupling shape") {
    const TeleportReport report = teleport(config_at(0.5, 0.0, GainConvention::as_printed));
    const double diag = (2.0 + std::cosh(1.0)) / 3.0;
    const double coupling = std::sinh(1.0) / 3.0;
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(report.sigma_out(i, i) - diag) <= 1e-12);
    }
    CHECK(std::abs(report.sigma_out(0, 2) + coupling) <= 1e-12);
    CHECK(std::abs(report.sigma_out(1, 3) - coupling) <= 1e-12);
    // Couplings flip sign relative to the input state.
    CHECK(report.sigma_in(0, 2) > 0.0);
    CHECK(report.sigma_out(0, 2) < 0.0);
}

TEST_CASE("pipeline matches the closed form over the phase grid") {
    for (double q : {0.0, 1.0, 2.0}) {
        for (double r : {0.0, 0.5, 1.5}) {
            for (double eta : {0.0, kPi / 8, kPi / 4}) {
                for (double phi : {0.0, kPi / 8, kPi / 4}) {
                    for (GainConvention conv :
                         {GainConvention::as_printed, GainConvention::gain_corrected}) {
                        const ProtocolConfig config = config_at(q, r, conv, eta, phi);
                        CHECK(max_abs_diff(teleport(config).sigma_out.mat(),
                                           output_closed_form(config).mat()) <= 1e-10);
                    }
                }
            }
        }
    }
}

TEST_CASE("gain relation is bit-exact") {
    for (double q : {0.0, 0.7, 2.0}) {
        for (double r : {0.0, 0.4, 1.6}) {
            const Eigen::MatrixXd ap =
                teleport(config_at(q, r, GainConvention::as_printed)).sigma_out.mat();
            const Eigen::MatrixXd gc =
                teleport(config_at(q, r, GainConvention::gain_corrected)).sigma_out.mat();
            CHECK(max_abs_diff(gc, 3.0 * ap) == 0.0);
        }
    }
}

TEST_CASE("output never mixes X and P quadratures") {
    for (double q : {0.0, 1.0, 2.0}) {
        for (double r : {0.0, 1.0}) {
            for (double eta : {0.0, kPi / 8, kPi / 4}) {
                const TeleportReport report =
                    teleport(config_at(q, r, GainConvention::as_printed, eta));
                CHECK(report.residuals.at("xp-mixing-max") == 0.0);
            }
        }
    }
}

TEST_CASE("closed-form output") {
    CHECK(max_abs_diff_identity(
              output_closed_form(config_at(0.0, 0.0, GainConvention::as_printed)).mat()) == 0.0);

    const ProtocolConfig config = config_at(1.2, 0.8, GainConvention::as_printed);
    const CovarianceMatrix closed = output_closed_form(config);
    CHECK(std::abs(closed(0, 2) + config.source.v * config.source.y / 3.0) <= 1e-15);
    CHECK(closed(0, 2) == closed(2, 0));

    // Gain-corrected closed form minus sigma_prime is the isotropic noise.
    const ProtocolConfig gc = config_at(1.2, 0.8, GainConvention::gain_corrected);
    const Eigen::MatrixXd diff =
        output_closed_form(gc).mat() - llubo_equivalent(source_state(gc.source)).mat();
    const double noise = 2.0 * gc.amplifier.noise_term();
    CHECK(max_abs_diff(diff, noise * Eigen::MatrixXd::Identity(4, 4)) <= 1e-12);
}

TEST_CASE("decomposition of the gain-corrected output") {
    const ProtocolConfig at_rest = config_at(0.5, 0.0, GainConvention::gain_corrected);
    const auto [prime, noise] = decompose_output(teleport(at_rest).sigma_out, at_rest);
    CHECK(noise == 2.0);
    CHECK(max_abs_diff(prime.mat(), llubo_equivalent(source_state(at_rest.source)).mat()) == 0.0);

    // q = 0: sigma_prime is the identity and the output is (1 + noise) I.
    const ProtocolConfig product = config_at(0.0, 0.6, GainConvention::gain_corrected);
    const auto [prime0, noise0] = decompose_output(teleport(product).sigma_out, product);
    CHECK(max_abs_diff_identity(prime0.mat()) == 0.0);
    CHECK(noise0 > 2.0);

    // k = -1 at large r: the noise is the stable 2 e^{-2r}.
    const ProtocolConfig ideal{SourceSpec(0.5, kPi / 4), AmplifierSpec(10.0, -kPi / 4),
                               GainConvention::gain_corrected};
    const auto [prime_i, noise_i] =
        decompose_output(output_closed_form(ideal), ideal);
    CHECK(std::abs(noise_i / 4.1223072448771157e-09 - 1.0) <= 1e-12);

    const ProtocolConfig printed = config_at(0.5, 0.0, GainConvention::as_printed);
    CHECK_THROWS_AS(decompose_output(teleport(printed).sigma_out, printed),
                    std::invalid_argument);
    // A state that is not sigma_prime + noise*I is rejected.
    CHECK_THROWS_AS(decompose_output(vacuum(2), at_rest), std::domain_error);
}

TEST_CASE("llubo equivalence") {
    const CovarianceMatrix src = source_state(SourceSpec(0.5, kPi / 4));
    const CovarianceMatrix flipped = llubo_equivalent(src);
    CHECK(flipped(0, 2) == -src(0, 2));
    CHECK(flipped(1, 3) == -src(1, 3));
    CHECK(max_abs_diff(llubo_equivalent(flipped).mat(), src.mat()) == 0.0);

    const PtSpectrum before = symplectic_eigenvalues(partial_transpose(src, 1));
    const PtSpectrum after = symplectic_eigenvalues(partial_transpose(flipped, 1));
    CHECK(std::abs(before.smallest() - after.smallest()) <= 1e-12);

    CHECK_THROWS_AS(llubo_equivalent(vacuum(3)), std::invalid_argument);
}

TEST_CASE("Tan limit at r = 0") {
    CHECK(tan_limit_check(SourceSpec(0.0, kPi / 4)) <= 1e-14);
    for (double q : {0.5, 1.0, 2.0}) {
        for (double eta : {0.0, kPi / 8, kPi / 4}) {
            CHECK(tan_limit_check(SourceSpec(q, eta)) < 1e-12);
        }
    }
}

TEST_CASE("ideal limit at k = -1") {
    CHECK(ideal_limit_check(SourceSpec(0.5, kPi / 4), 0.0) == 2.0);
    CHECK(std::abs(ideal_limit_check(SourceSpec(0.5, kPi / 4), 5.0) /
                       9.0799859524969703e-05 - 1.0) <= 1e-12);
    CHECK(std::abs(ideal_limit_check(SourceSpec(0.5, kPi / 4), 10.0) /
                       4.1223072448771157e-09 - 1.0) <= 1e-12);
    for (double q : {0.0, 1.0}) {
        for (double r : {0.0, 2.0, 5.0, 10.0}) {
            const double residual = ideal_limit_check(SourceSpec(q, kPi / 4), r);
            CHECK(std::abs(residual / (2.0 * std::exp(-2.0 * r)) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("feedforward noise is monotone in the squeezing") {
    double previous = AmplifierSpec(0.0, kPi / 8).noise_term();
    for (int i = 1; i <= 20; ++i) {
        const double current = AmplifierSpec(0.1 * i, kPi / 8).noise_term();
        CHECK(current > previous);
        previous = current;
    }
    previous = AmplifierSpec(0.0, -kPi / 4).noise_term();
    for (int i = 1; i <= 20; ++i) {
        const double current = AmplifierSpec(0.1 * i, -kPi / 4).noise_term();
        CHECK(current < previous);
        previous = current;
    }
}

TEST_CASE("teleport report bookkeeping") {
    const ProtocolConfig config = config_at(0.5, 0.0, GainConvention::as_printed);
    const TeleportReport report = teleport(config);
    CHECK(report.convention == GainConvention::as_printed);
    CHECK(report.sigma_in.n_modes() == 2);
    CHECK(report.sigma_shared.n_modes() == 4);
    CHECK(report.sigma_out.n_modes() == 2);
    CHECK(report.nu_closed_form == nu_closed_form(0.5, 0.0));
    CHECK(std::abs(report.nu_pipeline - 0.78929314705714744) <= 1e-10);
    CHECK(report.residuals.count("closed-form-agreement") == 1);
    CHECK(report.residuals.count("xp-mixing-max") == 1);
    CHECK(report.residuals.count("tan-limit") == 1);  // r == 0
    CHECK(report.residuals.at("closed-form-agreement") <= 1e-10);

    const TeleportReport ideal =
        teleport({SourceSpec(0.5, kPi / 4), AmplifierSpec(1.0, -kPi / 4),
                  GainConvention::gain_corrected});
    CHECK(ideal.residuals.count("ideal-limit-noise") == 1);
    CHECK(std::abs(ideal.residuals.at("ideal-limit-noise") - 2.0 * std::exp(-2.0)) <= 1e-12);
}

TEST_CASE("gain-corrected outputs are physical") {
    for (double q : {0.0, 1.0, 2.0}) {
        for (double r : {0.0, 1.0, 2.0}) {
            const TeleportReport report =
                teleport(config_at(q, r, GainConvention::gain_corrected));
            CHECK(is_physical(report.sigma_out, 1e-9));
        }
    }
}
