#include "cvteleport/transforms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cvteleport {

namespace {

// sqrt(0.5) rounds a hair above the true 1/sqrt(2), so balanced mixing of
// vacuum never dips below vacuum variance; 1.0/sqrt(2.0) rounds below it.
const double kInvSqrt2 = std::sqrt(0.5);

// Writes a scalar multiple of I2 at block position (i, j).
void put_block(Eigen::MatrixXd& m, int i, int j, double w) {
    m(2 * i, 2 * j) = w;
    m(2 * i + 1, 2 * j + 1) = w;
}

}  // namespace

LinearTransform::LinearTransform(Eigen::MatrixXd entries, std::string label)
    : entries_(std::move(entries)), label_(std::move(label)) {
    if (entries_.rows() < 2 || entries_.rows() % 2 != 0 || entries_.cols() % 2 != 0) {
        throw std::invalid_argument("transform dimensions must be positive even numbers");
    }
    if (entries_.rows() > entries_.cols()) {
        throw std::invalid_argument("transform must have rows <= cols");
    }
    if (!entries_.allFinite()) {
        throw std::invalid_argument("transform entries must be finite");
    }
}

const char* to_string(GainConvention convention) {
    return convention == GainConvention::as_printed ? "as-printed" : "gain-corrected";
}

GainConvention convention_from_string(const std::string& name) {
    if (name == "as-printed") {
        return GainConvention::as_printed;
    }
    if (name == "gain-corrected") {
        return GainConvention::gain_corrected;
    }
    throw std::invalid_argument("unknown gain convention: " + name);
}

LinearTransform beam_splitter_b1() {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(8, 8);
    const double q = kInvSqrt2;
    put_block(m, 0, 0, q);
    put_block(m, 0, 3, q);
    put_block(m, 1, 1, q);
    put_block(m, 1, 2, q);
    put_block(m, 2, 1, q);
    put_block(m, 2, 2, -q);
    put_block(m, 3, 0, q);
    put_block(m, 3, 3, -q);
    return LinearTransform(std::move(m), "B1[in:(x1,x3,x2,x4) out:(x5,x6,x15,x16)]");
}

LinearTransform beam_splitter_b2() {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(12, 12);
    const double q = kInvSqrt2;
    put_block(m, 0, 0, q);
    put_block(m, 0, 4, q);
    put_block(m, 1, 1, 1.0);
    put_block(m, 2, 2, q);
    put_block(m, 2, 5, q);
    put_block(m, 3, 3, 1.0);
    put_block(m, 4, 0, q);
    put_block(m, 4, 4, -q);
    put_block(m, 5, 2, q);
    put_block(m, 5, 5, -q);
    return LinearTransform(std::move(m), "B2[in:(x15,x16,x6,x5,x7,x8)]");
}

LinearTransform measurement_selector_k() {
    // 1-based components of the 12-vector that survive the measurement.
    static const int kept[8] = {1, 3, 4, 5, 7, 8, 10, 12};
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(8, 12);
    for (int i = 0; i < 8; ++i) {
        m(i, kept[i] - 1) = 1.0;
    }
    return LinearTransform(std::move(m), "K[keep:(1,3,4,5,7,8,10,12)]");
}

LinearTransform gain_matrix_u() {
    const double a = std::sqrt(2.0 / 3.0);
    const double b = std::sqrt(1.0 / 3.0);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 8);
    m(0, 0) = -a;
    m(0, 1) = -b;
    m(1, 2) = -b;
    m(1, 6) = a;
    m(2, 3) = a;
    m(2, 4) = b;
    m(3, 5) = b;
    m(3, 7) = -a;
    return LinearTransform(std::move(m), "U[gain sqrt(2)]");
}

LinearTransform composite(GainConvention convention) {
    const Eigen::MatrixXd product = std::sqrt(3.0) * (gain_matrix_u().mat() *
                                                      measurement_selector_k().mat() *
                                                      beam_splitter_b2().mat());
    Eigen::MatrixXd exact(4, 12);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 12; ++j) {
            const double snapped = std::round(product(i, j));
            if (std::abs(snapped) > 1.0 || std::abs(product(i, j) - snapped) > 1e-12) {
                throw std::logic_error("sqrt(3)*U*K*B2 is not a {-1,0,1} matrix");
            }
            exact(i, j) = snapped;
        }
    }
    if (convention == GainConvention::gain_corrected) {
        return LinearTransform(std::move(exact),
                               "sqrt(3)UKB2[in:(x15,x16,x6,x5,x7,x8)]");
    }
    return LinearTransform(exact / std::sqrt(3.0), "UKB2[in:(x15,x16,x6,x5,x7,x8)]");
}

const std::vector<int>& b2_input_order() {
    // Positions of (x15,x16,x6,x5,x7,x8) within the construction order (x5,x6,x15,x16,x7,x8).
    static const std::vector<int> order{2, 3, 1, 0, 4, 5};
    return order;
}

const std::vector<std::string>& b2_input_labels() {
    static const std::vector<std::string> labels{"x15", "x16", "x6", "x5", "x7", "x8"};
    return labels;
}

CovarianceMatrix apply(const LinearTransform& t, const CovarianceMatrix& sigma) {
    if (t.cols() != 2 * sigma.n_modes()) {
        throw std::invalid_argument("transform column count must equal 2 * n_modes");
    }
    const Eigen::MatrixXd raw = t.mat() * sigma.mat() * t.mat().transpose();
    const double asym = (raw - raw.transpose()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, raw.cwiseAbs().maxCoeff());
    if (asym > 1e-12 * scale) {
        throw std::runtime_error("congruence produced an asymmetric matrix (residual " +
                                 std::to_string(asym) + ")");
    }
    return CovarianceMatrix((raw + raw.transpose()) / 2.0);
}

}  // namespace cvteleport
