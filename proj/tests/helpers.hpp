#pragma once

#include <Eigen/Dense>

#include <cmath>

namespace test_helpers {

inline double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs_diff_identity(const Eigen::MatrixXd& a) {
    return max_abs_diff(a, Eigen::MatrixXd::Identity(a.rows(), a.cols()));
}

}  // namespace test_helpers
