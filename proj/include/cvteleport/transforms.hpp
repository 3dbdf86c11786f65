#pragma once

#include "cvteleport/covariance_matrix.hpp"

#include <string>

namespace cvteleport {

/// A real R x C matrix acting on covariance matrices by congruence
/// T * sigma * T^T. R <= C; R < C models measurement/discard of modes.
class LinearTransform {
  public:
    LinearTransform(Eigen::MatrixXd entries, std::string label);

    int rows() const { return static_cast<int>(entries_.rows()); }
    int cols() const { return static_cast<int>(entries_.cols()); }
    const Eigen::MatrixXd& mat() const { return entries_; }
    const std::string& label() const { return label_; }

  private:
    Eigen::MatrixXd entries_;
    std::string label_;
};

/// Whether the sqrt(3) classical gain is absorbed into the feedforward map.
/// The two conventions differ by an exact factor 3 on output covariance
/// matrices; both are carried through every downstream operation.
enum class GainConvention { as_printed, gain_corrected };

const char* to_string(GainConvention convention);
GainConvention convention_from_string(const std::string& name);

/// Bob's pair of balanced beam splitters (8x8, orthogonal). Acts on four
/// mode slots ordered (x1, x3, x2, x4); BS1 mixes (x1,x4) into (x5,x16),
/// BS2 mixes (x3,x2) into (x6,x15); output slot order (x5,x6,x15,x16).
LinearTransform beam_splitter_b1();

/// Alice's pair of balanced beam splitters (12x12, orthogonal). Mixes mode
/// slots (1,5) and (3,6); slots 2 and 4 pass through untouched. The slot
/// assignment used by the protocol is (x15,x16,x6,x5,x7,x8); see
/// b2_input_order().
LinearTransform beam_splitter_b2();

/// 8x12 row selector modelling Alice's four homodyne outcomes: deletes the
/// measured quadrature rows (components 2, 6, 9, 11 of the 12-vector),
/// keeping (1,3,4,5,7,8,10,12). K * K^T = I.
LinearTransform measurement_selector_k();

/// Bob's 4x8 feedforward/displacement map; rows are orthonormal with
/// entries +-sqrt(2/3), +-sqrt(1/3). U * U^T = I.
LinearTransform gain_matrix_u();

/// The full measurement-feedforward map (4x12).
///   gain_corrected: sqrt(3)*U*K*B2 — every entry exactly in {-1, 0, 1}
///                   (computed numerically, asserted within 1e-12 of the
///                   nearest integer, stored exact);
///   as_printed:     (1/sqrt(3)) times the gain-corrected matrix.
LinearTransform composite(GainConvention convention);

/// Input mode order the protocol feeds to B2 / composite(), as indices into
/// the six-mode state in construction order (x5,x6,x15,x16,x7,x8). This is
/// the unique ordering compatible with the beam-splitter pairing (BS3 on
/// x15,x7; BS4 on x6,x8; x5 and x16 passing through) under which the
/// pipeline reproduces the closed-form output.
const std::vector<int>& b2_input_order();

/// Human-readable labels of b2_input_order().
const std::vector<std::string>& b2_input_labels();

/// Congruence T * sigma * T^T. The raw product's asymmetry residual is
/// asserted below 1e-12 (scaled by the output magnitude) and the result is
/// symmetrized as (M + M^T)/2 before wrapping.
CovarianceMatrix apply(const LinearTransform& t, const CovarianceMatrix& sigma);

}  // namespace cvteleport
