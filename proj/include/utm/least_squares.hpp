#pragma once

#include <Eigen/Dense>

namespace utm {

struct LeastSquaresResult {
  Eigen::VectorXd x;
  double residual = 0.0;       // ‖A x − b‖₂ of the row-scaled system
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  double sigma_ratio() const { return sigma_max > 0.0 ? sigma_min / sigma_max : 0.0; }
};

// Divides each row of [A | b] by the ∞-norm of the row of A, then solves by
// column-pivoted Householder QR. Throws RankDeficient if the smallest
// singular value of the scaled matrix is below 1e-12 times the largest.
LeastSquaresResult solve_least_squares(Eigen::MatrixXd A, Eigen::VectorXd b);

}  // namespace utm
