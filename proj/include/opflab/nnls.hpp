#pragma once

#include <Eigen/Dense>

namespace opflab::nnls {

struct Result {
  Eigen::VectorXd x;      // coefficients, x >= 0
  double residual = 0.0;  // ||A x - b||_2
  bool converged = false;
};

/// Lawson-Hanson active-set solver for min ||A x - b|| subject to x >= 0.
Result solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations = 0,
             double tolerance = 1e-12);

}  // namespace opflab::nnls
