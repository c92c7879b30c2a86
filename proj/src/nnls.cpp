#include "opflab/nnls.hpp"

#include <limits>
#include <vector>

namespace opflab::nnls {

namespace {

Eigen::VectorXd solve_passive(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                              const std::vector<int>& passive) {
  Eigen::MatrixXd ap(a.rows(), passive.size());
  for (size_t i = 0; i < passive.size(); ++i) ap.col(i) = a.col(passive[i]);
  return ap.colPivHouseholderQr().solve(b);
}

}  // namespace

Result solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations,
             double tolerance) {
  const int n = static_cast<int>(a.cols());
  if (max_iterations <= 0) max_iterations = 3 * n + 30;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> in_passive(n, false);
  std::vector<int> passive;

  Eigen::VectorXd w = a.transpose() * (b - a * x);
  int outer = 0;
  while (outer++ < max_iterations) {
    int best = -1;
    double best_w = tolerance;
    for (int i = 0; i < n; ++i) {
      if (!in_passive[i] && w(i) > best_w) {
        best_w = w(i);
        best = i;
      }
    }
    if (best < 0) break;
    in_passive[best] = true;
    passive.push_back(best);

    Eigen::VectorXd z = solve_passive(a, b, passive);
    int inner = 0;
    while (z.minCoeff() <= 0 && inner++ < max_iterations) {
      double alpha = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < passive.size(); ++i) {
        if (z(i) <= 0) {
          double xi = x(passive[i]);
          double step = xi / (xi - z(i));
          alpha = std::min(alpha, step);
        }
      }
      for (size_t i = 0; i < passive.size(); ++i) {
        int col = passive[i];
        x(col) += alpha * (z(i) - x(col));
      }
      // drop variables that hit the boundary
      std::vector<int> still;
      for (int col : passive) {
        if (x(col) > tolerance) {
          still.push_back(col);
        } else {
          x(col) = 0.0;
          in_passive[col] = false;
        }
      }
      passive = std::move(still);
      if (passive.empty()) break;
      z = solve_passive(a, b, passive);
    }
    for (size_t i = 0; i < passive.size(); ++i) x(passive[i]) = std::max(0.0, z(i));
    w = a.transpose() * (b - a * x);
  }

  Result r;
  r.x = x;
  r.residual = (a * x - b).norm();
  r.converged = outer <= max_iterations;
  return r;
}

}  // namespace opflab::nnls
