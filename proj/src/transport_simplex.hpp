#pragma once

#include <Eigen/Dense>

namespace w2het::detail {

struct TransportSolution {
  Eigen::MatrixXd plan;  // k1 x k2
  double cost = 0.0;
  Eigen::VectorXd u;  // source potentials
  Eigen::VectorXd v;  // target potentials
  int iterations = 0;
};

// Exact solver for the balanced transportation problem
//   min <cost, x>  s.t.  x 1 = supply, x^T 1 = demand, x >= 0
// via the transportation (network) simplex: northwest-corner start, tree-based
// dual updates, Dantzig pricing with a Bland fallback after degenerate runs.
// Supplies and demands must be strictly positive with equal sums.
// The returned solution carries dual potentials verified for feasibility and
// complementary slackness; verification failure throws std::runtime_error.
TransportSolution solve_transport(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand,
                                  const Eigen::MatrixXd& cost);

}  // namespace w2het::detail
