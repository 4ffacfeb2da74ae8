#pragma once

#include <vector>

#include "simdiag/matrix_tuple.hpp"

namespace simdiag {

// Minimum-cost perfect assignment on a square cost matrix (Hungarian method
// with potentials, O(n^3)).  Returns the column assigned to each row.
std::vector<int> solve_assignment(const Eigen::MatrixXd& cost);

struct ScoreResult {
  double err_s = 0.0;        // ||S*_I - S~_{I,II}||_F^2 / ||S*_I||_F^2
  double err_lambda = 0.0;   // sum_k ||L*_k - L~_{k,II}||_F^2 / ||L*_k||_F^2
  double err_a = 0.0;        // sum_k ||A_k - A~_k||_F^2 / ||A_k||_F^2
  std::vector<int> permutation;  // candidate column matched to each target column
};

// Permutation/scaling-invariant error metrics: both diagonalizer estimates
// are column-normalized, each candidate column is aligned by the unit scalar
// closest to its target (absorbing the sign/phase freedom), the best column
// permutation is found by optimal assignment, and the same permutation is
// applied to the diagonal factors.
ScoreResult match_and_score(const Matrix& s_star, const Matrix& s_hat,
                            const std::vector<Vector>& lambdas_star,
                            const std::vector<Vector>& lambdas_hat, const MatrixTuple& a,
                            const MatrixTuple& a_tilde);

// The diagonalizer part of match_and_score alone, for per-iteration
// threshold tracking.
double err_s_only(const Matrix& s_star, const Matrix& s_hat);

}  // namespace simdiag
