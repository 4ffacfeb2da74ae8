#include "simdiag/metrics.hpp"

#include <cmath>
#include <limits>

namespace simdiag {

namespace {

struct Alignment {
  Matrix target;      // column-normalized S*
  Matrix candidate;   // column-normalized S~
  Matrix overlap;     // overlap(i,j) = <t_i, c_j>
  std::vector<int> permutation;
  double err_s = 0.0;
};

// Normalizes columns, aligns each candidate column by the best unit scalar,
// and finds the column permutation minimizing the squared distance.
Alignment align_diagonalizers(const Matrix& s_star, const Matrix& s_hat) {
  const int n = static_cast<int>(s_star.rows());
  if (s_star.cols() != n || s_hat.rows() != n || s_hat.cols() != n) {
    throw std::invalid_argument("match_and_score: diagonalizers must share one square shape");
  }

  Alignment out;
  out.target.resize(n, n);
  out.candidate.resize(n, n);
  for (int j = 0; j < n; ++j) {
    const double target_norm = s_star.col(j).norm();
    const double candidate_norm = s_hat.col(j).norm();
    if (target_norm == 0.0 || candidate_norm == 0.0) {
      throw std::invalid_argument("match_and_score: diagonalizer has a zero column");
    }
    out.target.col(j) = s_star.col(j) / target_norm;
    out.candidate.col(j) = s_hat.col(j) / candidate_norm;
  }

  // After normalization, min over unit scalars z of ||t_i - z c_j||^2 equals
  // 2 - 2 |<t_i, c_j>|.
  Eigen::MatrixXd cost(n, n);
  out.overlap.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out.overlap(i, j) = out.target.col(i).dot(out.candidate.col(j));
      cost(i, j) = 2.0 - 2.0 * std::abs(out.overlap(i, j));
    }
  }
  out.permutation = solve_assignment(cost);

  double num = 0.0;
  for (int i = 0; i < n; ++i) {
    const int j = out.permutation[static_cast<size_t>(i)];
    Complex z(1.0, 0.0);
    if (std::abs(out.overlap(i, j)) > 0.0) z = std::conj(out.overlap(i, j)) / std::abs(out.overlap(i, j));
    num += (out.target.col(i) - z * out.candidate.col(j)).squaredNorm();
  }
  out.err_s = num / out.target.squaredNorm();
  return out;
}

}  // namespace

std::vector<int> solve_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n || n < 1) throw std::invalid_argument("solve_assignment: cost must be square");
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Hungarian method with row/column potentials, 1-based with a virtual
  // column 0.
  std::vector<double> u(static_cast<size_t>(n) + 1, 0.0);
  std::vector<double> v(static_cast<size_t>(n) + 1, 0.0);
  std::vector<int> match(static_cast<size_t>(n) + 1, 0);
  std::vector<int> way(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> min_slack(static_cast<size_t>(n) + 1, kInf);
    std::vector<bool> used(static_cast<size_t>(n) + 1, false);
    do {
      used[static_cast<size_t>(j0)] = true;
      const int i0 = match[static_cast<size_t>(j0)];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
        if (cur < min_slack[static_cast<size_t>(j)]) {
          min_slack[static_cast<size_t>(j)] = cur;
          way[static_cast<size_t>(j)] = j0;
        }
        if (min_slack[static_cast<size_t>(j)] < delta) {
          delta = min_slack[static_cast<size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) {
          u[static_cast<size_t>(match[static_cast<size_t>(j)])] += delta;
          v[static_cast<size_t>(j)] -= delta;
        } else {
          min_slack[static_cast<size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<size_t>(j0)];
      match[static_cast<size_t>(j0)] = match[static_cast<size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(static_cast<size_t>(n), -1);
  for (int j = 1; j <= n; ++j) {
    if (match[static_cast<size_t>(j)] > 0) {
      row_to_col[static_cast<size_t>(match[static_cast<size_t>(j)]) - 1] = j - 1;
    }
  }
  return row_to_col;
}

ScoreResult match_and_score(const Matrix& s_star, const Matrix& s_hat,
                            const std::vector<Vector>& lambdas_star,
                            const std::vector<Vector>& lambdas_hat, const MatrixTuple& a,
                            const MatrixTuple& a_tilde) {
  Alignment alignment = align_diagonalizers(s_star, s_hat);
  const int n = static_cast<int>(s_star.rows());

  ScoreResult out;
  out.err_s = alignment.err_s;
  out.permutation = std::move(alignment.permutation);

  if (lambdas_star.size() != lambdas_hat.size()) {
    throw std::invalid_argument("match_and_score: diagonal factor counts disagree");
  }
  out.err_lambda = 0.0;
  for (size_t k = 0; k < lambdas_star.size(); ++k) {
    double num = 0.0;
    for (int i = 0; i < n; ++i) {
      num += std::norm(lambdas_star[k](i) - lambdas_hat[k](out.permutation[static_cast<size_t>(i)]));
    }
    const double den = lambdas_star[k].squaredNorm();
    if (den == 0.0) {
      out.err_lambda += num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      out.err_lambda += num / den;
    }
  }

  if (a.n() != a_tilde.n() || a.size() != a_tilde.size()) {
    throw std::invalid_argument("match_and_score: tuple dimensions disagree");
  }
  out.err_a = 0.0;
  for (int k = 0; k < a.size(); ++k) {
    const double den = a[k].squaredNorm();
    const double num = (a[k] - a_tilde[k]).squaredNorm();
    if (den == 0.0) {
      out.err_a += num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      out.err_a += num / den;
    }
  }
  return out;
}

double err_s_only(const Matrix& s_star, const Matrix& s_hat) {
  return align_diagonalizers(s_star, s_hat).err_s;
}

}  // namespace simdiag
