#include "simdiag/tuple_checks.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "simdiag/linalg.hpp"

namespace simdiag {

namespace {

constexpr double kDenominatorFloor = 1e-300;

}  // namespace

double off_objective(const MatrixTuple& x, const Matrix& s) {
  if (s.rows() != x.n() || s.cols() != x.n()) {
    throw std::invalid_argument("off_objective: S must be n-by-n");
  }
  require_invertible(s, "off_objective");
  Eigen::PartialPivLU<Matrix> lu(s);
  double total = 0.0;
  for (int k = 0; k < x.size(); ++k) {
    const Matrix conjugated = lu.solve(x[k] * s);
    total += off_mass_sq(conjugated);
  }
  return total;
}

double commutator_residual(const MatrixTuple& x) {
  double worst = 0.0;
  for (int k = 0; k < x.size(); ++k) {
    for (int l = k + 1; l < x.size(); ++l) {
      const double num = (x[k] * x[l] - x[l] * x[k]).norm();
      const double den = x[k].norm() * x[l].norm() + kDenominatorFloor;
      worst = std::max(worst, num / den);
    }
  }
  return worst;
}

DiagCheck check_diagonalizable(const Matrix& m, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("check_diagonalizable: tol must be positive");
  DiagCheck out;
  Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw EigenSolverError("check_diagonalizable: eigensolver did not converge");
  }
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  out.cond_v = cond2(out.eigenvectors);
  if (!(out.cond_v <= 1.0 / tol)) {
    out.diagonalizable = false;
    out.residual = std::numeric_limits<double>::infinity();
    return out;
  }
  const double m_norm = m.norm();
  if (m_norm == 0.0) {
    // The zero matrix is diagonalizable; the relative residual is vacuous.
    out.diagonalizable = true;
    out.residual = 0.0;
    return out;
  }
  Eigen::PartialPivLU<Matrix> lu(out.eigenvectors);
  const Matrix recon = out.eigenvectors * out.eigenvalues.asDiagonal() * lu.inverse();
  out.residual = (recon - m).norm() / m_norm;
  out.diagonalizable = out.residual <= tol;
  return out;
}

SdMembership check_sd_membership(const MatrixTuple& x, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("check_sd_membership: tol must be positive");
  SdMembership out;
  out.commutator_residual = commutator_residual(x);
  out.is_commuting = out.commutator_residual <= tol;
  out.is_all_diagonalizable = true;
  out.diag_residuals.reserve(static_cast<size_t>(x.size()));
  for (int k = 0; k < x.size(); ++k) {
    const DiagCheck check = check_diagonalizable(x[k], tol);
    out.diag_residuals.push_back(check.residual);
    if (!check.diagonalizable) out.is_all_diagonalizable = false;
  }
  return out;
}

bool check_essential_uniqueness(const std::vector<Vector>& lambdas, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("check_essential_uniqueness: tol must be positive");
  if (lambdas.empty()) throw std::invalid_argument("check_essential_uniqueness: empty eigenvalue list");
  const int n = static_cast<int>(lambdas.front().size());
  const int count = static_cast<int>(lambdas.size());
  double scale = 1.0;
  for (const Vector& v : lambdas) {
    if (v.size() != n) throw std::invalid_argument("check_essential_uniqueness: ragged eigenvalue vectors");
    scale = std::max(scale, v.cwiseAbs().maxCoeff());
  }
  // Rows of the n-by-K eigenvalue matrix: row p collects the p-th eigenvalue
  // of every member, in the shared diagonalizer ordering.
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      double dist_sq = 0.0;
      for (int k = 0; k < count; ++k) {
        dist_sq += std::norm(lambdas[static_cast<size_t>(k)](p) - lambdas[static_cast<size_t>(k)](q));
      }
      if (!(std::sqrt(dist_sq) > tol * scale)) return false;
    }
  }
  return true;
}

MatrixTuple project_onto_sd_of(const Matrix& s, const MatrixTuple& x) {
  const int n = x.n();
  if (s.rows() != n || s.cols() != n) {
    throw std::invalid_argument("project_onto_sd_of: S must be n-by-n");
  }
  require_invertible(s, "project_onto_sd_of");
  Eigen::PartialPivLU<Matrix> lu(s);
  const Matrix s_inv = lu.inverse();

  // Columns of S^-T (*) S: (row j of S^-1)^T (x) (column j of S).  The span
  // of these columns is exactly the set of matrices S diag(d) S^-1.
  Matrix w(n * n, n);
  for (int j = 0; j < n; ++j) {
    w.col(j) = kron_vec(s_inv.row(j).transpose(), s.col(j));
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(w);
  if (qr.rank() < n) {
    throw RankDeficientError("project_onto_sd_of: Khatri-Rao matrix is numerically rank deficient");
  }

  std::vector<Matrix> projected;
  projected.reserve(static_cast<size_t>(x.size()));
  for (int k = 0; k < x.size(); ++k) {
    const Vector d = qr.solve(vec(x[k]));
    projected.push_back(unvec(w * d, n, n));
  }
  return MatrixTuple(std::move(projected));
}

}  // namespace simdiag
