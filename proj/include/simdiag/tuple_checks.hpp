#pragma once

#include <vector>

#include "simdiag/matrix_tuple.hpp"

namespace simdiag {

// Verdict of the algebraic membership test for exact simultaneous
// diagonalizability: a tuple belongs iff every pair commutes and every
// member is diagonalizable.
struct SdMembership {
  bool is_commuting = false;
  bool is_all_diagonalizable = false;
  // max over pairs (k,l) of ||X_k X_l - X_l X_k||_F / (||X_k|| ||X_l|| + eps).
  double commutator_residual = 0.0;
  // Per-matrix relative eigen-reconstruction residual; +inf when the
  // eigenvector matrix itself failed the conditioning gate.
  std::vector<double> diag_residuals;

  bool is_member() const { return is_commuting && is_all_diagonalizable; }
};

// A candidate common diagonalizer together with the diagonal factors it
// induces and the residual off-diagonal mass it leaves behind.
struct DiagonalizerResult {
  Matrix s;
  std::vector<Vector> lambdas;  // diagonal entries of S^{-1} X_k S, one per k
  double off_value = 0.0;
  double cond_s = 0.0;
  int depth = 0;  // recursion depth taken by the exact diagonalizer (0 = trivial)
};

struct DiagCheck {
  bool diagonalizable = false;
  Vector eigenvalues;
  Matrix eigenvectors;
  double cond_v = 0.0;
  double residual = 0.0;  // ||V L V^-1 - M||_F / ||M||_F (0 for the zero matrix)
};

// sum_k sum_{i != j} |(S^-1 X_k S)_{ij}|^2.  Throws SingularMatrixError when
// S is numerically singular.
double off_objective(const MatrixTuple& x, const Matrix& s);

// Max over pairs of the relative commutator norm; 0 iff the tuple commutes
// (in exact arithmetic).  The denominator carries a tiny additive floor so
// zero matrices report 0 rather than 0/0.
double commutator_residual(const MatrixTuple& x);

// Eigendecomposition-based diagonalizability test: the eigenvector matrix
// must satisfy cond(V) <= 1/tol and reconstruct M to relative residual tol.
// Eigensolver non-convergence surfaces as EigenSolverError, never as
// "not diagonalizable".
DiagCheck check_diagonalizable(const Matrix& m, double tol);

SdMembership check_sd_membership(const MatrixTuple& x, double tol);

// True iff the n rows of the n-by-K eigenvalue matrix are pairwise distinct,
// i.e. the common diagonalizer is unique up to column permutation/scaling.
bool check_essential_uniqueness(const std::vector<Vector>& lambdas, double tol);

// Orthogonal projection of the tuple onto the linear subspace of tuples
// exactly diagonalized by S, computed per member as the least-squares
// projection of vec(X_k) onto the column span of the n^2-by-n Khatri-Rao
// matrix S^-T (*) S.
MatrixTuple project_onto_sd_of(const Matrix& s, const MatrixTuple& x);

}  // namespace simdiag
