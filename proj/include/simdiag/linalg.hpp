#pragma once

#include <Eigen/Dense>

#include "simdiag/matrix_tuple.hpp"

namespace simdiag {

// Small dense helpers shared across the library.  Everything here operates on
// matrices of the sizes this library targets (n <= 16), so plain dense
// decompositions are always the right tool.

// Column-major vectorization and its inverse.
inline Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvec(const Vector& v, int rows, int cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

// Kronecker product of two column vectors: (u (x) v)[i*n + j] = u[i] v[j].
inline Vector kron_vec(const Vector& u, const Vector& v) {
  Vector out(u.size() * v.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    out.segment(i * v.size(), v.size()) = u(i) * v;
  }
  return out;
}

// 2-norm condition number; +inf when the smallest singular value vanishes.
double cond2(const Matrix& m);

// Sum of squared magnitudes of the off-diagonal entries.
double off_mass_sq(const Matrix& m);

// Off-diagonal mass at most `tol` times the Frobenius norm (zero matrices
// count as diagonal).
bool is_numerically_diagonal(const Matrix& m, double tol);

// Throws SingularMatrixError when cond2(m) exceeds the working-precision
// invertibility bound (1 / (machine epsilon * n), the usual scaled cutoff).
void require_invertible(const Matrix& m, const char* who);

}  // namespace simdiag
