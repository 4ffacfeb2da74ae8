#pragma once

// Test-only reference implementations.  Everything here recomputes results
// through an independent dense route (explicit Kronecker products, normal
// equations, exhaustive enumeration) so the library can be checked against
// it; none of it calls the code paths under test.

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <vector>

#include "simdiag/kron_structure.hpp"
#include "simdiag/linalg.hpp"
#include "simdiag/matrix_tuple.hpp"

namespace oracles {

using simdiag::Complex;
using simdiag::Matrix;
using simdiag::MatrixTuple;
using simdiag::Vector;

// Dense Kronecker product.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Dense Kronecker-sum slab I (x) M - M^T (x) I.
inline Matrix dense_xi_slab(const Matrix& m) {
  const Eigen::Index n = m.rows();
  const Matrix eye = Matrix::Identity(n, n);
  return kron(eye, m) - kron(m.transpose(), eye);
}

// Dense stacked map.
inline Matrix dense_xi(const MatrixTuple& x) {
  const int n = x.n();
  Matrix out(static_cast<Eigen::Index>(x.size()) * n * n, n * n);
  for (int k = 0; k < x.size(); ++k) {
    out.middleRows(static_cast<Eigen::Index>(k) * n * n, n * n) = dense_xi_slab(x[k]);
  }
  return out;
}

// The sparse atom E_hat(i,j) = I (x) E(i,j) - E(j,i) (x) I, built densely.
inline Matrix dense_atom(int n, int i, int j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = Complex(1.0, 0.0);
  return dense_xi_slab(e);
}

// Least-squares projection of each slab onto the span of all atoms with
// (i,j) != (n,n), via explicitly stacked basis vectors and normal equations.
inline simdiag::StructuredMatrix dense_range_projection(const simdiag::StructuredMatrix& h) {
  const int n = h.n();
  const int dim = n * n - 1;
  Matrix basis(static_cast<Eigen::Index>(n) * n * n * n, dim);
  int col = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == n - 1 && j == n - 1) continue;
      const Matrix atom = dense_atom(n, i, j);
      basis.col(col++) = simdiag::vec(atom);
    }
  }
  simdiag::StructuredMatrix out(n, h.count());
  const Matrix gram = basis.adjoint() * basis;
  Eigen::LDLT<Matrix> ldlt(gram);
  for (int k = 0; k < h.count(); ++k) {
    const Vector rhs = basis.adjoint() * simdiag::vec(Matrix(h.slab(k)));
    const Vector coeff = ldlt.solve(rhs);
    out.slab(k) = simdiag::unvec(basis * coeff, n * n, n * n);
  }
  return out;
}

// Dense projection onto SD(S): explicit Khatri-Rao matrix and normal
// equations, one solve per member.
inline MatrixTuple dense_sd_projection(const Matrix& s, const MatrixTuple& x) {
  const int n = x.n();
  const Matrix s_inv = s.inverse();
  Matrix w(n * n, n);
  for (int j = 0; j < n; ++j) {
    w.col(j) = simdiag::kron_vec(s_inv.row(j).transpose(), s.col(j));
  }
  const Matrix gram = w.adjoint() * w;
  Eigen::LDLT<Matrix> ldlt(gram);
  std::vector<Matrix> out;
  for (int k = 0; k < x.size(); ++k) {
    const Vector coeff = ldlt.solve(w.adjoint() * simdiag::vec(x[k]));
    out.push_back(simdiag::unvec(w * coeff, n, n));
  }
  return MatrixTuple(out);
}

// Exhaustive-minimum assignment for small n.
inline std::pair<double, std::vector<int>> brute_force_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += cost(i, perm[static_cast<size_t>(i)]);
    if (total < best_cost) {
      best_cost = total;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best_cost, best};
}

// Deterministic pseudo-random complex/real matrices for tests (splitmix64
// under the hood, independent of the library's generator module).
class TestRng {
public:
  explicit TestRng(std::uint64_t seed) : state_(seed) {}

  double uniform() {  // in [0, 1)
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

  double sym() { return 2.0 * uniform() - 1.0; }

  Matrix complex_matrix(int rows, int cols) {
    Matrix out(rows, cols);
    for (int j = 0; j < cols; ++j) {
      for (int i = 0; i < rows; ++i) out(i, j) = Complex(sym(), sym());
    }
    return out;
  }

  Matrix real_matrix(int rows, int cols) {
    Matrix out(rows, cols);
    for (int j = 0; j < cols; ++j) {
      for (int i = 0; i < rows; ++i) out(i, j) = Complex(sym(), 0.0);
    }
    return out;
  }

  Vector complex_vector(int size) {
    Vector out(size);
    for (int i = 0; i < size; ++i) out(i) = Complex(sym(), sym());
  return out;
  }

  MatrixTuple complex_tuple(int n, int count) {
    std::vector<Matrix> entries;
    for (int k = 0; k < count; ++k) entries.push_back(complex_matrix(n, n));
    return MatrixTuple(entries);
  }

  // Invertible matrix with a bounded condition number, built from two
  // Householder-orthogonalized factors and a prescribed spectrum.
  Matrix well_conditioned(int n, double cond) {
    const Matrix q1 = Eigen::HouseholderQR<Matrix>(complex_matrix(n, n))
                          .householderQ() * Matrix::Identity(n, n);
    const Matrix q2 = Eigen::HouseholderQR<Matrix>(complex_matrix(n, n))
                          .householderQ() * Matrix::Identity(n, n);
    Eigen::VectorXd sigma(n);
    for (int i = 0; i < n; ++i) {
      sigma(i) = 1.0 + (cond - 1.0) * static_cast<double>(n - 1 - i) / std::max(1, n - 1);
    }
    return q1 * sigma.cast<Complex>().asDiagonal() * q2;
  }

  // Simultaneously diagonalizable tuple with the given planted spectra.
  MatrixTuple sd_tuple(const Matrix& s, const std::vector<Vector>& lambdas) {
    const Matrix s_inv = s.inverse();
    std::vector<Matrix> entries;
    for (const Vector& lambda : lambdas) {
      entries.push_back(s * lambda.asDiagonal() * s_inv);
    }
    return MatrixTuple(entries);
  }

private:
  std::uint64_t state_;
};

}  // namespace oracles
