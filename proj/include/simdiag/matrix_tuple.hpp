#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "simdiag/errors.hpp"

namespace simdiag {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Ordered K-tuple of n-by-n complex matrices.  The central value type: the
// input tuple, its simultaneously diagonalizable approximant, and the ground
// truth of synthetic experiments are all instances.
class MatrixTuple {
public:
  MatrixTuple() = default;

  // Takes ownership of `entries`; throws std::invalid_argument unless all
  // matrices are square, of one common dimension n >= 1, and free of
  // NaN/Inf entries, with K >= 1.
  explicit MatrixTuple(std::vector<Matrix> entries);

  static MatrixTuple zero(int n, int count);

  int n() const { return n_; }
  int size() const { return static_cast<int>(entries_.size()); }

  const Matrix& operator[](int k) const { return entries_[static_cast<size_t>(k)]; }
  Matrix& operator[](int k) { return entries_[static_cast<size_t>(k)]; }

  const std::vector<Matrix>& entries() const { return entries_; }

  // sum_k ||X_k||_F^2 and its square root (the tuple Frobenius norm).
  double squared_norm() const;
  double norm() const;

  // True when every imaginary part is at most `tol` in magnitude.
  bool is_real(double tol = 0.0) const;

  MatrixTuple& operator+=(const MatrixTuple& other);
  MatrixTuple& operator-=(const MatrixTuple& other);
  MatrixTuple& operator*=(Complex scalar);

  friend MatrixTuple operator+(MatrixTuple lhs, const MatrixTuple& rhs) { return lhs += rhs; }
  friend MatrixTuple operator-(MatrixTuple lhs, const MatrixTuple& rhs) { return lhs -= rhs; }
  friend MatrixTuple operator*(Complex scalar, MatrixTuple rhs) { return rhs *= scalar; }

private:
  int n_ = 0;
  std::vector<Matrix> entries_;
};

}  // namespace simdiag
