#include "simdiag/matrix_tuple.hpp"

#include <cmath>
#include <utility>

namespace simdiag {

MatrixTuple::MatrixTuple(std::vector<Matrix> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw std::invalid_argument("MatrixTuple: need at least one matrix");
  }
  n_ = static_cast<int>(entries_.front().rows());
  if (n_ < 1) {
    throw std::invalid_argument("MatrixTuple: matrix dimension must be at least 1");
  }
  for (const Matrix& m : entries_) {
    if (m.rows() != n_ || m.cols() != n_) {
      throw std::invalid_argument("MatrixTuple: all matrices must be square with one common dimension");
    }
    if (!m.allFinite()) {
      throw std::invalid_argument("MatrixTuple: entries must be finite");
    }
  }
}

MatrixTuple MatrixTuple::zero(int n, int count) {
  std::vector<Matrix> entries(static_cast<size_t>(count), Matrix::Zero(n, n));
  return MatrixTuple(std::move(entries));
}

double MatrixTuple::squared_norm() const {
  double total = 0.0;
  for (const Matrix& m : entries_) total += m.squaredNorm();
  return total;
}

double MatrixTuple::norm() const { return std::sqrt(squared_norm()); }

bool MatrixTuple::is_real(double tol) const {
  for (const Matrix& m : entries_) {
    if (m.imag().cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

MatrixTuple& MatrixTuple::operator+=(const MatrixTuple& other) {
  if (other.n() != n_ || other.size() != size()) {
    throw std::invalid_argument("MatrixTuple: dimension mismatch");
  }
  for (int k = 0; k < size(); ++k) entries_[static_cast<size_t>(k)] += other[k];
  return *this;
}

MatrixTuple& MatrixTuple::operator-=(const MatrixTuple& other) {
  if (other.n() != n_ || other.size() != size()) {
    throw std::invalid_argument("MatrixTuple: dimension mismatch");
  }
  for (int k = 0; k < size(); ++k) entries_[static_cast<size_t>(k)] -= other[k];
  return *this;
}

MatrixTuple& MatrixTuple::operator*=(Complex scalar) {
  for (Matrix& m : entries_) m *= scalar;
  return *this;
}

}  // namespace simdiag
