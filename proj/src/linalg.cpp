#include "simdiag/linalg.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace simdiag {

double cond2(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0.0;
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

double off_mass_sq(const Matrix& m) {
  // Summed entrywise: the subtraction ||M||^2 - ||diag||^2 cancels
  // catastrophically and cannot resolve masses below eps * ||M||^2.
  double total = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j) total += std::norm(m(i, j));
    }
  }
  return total;
}

bool is_numerically_diagonal(const Matrix& m, double tol) {
  const double bound = tol * m.norm();
  return off_mass_sq(m) <= bound * bound;
}

void require_invertible(const Matrix& m, const char* who) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double cond = cond2(m);
  if (!(cond < 1.0 / (eps * static_cast<double>(m.rows())))) {
    throw SingularMatrixError(std::string(who) + ": matrix is numerically singular (cond ~ " +
                              std::to_string(cond) + ")");
  }
}

}  // namespace simdiag
