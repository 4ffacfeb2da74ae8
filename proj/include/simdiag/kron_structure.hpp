#pragma once

#include <optional>

#include "simdiag/matrix_tuple.hpp"

namespace simdiag {

// Stacked Kronecker-sum image of a tuple: K vertically stacked n^2-by-n^2
// slabs, slab k representing I (x) X_k - X_k^T (x) I.  The type also carries
// arbitrary dense iterates of the same shape produced by the alternating
// projections, which generally leave the range of the map.
class StructuredMatrix {
public:
  StructuredMatrix(int n, int count);  // zero-initialized
  StructuredMatrix(int n, int count, Matrix data);

  int n() const { return n_; }
  int count() const { return count_; }
  int rows() const { return count_ * n_ * n_; }
  int cols() const { return n_ * n_; }

  const Matrix& data() const { return data_; }
  Matrix& data() { return data_; }

  Eigen::Block<Matrix> slab(int k);
  Eigen::Block<const Matrix> slab(int k) const;

  double norm() const { return data_.norm(); }

  std::optional<bool> is_in_range_of_xi;  // cache set by the builders

private:
  int n_ = 0;
  int count_ = 0;
  Matrix data_;
};

struct RankProfile {
  int rank = 0;
  Eigen::VectorXd singular_values;  // nonincreasing
  // sigma_{n^2-n} / sigma_{n^2-n+1} (1-based), reported for diagnostics of the
  // rank decision at the target rank; +inf when the tail value is zero.
  double gap_ratio = 0.0;
};

// Assembles the stacked Kronecker sums block-wise: block (i,j) of slab k is
// X_k - x^(k)_{ii} I on the diagonal and -x^(k)_{ji} I off it.  No matrix
// products are formed, and the result equals the dense Kronecker construction
// exactly (only copies, negations and subtractions occur).
StructuredMatrix build_xi(const MatrixTuple& x);

// Singular values of the stack and the numerical rank at threshold
// gap_tol * sigma_max.
RankProfile xi_rank_profile(const StructuredMatrix& h, double gap_tol);

// Recovers a tuple representative of the fiber over H from the top-left
// n-by-n block of each slab.  Throws NotInRangeError when the round trip
// ||Xi(rep) - H||_F exceeds tol * ||H||_F, which signals H outside the range
// of the map.
MatrixTuple fiber_representative(const StructuredMatrix& h, double tol = 1e-8);

// Orthogonal projection of X onto the affine fiber Xi^-1(H): the fiber is a
// representative plus (span{I})^K, so the projection shifts each member by
// the trace-matched multiple of the identity.
MatrixTuple project_onto_fiber(const MatrixTuple& x, const StructuredMatrix& h, double tol = 1e-8);

// Per-slab orthogonal projection onto the range of the Kronecker-sum map,
// computed against the sparse atom family E_hat(i,j) = I (x) E(i,j) -
// E(j,i) (x) I, (i,j) != (n,n).  Off-diagonal atoms are mutually orthogonal
// with squared norm 2n; the diagonal subfamily couples through a Gram matrix
// with entries 2n-2 (diagonal) and -2 (off), solved in closed form.
StructuredMatrix project_onto_xi_range(const StructuredMatrix& h);

}  // namespace simdiag
