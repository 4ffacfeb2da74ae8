#pragma once

#include "simdiag/tuple_checks.hpp"

namespace simdiag {

// Eigenvalue clustering used to split a spectrum into the distinct groups of
// the block-diagonal form: representatives, multiplicities, and the column
// permutation producing contiguous blocks.
struct EigenGrouping {
  std::vector<Complex> values;      // d cluster representatives (cluster means)
  std::vector<int> multiplicities;  // block sizes, summing to n
  std::vector<int> permutation;     // permutation[i] = source index placed at slot i
  bool ill_separated = false;       // some cluster has diameter > 10 * link distance

  int group_count() const { return static_cast<int>(values.size()); }
};

// Single-linkage clustering with link distance tol * max(1, max |eig|).
// Clusters are ordered by first occurrence; an ill-separated spectrum is
// flagged on the result, never an error.
EigenGrouping group_eigenvalues(const Vector& eigs, double tol);

// Recursive exact simultaneous diagonalization: diagonalize the first
// non-diagonal member, split by eigenvalue groups, recurse on the induced
// block tuples, and compose S = S_0 (S_1 (+) ... (+) S_d).  Requires the
// input to be simultaneously diagonalizable; a violation is detected through
// off-block-diagonal mass after conjugation and raised as
// NotSimultaneouslyDiagonalizableError.
DiagonalizerResult dodo(const MatrixTuple& a, double tol);

}  // namespace simdiag
