#include "simdiag/dodo.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "simdiag/linalg.hpp"

namespace simdiag {

namespace {

// Predicate behind the "all matrices diagonal" base case.
constexpr double kDiagonalTol = 1e-12;

struct RecursionOutcome {
  Matrix s;
  int depth = 0;
};

// Orthonormalizes the columns of each eigenvalue cluster in place.  Any basis
// change within a cluster's span leaves the block-diagonal form of the pivot
// matrix intact and keeps S_0 well conditioned when eigenvectors of a
// repeated eigenvalue come out nearly parallel.
void orthonormalize_clusters(Matrix& s0, const EigenGrouping& grouping) {
  int offset = 0;
  for (int p = 0; p < grouping.group_count(); ++p) {
    const int width = grouping.multiplicities[static_cast<size_t>(p)];
    auto cols = s0.middleCols(offset, width);
    Eigen::HouseholderQR<Matrix> qr(cols);
    cols = qr.householderQ() * Matrix::Identity(cols.rows(), width);
    offset += width;
  }
}

RecursionOutcome dodo_recurse(const MatrixTuple& a, double tol, int level, int level_cap) {
  const int n = a.n();
  if (level >= level_cap) {
    // Each level strictly shrinks the largest block, so valid inputs recurse
    // at most top-level-n - 1 times.
    throw NotSimultaneouslyDiagonalizableError("dodo: recursion exceeded the depth bound");
  }

  int pivot = -1;
  for (int k = 0; k < a.size(); ++k) {
    if (!is_numerically_diagonal(a[k], kDiagonalTol)) {
      pivot = k;
      break;
    }
  }
  if (pivot < 0) {
    return {Matrix::Identity(n, n), 0};
  }

  Eigen::ComplexEigenSolver<Matrix> solver(a[pivot], /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw EigenSolverError("dodo: eigensolver did not converge");
  }
  const EigenGrouping grouping = group_eigenvalues(solver.eigenvalues(), tol);
  const int d = grouping.group_count();
  if (d == 1) {
    // A diagonalizable matrix with a single eigenvalue is a multiple of the
    // identity, which the diagonal test would have accepted.
    throw NotSimultaneouslyDiagonalizableError(
        "dodo: non-diagonal member with a single eigenvalue cluster");
  }

  Matrix s0(n, n);
  for (int i = 0; i < n; ++i) {
    s0.col(i) = solver.eigenvectors().col(grouping.permutation[static_cast<size_t>(i)]);
  }
  orthonormalize_clusters(s0, grouping);

  Eigen::PartialPivLU<Matrix> lu(s0);
  std::vector<Matrix> conjugated;
  conjugated.reserve(static_cast<size_t>(a.size()));
  for (int k = 0; k < a.size(); ++k) {
    conjugated.push_back(lu.solve(a[k] * s0));
  }

  // Block structure check: commutativity forces every conjugated member to be
  // block diagonal with respect to the grouping.
  std::vector<int> offsets(static_cast<size_t>(d) + 1, 0);
  for (int p = 0; p < d; ++p) {
    offsets[static_cast<size_t>(p) + 1] =
        offsets[static_cast<size_t>(p)] + grouping.multiplicities[static_cast<size_t>(p)];
  }
  for (int k = 0; k < a.size(); ++k) {
    Matrix outside = conjugated[static_cast<size_t>(k)];
    for (int p = 0; p < d; ++p) {
      outside
          .block(offsets[static_cast<size_t>(p)], offsets[static_cast<size_t>(p)],
                 grouping.multiplicities[static_cast<size_t>(p)],
                 grouping.multiplicities[static_cast<size_t>(p)])
          .setZero();
    }
    const double scale = std::max(1.0, conjugated[static_cast<size_t>(k)].norm());
    const double mass = outside.norm();
    if (mass > tol * scale) {
      std::ostringstream msg;
      msg << "dodo: conjugated member " << k << " at level " << level
          << " is not block diagonal (relative off-block mass " << mass / scale << ")";
      throw NotSimultaneouslyDiagonalizableError(msg.str());
    }
  }

  Matrix composed = Matrix::Zero(n, n);
  int max_child_depth = 0;
  for (int p = 0; p < d; ++p) {
    const int start = offsets[static_cast<size_t>(p)];
    const int width = grouping.multiplicities[static_cast<size_t>(p)];
    std::vector<Matrix> block_entries;
    block_entries.reserve(static_cast<size_t>(a.size()));
    for (int k = 0; k < a.size(); ++k) {
      if (k == pivot) {
        // The pivot's block is the cluster representative times the identity;
        // substituting it avoids propagating eigensolver noise.
        block_entries.push_back(grouping.values[static_cast<size_t>(p)] *
                                Matrix::Identity(width, width));
      } else {
        block_entries.push_back(conjugated[static_cast<size_t>(k)].block(start, start, width, width));
      }
    }
    const RecursionOutcome child = dodo_recurse(MatrixTuple(std::move(block_entries)), tol, level + 1, level_cap);
    composed.block(start, start, width, width) = child.s;
    max_child_depth = std::max(max_child_depth, child.depth);
  }

  return {s0 * composed, 1 + max_child_depth};
}

}  // namespace

EigenGrouping group_eigenvalues(const Vector& eigs, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("group_eigenvalues: tol must be positive");
  const int n = static_cast<int>(eigs.size());
  if (n < 1) throw std::invalid_argument("group_eigenvalues: empty spectrum");
  const double scale = std::max(1.0, eigs.cwiseAbs().maxCoeff());
  const double link = tol * scale;

  // Single-linkage union-find over the complete pair graph.
  std::vector<int> parent(static_cast<size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&parent](int i) {
    while (parent[static_cast<size_t>(i)] != i) {
      parent[static_cast<size_t>(i)] = parent[static_cast<size_t>(parent[static_cast<size_t>(i)])];
      i = parent[static_cast<size_t>(i)];
    }
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(eigs(i) - eigs(j)) <= link) {
        const int ri = find(i);
        const int rj = find(j);
        if (ri != rj) parent[static_cast<size_t>(std::max(ri, rj))] = std::min(ri, rj);
      }
    }
  }

  // Clusters ordered by first occurrence; members keep their original order.
  std::vector<int> roots;
  std::vector<std::vector<int>> members;
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      members.emplace_back();
      it = roots.end() - 1;
    }
    members[static_cast<size_t>(it - roots.begin())].push_back(i);
  }

  EigenGrouping out;
  for (const std::vector<int>& cluster : members) {
    Complex mean(0.0, 0.0);
    double diameter = 0.0;
    for (size_t a = 0; a < cluster.size(); ++a) {
      mean += eigs(cluster[a]);
      for (size_t b = a + 1; b < cluster.size(); ++b) {
        diameter = std::max(diameter, std::abs(eigs(cluster[a]) - eigs(cluster[b])));
      }
    }
    mean /= static_cast<double>(cluster.size());
    out.values.push_back(mean);
    out.multiplicities.push_back(static_cast<int>(cluster.size()));
    out.permutation.insert(out.permutation.end(), cluster.begin(), cluster.end());
    if (diameter > 10.0 * link) out.ill_separated = true;
  }
  return out;
}

DiagonalizerResult dodo(const MatrixTuple& a, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("dodo: tol must be positive");
  const RecursionOutcome rec = dodo_recurse(a, tol, 0, std::max(1, a.n()));

  DiagonalizerResult out;
  out.s = rec.s;
  out.depth = rec.depth;
  out.cond_s = cond2(out.s);
  Eigen::PartialPivLU<Matrix> lu(out.s);
  out.lambdas.reserve(static_cast<size_t>(a.size()));
  out.off_value = 0.0;
  for (int k = 0; k < a.size(); ++k) {
    const Matrix conjugated = lu.solve(a[k] * out.s);
    out.lambdas.push_back(conjugated.diagonal());
    out.off_value += off_mass_sq(conjugated);
  }
  return out;
}

}  // namespace simdiag
