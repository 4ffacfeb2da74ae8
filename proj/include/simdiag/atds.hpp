#pragma once

#include <functional>

#include "simdiag/cadzow.hpp"
#include "simdiag/tuple_checks.hpp"

namespace simdiag {

enum class AtdsBranch { exact_dodo, pcd_fallback };

const char* to_string(AtdsBranch branch);

struct PcdResult {
  Matrix s;          // diagonalizer of the winning member
  int index = -1;    // l*, the winning member index
  double score = 0;  // ||A - P_SD(S)(A)||_F at l*
};

// Pseudo common diagonalizer: among the diagonalizable members of X, pick the
// one whose SD(S)-projection of `a_original` fits best (ties to the smallest
// index).  Throws PcdAssumptionError when no member is diagonalizable.
PcdResult pcd(const MatrixTuple& x, const MatrixTuple& a_original, double tol);

struct AtdsOutcome {
  Matrix s;                    // common (exact or pseudo) diagonalizer
  std::vector<Vector> lambdas; // diagonal entries of S^-1 A~_k S
  MatrixTuple a_tilde;         // simultaneously diagonalizable approximant
  AtdsBranch branch = AtdsBranch::exact_dodo;
  CadzowTrace cadzow_trace;
  SdMembership sd_check;       // membership verdict on the fiber candidate
  double approximation_error = 0.0;  // ||A - A~||_F
  double off_value = 0.0;
  double cond_s = 0.0;
  int pcd_index = -1;          // winning member when the fallback ran
};

// Estimate produced at one iterate of the alternating projections, following
// the same branch rule as the final answer.
struct AtdsEstimate {
  int t = 0;
  Matrix s;
  std::vector<Vector> lambdas;
  MatrixTuple a_tilde;
  AtdsBranch branch = AtdsBranch::exact_dodo;
};

// Invoked with the estimate at each iterate t = 0..t_end.  Iterates whose
// estimate cannot be formed (fallback assumption violated) are skipped.  A
// false return stops estimate production for the remaining iterates (the
// final outcome is always computed).  The callback must not mutate solver
// state.
using EstimateObserver = std::function<bool(const AtdsEstimate&)>;

// Full pipeline: alternating-projection low-rank approximation of the
// Kronecker-sum stack, fiber projection back to a tuple, then either the
// recursive exact diagonalizer (membership holds) or the pseudo-common-
// diagonalizer fallback with projection onto SD(S).
AtdsOutcome atds_solve(const MatrixTuple& a, const CadzowConfig& cfg, double tol,
                       const EstimateObserver& observer = {});

}  // namespace simdiag
