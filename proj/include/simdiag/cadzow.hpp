#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "simdiag/kron_structure.hpp"

namespace simdiag {

struct CadzowConfig {
  double epsilon = 1e-6;  // stopping threshold on ||H(t) - P_L(H(t))||_F
  int t_max = 20000;      // iteration cap
  int rank_target = -1;   // -1 resolves to n^2 - n

  void validate(int n) const;
  int resolve_rank(int n) const { return rank_target < 0 ? n * n - n : rank_target; }
};

enum class StopReason { converged, iteration_cap };

struct CadzowTrace {
  std::vector<double> residuals;  // one entry per evaluated iterate, t = 0..t_end
  int t_end = 0;
  StopReason reason = StopReason::converged;
};

// Best Frobenius approximation of rank at most r, by singular value
// truncation.
StructuredMatrix project_low_rank(const StructuredMatrix& h, int r);

// Called once per iterate with (t, H(t)), including t = 0 and the final one.
using CadzowObserver = std::function<void(int, const StructuredMatrix&)>;

// Alternating projections from H(0) = Xi(A): H(t+1) = P_range(P_rank(H(t))),
// stopping when the rank-projection residual falls to epsilon or the cap is
// hit.  The residual evaluated for the stopping test is the same
// rank-projection used to advance, so each loop costs one SVD.
std::pair<StructuredMatrix, CadzowTrace> cadzow_run(const MatrixTuple& a, const CadzowConfig& cfg,
                                                    const CadzowObserver& observer = {});

}  // namespace simdiag
