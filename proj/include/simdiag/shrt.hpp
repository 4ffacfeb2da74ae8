#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "simdiag/tuple_checks.hpp"

namespace simdiag {

// Running state of the shearing + Givens sweep scheme over a real tuple.
struct ShrtState {
  RealMatrix s_breve;                  // accumulated transform, starts at I
  std::vector<RealMatrix> a_breve;     // current conjugated tuple
  int iteration = 0;                   // pair updates applied so far
  std::vector<double> f_history;       // off objective after each update (index 0 = initial)

  // Parameters chosen by the most recent pair update, for diagnostics.
  double last_phi = 0.0;
  double last_theta = 0.0;
  int last_l = -1;

  double current_f() const { return f_history.back(); }
};

// Validates that the tuple is real and sets up the initial state.  Complex
// input is rejected with std::invalid_argument.
ShrtState shrt_init(const MatrixTuple& a);

// One (p,q) update, 0-based indices with p < q: pick the member maximizing
// |a_pp - a_qq|, shear by the closed-form hyperbolic parameter (argument
// clamped so cosh stays bounded), then rotate by the closed-form Givens
// angle, taking the stationary branch that minimizes the pair objective.  A
// degenerate shearing ratio or a vanishing rotation numerator yields an
// identity update for that parameter.
ShrtState shrt_pair_update(ShrtState state, int p, int q);

using ShrtObserver = std::function<void(int, const ShrtState&)>;

// Cyclic sweeps over all pairs p < q in lexicographic order.  Terminates on
// the relative objective change rel_tol, after max_sweeps sweeps, or at the
// pair-update cap, whichever comes first.  The observer is invoked with the
// initial state (t = 0) and after every pair update.
std::pair<DiagonalizerResult, std::vector<double>> shrt_run(const MatrixTuple& a, int max_sweeps,
                                                            double rel_tol,
                                                            const ShrtObserver& observer = {},
                                                            int pair_update_cap = 20000);

}  // namespace simdiag
