#include "simdiag/atds.hpp"

#include <Eigen/Dense>
#include <limits>

#include "simdiag/dodo.hpp"
#include "simdiag/linalg.hpp"

namespace simdiag {

namespace {

struct BranchDecision {
  Matrix s;
  std::vector<Vector> lambdas;
  MatrixTuple a_tilde;
  AtdsBranch branch = AtdsBranch::exact_dodo;
  SdMembership sd_check;
  int pcd_index = -1;
};

std::vector<Vector> conjugated_diagonals(const Matrix& s, const MatrixTuple& x) {
  Eigen::PartialPivLU<Matrix> lu(s);
  std::vector<Vector> out;
  out.reserve(static_cast<size_t>(x.size()));
  for (int k = 0; k < x.size(); ++k) {
    out.push_back(Vector(lu.solve(x[k] * s).diagonal()));
  }
  return out;
}

// Applies the branch rule to the fiber candidate of one iterate: the exact
// diagonalizer when membership holds (and it succeeds at the working
// tolerance), the pseudo-common-diagonalizer fallback otherwise.
BranchDecision decide_branch(const MatrixTuple& a, const MatrixTuple& candidate, double tol) {
  BranchDecision out;
  out.sd_check = check_sd_membership(candidate, tol);
  if (out.sd_check.is_member()) {
    try {
      DiagonalizerResult exact = dodo(candidate, tol);
      if (exact.off_value <= tol * candidate.squared_norm()) {
        out.s = std::move(exact.s);
        out.lambdas = std::move(exact.lambdas);
        out.a_tilde = candidate;
        out.branch = AtdsBranch::exact_dodo;
        return out;
      }
      // Tolerance breach on a borderline membership verdict; fall through.
    } catch (const NotSimultaneouslyDiagonalizableError&) {
      // Membership was borderline; the fallback below still applies.
    }
  }
  PcdResult fallback = pcd(candidate, a, tol);
  out.s = std::move(fallback.s);
  out.pcd_index = fallback.index;
  out.a_tilde = project_onto_sd_of(out.s, a);
  out.lambdas = conjugated_diagonals(out.s, out.a_tilde);
  out.branch = AtdsBranch::pcd_fallback;
  return out;
}

}  // namespace

const char* to_string(AtdsBranch branch) {
  return branch == AtdsBranch::exact_dodo ? "exact_dodo" : "pcd_fallback";
}

PcdResult pcd(const MatrixTuple& x, const MatrixTuple& a_original, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("pcd: tol must be positive");
  if (x.n() != a_original.n() || x.size() != a_original.size()) {
    throw std::invalid_argument("pcd: tuple dimensions disagree");
  }
  PcdResult best;
  best.score = std::numeric_limits<double>::infinity();
  for (int k = 0; k < x.size(); ++k) {
    const DiagCheck check = check_diagonalizable(x[k], tol);
    if (!check.diagonalizable) continue;
    double score;
    MatrixTuple projected;
    try {
      projected = project_onto_sd_of(check.eigenvectors, a_original);
    } catch (const Error&) {
      // A candidate whose eigenbasis cannot back a stable projection is not
      // usable as a pseudo diagonalizer; skip it.
      continue;
    }
    score = (a_original - projected).norm();
    if (score < best.score) {
      best.score = score;
      best.index = k;
      best.s = check.eigenvectors;
    }
  }
  if (best.index < 0) {
    throw PcdAssumptionError("pcd: no member of the tuple is diagonalizable");
  }
  return best;
}

AtdsOutcome atds_solve(const MatrixTuple& a, const CadzowConfig& cfg, double tol,
                       const EstimateObserver& observer) {
  if (tol <= 0.0) throw std::invalid_argument("atds_solve: tol must be positive");

  CadzowObserver cadzow_observer;
  bool estimating = static_cast<bool>(observer);
  if (observer) {
    cadzow_observer = [&](int t, const StructuredMatrix& iterate) {
      if (!estimating) return;
      MatrixTuple candidate;
      BranchDecision decision;
      try {
        candidate = project_onto_fiber(a, iterate);
        decision = decide_branch(a, candidate, tol);
      } catch (const PcdAssumptionError&) {
        return;  // no estimate at this iterate
      }
      AtdsEstimate estimate;
      estimate.t = t;
      estimate.s = std::move(decision.s);
      estimate.lambdas = std::move(decision.lambdas);
      estimate.a_tilde = std::move(decision.a_tilde);
      estimate.branch = decision.branch;
      estimating = observer(estimate);
    };
  }

  auto [h_final, trace] = cadzow_run(a, cfg, cadzow_observer);

  const MatrixTuple candidate = project_onto_fiber(a, h_final);
  BranchDecision decision = decide_branch(a, candidate, tol);

  AtdsOutcome out;
  out.s = std::move(decision.s);
  out.lambdas = std::move(decision.lambdas);
  out.a_tilde = std::move(decision.a_tilde);
  out.branch = decision.branch;
  out.cadzow_trace = std::move(trace);
  out.sd_check = std::move(decision.sd_check);
  out.pcd_index = decision.pcd_index;
  out.approximation_error = (a - out.a_tilde).norm();
  out.off_value = off_objective(out.a_tilde, out.s);
  out.cond_s = cond2(out.s);
  return out;
}

}  // namespace simdiag
