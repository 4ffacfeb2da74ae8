#include "simdiag/cadzow.hpp"

#include <Eigen/SVD>

namespace simdiag {

void CadzowConfig::validate(int n) const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("CadzowConfig: epsilon must be positive");
  if (t_max < 0) throw std::invalid_argument("CadzowConfig: t_max must be nonnegative");
  const int r = resolve_rank(n);
  if (r < 0 || r > n * n) throw std::invalid_argument("CadzowConfig: rank target out of range");
}

StructuredMatrix project_low_rank(const StructuredMatrix& h, int r) {
  const Eigen::Index rows = h.data().rows();
  const Eigen::Index cols = h.data().cols();
  const Eigen::Index full = std::min(rows, cols);
  if (r < 0 || r > full) throw std::invalid_argument("project_low_rank: rank bound out of range");
  if (r == 0) return StructuredMatrix(h.n(), h.count());
  if (r == full) return h;

  // The stack is tall (K n^2 by n^2), so reduce by an unpivoted QR and take
  // the SVD of the small triangular factor.  Only the right singular vectors
  // are needed: with H = U S V^H, the truncation U_r S_r V_r^H equals
  // H V_r V_r^H.
  Matrix v_r;
  if (rows > cols) {
    const Eigen::HouseholderQR<Matrix> qr(h.data());
    const Matrix r_factor = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    Eigen::BDCSVD<Matrix> svd(r_factor, Eigen::ComputeThinV);
    v_r = svd.matrixV().leftCols(r);
  } else {
    Eigen::BDCSVD<Matrix> svd(h.data(), Eigen::ComputeThinV);
    v_r = svd.matrixV().leftCols(r);
  }
  Matrix truncated = (h.data() * v_r) * v_r.adjoint();
  return StructuredMatrix(h.n(), h.count(), std::move(truncated));
}

std::pair<StructuredMatrix, CadzowTrace> cadzow_run(const MatrixTuple& a, const CadzowConfig& cfg,
                                                    const CadzowObserver& observer) {
  cfg.validate(a.n());
  const int rank = cfg.resolve_rank(a.n());

  StructuredMatrix h = build_xi(a);
  CadzowTrace trace;
  for (int t = 0;; ++t) {
    StructuredMatrix low_rank = project_low_rank(h, rank);
    const double residual = (h.data() - low_rank.data()).norm();
    trace.residuals.push_back(residual);
    if (observer) observer(t, h);
    if (residual <= cfg.epsilon) {
      trace.t_end = t;
      trace.reason = StopReason::converged;
      break;
    }
    if (t >= cfg.t_max) {
      trace.t_end = t;
      trace.reason = StopReason::iteration_cap;
      break;
    }
    h = project_onto_xi_range(low_rank);
  }
  return {std::move(h), std::move(trace)};
}

}  // namespace simdiag
