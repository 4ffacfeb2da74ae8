#include "simdiag/shrt.hpp"

#include <cmath>
#include <numbers>

#include "simdiag/linalg.hpp"

namespace simdiag {

namespace {

constexpr double kDegenerate = 1e-300;
constexpr double kTanhClamp = 1.0 - 1e-12;

double off_sum(const std::vector<RealMatrix>& tuple) {
  double total = 0.0;
  for (const RealMatrix& m : tuple) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (i != j) total += m(i, j) * m(i, j);
      }
    }
  }
  return total;
}

// In-place conjugation by the shearing matrix: A := H(-phi) A H(phi).
void apply_shear(RealMatrix& m, int p, int q, double phi) {
  const double ch = std::cosh(phi);
  const double sh = std::sinh(phi);
  const RealVector row_p = m.row(p);
  const RealVector row_q = m.row(q);
  m.row(p) = ch * row_p - sh * row_q;
  m.row(q) = -sh * row_p + ch * row_q;
  const RealVector col_p = m.col(p);
  const RealVector col_q = m.col(q);
  m.col(p) = ch * col_p + sh * col_q;
  m.col(q) = sh * col_p + ch * col_q;
}

// In-place conjugation by the Givens rotation: A := G(-theta) A G(theta).
void apply_rotation(RealMatrix& m, int p, int q, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const RealVector row_p = m.row(p);
  const RealVector row_q = m.row(q);
  m.row(p) = c * row_p + s * row_q;
  m.row(q) = -s * row_p + c * row_q;
  const RealVector col_p = m.col(p);
  const RealVector col_q = m.col(q);
  m.col(p) = c * col_p + s * col_q;
  m.col(q) = -s * col_p + c * col_q;
}

// Right-multiplication of the accumulated transform by H(phi) then G(theta).
void accumulate_transform(RealMatrix& s, int p, int q, double phi, double theta) {
  const double ch = std::cosh(phi);
  const double sh = std::sinh(phi);
  RealVector col_p = s.col(p);
  RealVector col_q = s.col(q);
  s.col(p) = ch * col_p + sh * col_q;
  s.col(q) = sh * col_p + ch * col_q;
  const double c = std::cos(theta);
  const double si = std::sin(theta);
  col_p = s.col(p);
  col_q = s.col(q);
  s.col(p) = c * col_p + si * col_q;
  s.col(q) = -si * col_p + c * col_q;
}

}  // namespace

ShrtState shrt_init(const MatrixTuple& a) {
  if (!a.is_real(0.0)) {
    throw std::invalid_argument("shrt: the sweep scheme is defined for real tuples only");
  }
  ShrtState state;
  state.s_breve = RealMatrix::Identity(a.n(), a.n());
  state.a_breve.reserve(static_cast<size_t>(a.size()));
  for (int k = 0; k < a.size(); ++k) {
    state.a_breve.push_back(a[k].real());
  }
  state.f_history.push_back(off_sum(state.a_breve));
  return state;
}

ShrtState shrt_pair_update(ShrtState state, int p, int q) {
  const int n = static_cast<int>(state.s_breve.rows());
  if (!(0 <= p && p < q && q < n)) {
    throw std::invalid_argument("shrt_pair_update: need 0 <= p < q < n");
  }

  // Member selection: largest |a_pp - a_qq|, ties to the smallest index.
  int l = 0;
  double best = -1.0;
  for (int k = 0; k < static_cast<int>(state.a_breve.size()); ++k) {
    const RealMatrix& m = state.a_breve[static_cast<size_t>(k)];
    const double gap = std::abs(m(p, p) - m(q, q));
    if (gap > best) {
      best = gap;
      l = k;
    }
  }

  // Shearing parameter.
  const RealMatrix& al = state.a_breve[static_cast<size_t>(l)];
  double kappa = 0.0;
  double xi = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j == p || j == q) continue;
    kappa += al(p, j) * al(q, j) - al(j, p) * al(j, q);
    xi += al(p, j) * al(p, j) + al(q, j) * al(q, j) + al(j, p) * al(j, p) + al(j, q) * al(j, q);
  }
  const double dpq = al(p, p) - al(q, q);
  const double opq = al(p, q) - al(q, p);
  const double shear_num = kappa - dpq * opq;
  const double shear_den = 2.0 * (dpq * dpq + opq * opq) + xi;
  double phi = 0.0;
  if (std::abs(shear_num) > kDegenerate || std::abs(shear_den) > kDegenerate) {
    double t = shear_num / shear_den;
    if (!(t > -kTanhClamp)) t = -kTanhClamp;
    if (!(t < kTanhClamp)) t = kTanhClamp;
    phi = std::atanh(t);
  }
  if (phi != 0.0) {
    for (RealMatrix& m : state.a_breve) apply_shear(m, p, q, phi);
  }

  // Rotation angle from the sheared tuple.  The pair objective has the form
  // const - (den cos 4t + num sin 4t)/4, so among the stationary branches of
  // tan 4t = num/den the one at atan2(num, den) is the minimizer.  A zero
  // numerator resolves to the identity (tan 4t = 0 taken at t = 0), which is
  // where the scheme stalls on equal-diagonal tuples.
  double rot_num = 0.0;
  double rot_den = 0.0;
  for (const RealMatrix& m : state.a_breve) {
    const double diag_gap = m(p, p) - m(q, q);
    const double off_sum_pq = m(p, q) + m(q, p);
    rot_num += diag_gap * off_sum_pq;
    rot_den += diag_gap * diag_gap - off_sum_pq * off_sum_pq;
  }
  rot_num *= 2.0;
  double theta = 0.0;
  if (std::abs(rot_num) > kDegenerate) {
    theta = std::atan2(rot_num, rot_den) / 4.0;
  }
  if (theta != 0.0) {
    for (RealMatrix& m : state.a_breve) apply_rotation(m, p, q, theta);
  }

  accumulate_transform(state.s_breve, p, q, phi, theta);
  state.last_phi = phi;
  state.last_theta = theta;
  state.last_l = l;
  state.iteration += 1;
  state.f_history.push_back(off_sum(state.a_breve));
  return state;
}

std::pair<DiagonalizerResult, std::vector<double>> shrt_run(const MatrixTuple& a, int max_sweeps,
                                                            double rel_tol,
                                                            const ShrtObserver& observer,
                                                            int pair_update_cap) {
  if (max_sweeps < 0) throw std::invalid_argument("shrt_run: max_sweeps must be nonnegative");
  if (!(rel_tol >= 0.0)) throw std::invalid_argument("shrt_run: rel_tol must be nonnegative");

  ShrtState state = shrt_init(a);
  if (observer) observer(0, state);

  const int n = a.n();
  bool done = state.current_f() == 0.0;  // already diagonal
  for (int sweep = 0; sweep < max_sweeps && !done; ++sweep) {
    for (int p = 0; p < n && !done; ++p) {
      for (int q = p + 1; q < n && !done; ++q) {
        const double f_prev = state.current_f();
        state = shrt_pair_update(std::move(state), p, q);
        if (observer) observer(state.iteration, state);
        const double f_now = state.current_f();
        if (std::abs(f_now - f_prev) <= rel_tol * std::abs(f_now)) done = true;
        if (state.iteration >= pair_update_cap) done = true;
      }
    }
  }

  DiagonalizerResult result;
  result.s = state.s_breve.cast<Complex>();
  result.cond_s = cond2(result.s);
  result.off_value = state.current_f();
  result.lambdas.reserve(state.a_breve.size());
  for (const RealMatrix& m : state.a_breve) {
    result.lambdas.push_back(m.diagonal().cast<Complex>());
  }
  return {std::move(result), std::move(state.f_history)};
}

}  // namespace simdiag
