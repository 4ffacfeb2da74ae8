#include "simdiag/kron_structure.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "simdiag/linalg.hpp"

namespace simdiag {

namespace {

// Writes I (x) M - M^T (x) I into `slab` block-wise.
void assemble_slab(const Matrix& m, Eigen::Block<Matrix> slab) {
  const int n = static_cast<int>(m.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto block = slab.block(i * n, j * n, n, n);
      if (i == j) {
        block = m;
        block.diagonal().array() -= m(i, i);
      } else {
        block.setZero();
        block.diagonal().setConstant(-m(j, i));
      }
    }
  }
}

}  // namespace

StructuredMatrix::StructuredMatrix(int n, int count)
    : n_(n), count_(count), data_(Matrix::Zero(static_cast<Eigen::Index>(count) * n * n, n * n)) {
  if (n < 1 || count < 1) throw std::invalid_argument("StructuredMatrix: dimensions must be positive");
}

StructuredMatrix::StructuredMatrix(int n, int count, Matrix data)
    : n_(n), count_(count), data_(std::move(data)) {
  if (n < 1 || count < 1) throw std::invalid_argument("StructuredMatrix: dimensions must be positive");
  if (data_.rows() != static_cast<Eigen::Index>(count) * n * n || data_.cols() != n * n) {
    throw std::invalid_argument("StructuredMatrix: data must be (K n^2)-by-n^2");
  }
}

Eigen::Block<Matrix> StructuredMatrix::slab(int k) {
  return data_.block(static_cast<Eigen::Index>(k) * n_ * n_, 0, n_ * n_, n_ * n_);
}

Eigen::Block<const Matrix> StructuredMatrix::slab(int k) const {
  return data_.block(static_cast<Eigen::Index>(k) * n_ * n_, 0, n_ * n_, n_ * n_);
}

StructuredMatrix build_xi(const MatrixTuple& x) {
  StructuredMatrix out(x.n(), x.size());
  for (int k = 0; k < x.size(); ++k) {
    assemble_slab(x[k], out.slab(k));
  }
  out.is_in_range_of_xi = true;
  return out;
}

RankProfile xi_rank_profile(const StructuredMatrix& h, double gap_tol) {
  if (gap_tol <= 0.0) throw std::invalid_argument("xi_rank_profile: gap_tol must be positive");
  RankProfile out;
  if (h.data().rows() > h.data().cols()) {
    // Unpivoted QR leaves the singular values unchanged; decompose the small
    // triangular factor instead of the full stack.
    const Eigen::HouseholderQR<Matrix> qr(h.data());
    const Matrix r_factor = qr.matrixQR().topRows(h.data().cols()).triangularView<Eigen::Upper>();
    Eigen::BDCSVD<Matrix> svd(r_factor);
    out.singular_values = svd.singularValues();
  } else {
    Eigen::BDCSVD<Matrix> svd(h.data());
    out.singular_values = svd.singularValues();
  }
  const double sigma_max = out.singular_values.size() > 0 ? out.singular_values(0) : 0.0;
  const double cut = gap_tol * sigma_max;
  out.rank = static_cast<int>((out.singular_values.array() > cut).count());

  const int n = h.n();
  const int target = n * n - n;
  out.gap_ratio = std::numeric_limits<double>::quiet_NaN();
  if (target >= 1 && target < out.singular_values.size()) {
    const double head = out.singular_values(target - 1);
    const double tail = out.singular_values(target);
    out.gap_ratio = tail == 0.0 ? std::numeric_limits<double>::infinity() : head / tail;
  }
  return out;
}

MatrixTuple fiber_representative(const StructuredMatrix& h, double tol) {
  const int n = h.n();
  std::vector<Matrix> reps;
  reps.reserve(static_cast<size_t>(h.count()));
  for (int k = 0; k < h.count(); ++k) {
    reps.emplace_back(h.slab(k).topLeftCorner(n, n));
  }
  MatrixTuple rep(std::move(reps));
  const StructuredMatrix round_trip = build_xi(rep);
  const double gap = (round_trip.data() - h.data()).norm();
  if (gap > tol * h.norm()) {
    throw NotInRangeError("fiber_representative: input is not in the range of the Kronecker-sum map");
  }
  return rep;
}

MatrixTuple project_onto_fiber(const MatrixTuple& x, const StructuredMatrix& h, double tol) {
  if (x.n() != h.n() || x.size() != h.count()) {
    throw std::invalid_argument("project_onto_fiber: tuple and stack dimensions disagree");
  }
  MatrixTuple rep = fiber_representative(h, tol);
  const int n = x.n();
  for (int k = 0; k < x.size(); ++k) {
    const Complex shift = (x[k] - rep[k]).trace() / static_cast<double>(n);
    rep[k].diagonal().array() += shift;
  }
  return rep;
}

StructuredMatrix project_onto_xi_range(const StructuredMatrix& h) {
  const int n = h.n();
  StructuredMatrix out(n, h.count());
  for (int k = 0; k < h.count(); ++k) {
    const auto slab = h.slab(k);

    // Adjoint of the single-slab map evaluated at the slab: b_{st} =
    // sum_p (block_pp)_{st} - trace(block_{ts}).
    Matrix b = Matrix::Zero(n, n);
    for (int p = 0; p < n; ++p) {
      b += slab.block(p * n, p * n, n, n);
    }
    for (int t = 0; t < n; ++t) {
      for (int s = 0; s < n; ++s) {
        b(s, t) -= slab.block(t * n, s * n, n, n).trace();
      }
    }

    // Normal equations in coefficient space: off-diagonal entries decouple
    // with factor 2n; the diagonal family (z_nn pinned to 0) has Gram
    // 2n I - 2 ones, inverted by Sherman-Morrison.
    Matrix coeff = b / (2.0 * n);
    const Complex diag_sum = b.diagonal().head(n - 1).sum();
    for (int i = 0; i < n - 1; ++i) {
      coeff(i, i) = (b(i, i) + diag_sum) / (2.0 * n);
    }
    coeff(n - 1, n - 1) = Complex(0.0, 0.0);

    assemble_slab(coeff, out.slab(k));
  }
  out.is_in_range_of_xi = true;
  return out;
}

}  // namespace simdiag
