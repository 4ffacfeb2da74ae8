#include "simdiag/generator.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <numbers>

namespace simdiag {

std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double NormalSampler::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller with u1 in (0, 1].
  const double u1 = 1.0 - static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

RealMatrix NormalSampler::matrix(int rows, int cols) {
  RealMatrix out(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) out(i, j) = (*this)();
  }
  return out;
}

RealVector NormalSampler::vector(int size) {
  RealVector out(size);
  for (int i = 0; i < size; ++i) out(i) = (*this)();
  return out;
}

GroundTruth make_ground_truth(int n, int count, double kappa, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("make_ground_truth: n must be at least 2");
  if (count < 1) throw std::invalid_argument("make_ground_truth: need at least one matrix");
  if (!(kappa > 1.0)) throw std::invalid_argument("make_ground_truth: kappa must exceed 1");

  NormalSampler sampler(seed);

  // Re-draw guard for the measure-zero singular draw.
  RealMatrix shape;
  Eigen::JacobiSVD<RealMatrix> svd;
  for (int attempt = 0;; ++attempt) {
    shape = sampler.matrix(n, n);
    svd.compute(shape, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) > 1e-12 * sv(0)) break;
    if (attempt > 100) throw Error("make_ground_truth: could not draw a full-rank matrix");
  }

  RealVector sigma(n);
  for (int i = 1; i <= n; ++i) {
    sigma(i - 1) = (kappa - 1.0) * static_cast<double>(n - i) / static_cast<double>(n - 1) + 1.0;
  }
  const RealMatrix s_real = svd.matrixU() * sigma.asDiagonal() * svd.matrixV().transpose();

  GroundTruth out;
  out.s_star = s_real.cast<Complex>();
  Eigen::PartialPivLU<RealMatrix> lu(s_real);
  const RealMatrix s_inv = lu.inverse();

  std::vector<Matrix> entries;
  entries.reserve(static_cast<size_t>(count));
  out.lambdas_star.reserve(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) {
    const RealVector diag = sampler.vector(n);
    out.lambdas_star.push_back(diag.cast<Complex>());
    entries.push_back((s_real * diag.asDiagonal() * s_inv).cast<Complex>());
  }
  out.a_star = MatrixTuple(std::move(entries));
  return out;
}

MatrixTuple add_noise(const MatrixTuple& a_star, double snr_db, std::uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0.0) return a_star;
  if (std::isnan(snr_db)) throw std::invalid_argument("add_noise: snr_db must not be NaN");

  NormalSampler sampler(seed);
  const int n = a_star.n();
  std::vector<RealMatrix> noise;
  noise.reserve(static_cast<size_t>(a_star.size()));
  double noise_sq = 0.0;
  for (int k = 0; k < a_star.size(); ++k) {
    noise.push_back(sampler.matrix(n, n));
    noise_sq += noise.back().squaredNorm();
  }
  const double sigma = a_star.norm() / (std::sqrt(noise_sq) * std::pow(10.0, snr_db / 20.0));

  MatrixTuple out = a_star;
  for (int k = 0; k < a_star.size(); ++k) {
    out[k] += (sigma * noise[static_cast<size_t>(k)]).cast<Complex>();
  }
  return out;
}

}  // namespace simdiag
