#pragma once

#include <cstdint>
#include <random>

#include "simdiag/matrix_tuple.hpp"

namespace simdiag {

// splitmix64 step, used to derive independent stream seeds: stream s of base
// seed b is splitmix64(b + (s+1) * golden gamma).  Documented so callers can
// reproduce the per-trial streams outside this library.
std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream);

// Standard-normal sampler on top of std::mt19937_64 using the Box-Muller
// transform.  std::normal_distribution is implementation-defined, so rolling
// the transform keeps streams bit-identical across standard libraries.
class NormalSampler {
public:
  explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}

  double operator()();

  // Fills column-major.
  RealMatrix matrix(int rows, int cols);
  RealVector vector(int size);

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct GroundTruth {
  Matrix s_star;                 // real entries, prescribed singular values
  std::vector<Vector> lambdas_star;
  MatrixTuple a_star;            // S* diag(lambda_k) S*^-1
};

// Draws S* by replacing the singular values of a standard-normal matrix with
// sigma_i = (kappa - 1)(n - i)/(n - 1) + 1 (so cond2(S*) = kappa exactly) and
// diagonal factors with standard-normal entries.
GroundTruth make_ground_truth(int n, int count, double kappa, std::uint64_t seed);

// A_k = A*_k + sigma N_k with standard-normal N_k, sigma chosen so that
// 10 log10(||A*||_F^2 / ||sigma N||_F^2) equals snr_db over the whole tuple
// and the realized draw.  +infinity returns A* unchanged.
MatrixTuple add_noise(const MatrixTuple& a_star, double snr_db, std::uint64_t seed);

}  // namespace simdiag
