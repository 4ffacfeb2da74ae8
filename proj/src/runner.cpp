#include "simdiag/runner.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "simdiag/atds.hpp"
#include "simdiag/generator.hpp"
#include "simdiag/linalg.hpp"
#include "simdiag/metrics.hpp"
#include "simdiag/shrt.hpp"

namespace simdiag {

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

// Formats doubles with enough digits to round-trip, so identical runs emit
// identical text.
std::string fmt(double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

// Threshold labels follow the 1e<k> convention for powers of ten (1e-2 ->
// "1e2"), falling back to scientific notation otherwise.
std::string threshold_label(double threshold) {
  const double exponent = -std::log10(threshold);
  const double rounded = std::round(exponent);
  if (std::abs(exponent - rounded) < 1e-9 && rounded > 0) {
    return "1e" + std::to_string(static_cast<int>(rounded));
  }
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << threshold;
  return os.str();
}

// Tracks first-crossing iterations for each threshold during a run.
class ThresholdTracker {
public:
  ThresholdTracker(const std::vector<double>& thresholds, Clock::time_point solver_start)
      : solver_start_(solver_start) {
    outcomes_.reserve(thresholds.size());
    for (double t : thresholds) outcomes_.push_back({t, false, -1, std::numeric_limits<double>::quiet_NaN()});
  }

  bool all_reached() const {
    for (const ThresholdOutcome& o : outcomes_) {
      if (!o.reached) return false;
    }
    return true;
  }

  void observe(long t, double err_s, double overhead_ms) {
    for (ThresholdOutcome& o : outcomes_) {
      if (!o.reached && err_s <= o.threshold) {
        o.reached = true;
        o.iterations = t;
        o.wall_ms = ms_between(solver_start_, Clock::now()) - overhead_ms;
      }
    }
  }

  std::vector<ThresholdOutcome> take() { return std::move(outcomes_); }

private:
  Clock::time_point solver_start_;
  std::vector<ThresholdOutcome> outcomes_;
};

ExperimentRecord run_one_trial(const TrialConfig& cfg, int trial_id) {
  ExperimentRecord record;
  record.trial_id = trial_id;
  record.algorithm = cfg.algorithm;
  record.n = cfg.n;
  record.count = cfg.count;
  record.snr_db = cfg.snr_db;
  record.kappa = cfg.kappa;
  record.seed = split_seed(cfg.seed, static_cast<std::uint64_t>(trial_id));

  try {
    const GroundTruth truth = make_ground_truth(cfg.n, cfg.count, cfg.kappa, split_seed(record.seed, 0));
    const MatrixTuple noisy = add_noise(truth.a_star, cfg.snr_db, split_seed(record.seed, 1));

    const Clock::time_point start = Clock::now();
    double overhead_ms = 0.0;
    ThresholdTracker tracker(cfg.thresholds, start);

    if (cfg.algorithm == Algorithm::atds) {
      CadzowConfig cadzow_cfg;
      cadzow_cfg.epsilon = cfg.solver.epsilon;
      cadzow_cfg.t_max = cfg.solver.t_max;

      EstimateObserver observer;
      if (!cfg.thresholds.empty()) {
        observer = [&](const AtdsEstimate& estimate) {
          const Clock::time_point begin = Clock::now();
          tracker.observe(estimate.t, err_s_only(truth.s_star, estimate.s), overhead_ms);
          overhead_ms += ms_between(begin, Clock::now());
          return !tracker.all_reached();
        };
      }
      const AtdsOutcome outcome = atds_solve(noisy, cadzow_cfg, cfg.solver.tol, observer);
      record.wall_ms = ms_between(start, Clock::now()) - overhead_ms;
      record.branch = to_string(outcome.branch);
      record.t_end = outcome.cadzow_trace.t_end;
      record.cadzow_residuals = outcome.cadzow_trace.residuals;
      const ScoreResult score = match_and_score(truth.s_star, outcome.s, truth.lambdas_star,
                                                outcome.lambdas, noisy, outcome.a_tilde);
      record.err_s_final = score.err_s;
      record.err_lambda_final = score.err_lambda;
      record.err_a_final = score.err_a;
    } else {
      ShrtObserver observer;
      if (!cfg.thresholds.empty()) {
        observer = [&](int t, const ShrtState& state) {
          const Clock::time_point begin = Clock::now();
          if (!tracker.all_reached()) {
            tracker.observe(t, err_s_only(truth.s_star, state.s_breve.cast<Complex>()), overhead_ms);
          }
          overhead_ms += ms_between(begin, Clock::now());
        };
      }
      // Sweep count large enough that the pair-update cap is what binds.
      const int pairs = cfg.n * (cfg.n - 1) / 2;
      const int sweeps = cfg.solver.shrt_pair_cap / std::max(1, pairs) + 1;
      const auto [result, f_history] =
          shrt_run(noisy, sweeps, cfg.solver.shrt_rel_tol, observer, cfg.solver.shrt_pair_cap);
      record.wall_ms = ms_between(start, Clock::now()) - overhead_ms;
      record.t_end = static_cast<long>(f_history.size()) - 1;

      // Reconstruct the approximant the final transform implies.
      Eigen::PartialPivLU<Matrix> lu(result.s);
      const Matrix s_inv = lu.inverse();
      std::vector<Matrix> approx;
      approx.reserve(static_cast<size_t>(cfg.count));
      for (int k = 0; k < cfg.count; ++k) {
        approx.push_back(result.s * result.lambdas[static_cast<size_t>(k)].asDiagonal() * s_inv);
      }
      const ScoreResult score = match_and_score(truth.s_star, result.s, truth.lambdas_star,
                                                result.lambdas, noisy, MatrixTuple(std::move(approx)));
      record.err_s_final = score.err_s;
      record.err_lambda_final = score.err_lambda;
      record.err_a_final = score.err_a;
    }
    record.reaches = tracker.take();
  } catch (const std::exception& e) {
    record.failed = true;
    record.failure = e.what();
    record.branch = "error";
    for (double t : cfg.thresholds) {
      record.reaches.push_back({t, false, -1, std::numeric_limits<double>::quiet_NaN()});
    }
  }
  return record;
}

}  // namespace

const char* to_string(Algorithm algorithm) {
  return algorithm == Algorithm::atds ? "atds" : "shrt";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "atds") return Algorithm::atds;
  if (name == "shrt") return Algorithm::shrt;
  throw std::invalid_argument("unknown algorithm: " + name);
}

void TrialConfig::validate() const {
  if (n < 2) throw std::invalid_argument("TrialConfig: n must be at least 2");
  if (count < 1) throw std::invalid_argument("TrialConfig: K must be at least 1");
  if (!(kappa > 1.0)) throw std::invalid_argument("TrialConfig: kappa must exceed 1");
  if (!std::isfinite(snr_db)) throw std::invalid_argument("TrialConfig: snr_db must be finite");
  double previous = std::numeric_limits<double>::infinity();
  for (double t : thresholds) {
    if (!(t > 0.0) || !(t < previous)) {
      throw std::invalid_argument("TrialConfig: thresholds must be positive and decreasing");
    }
    previous = t;
  }
}

RunResult run_trials(const TrialConfig& cfg, int n_trials) {
  cfg.validate();
  if (n_trials < 1) throw std::invalid_argument("run_trials: need at least one trial");
  RunResult out;
  out.config = cfg;
  out.records.reserve(static_cast<size_t>(n_trials));
  for (int trial = 0; trial < n_trials; ++trial) {
    out.records.push_back(run_one_trial(cfg, trial));
  }
  return out;
}

std::string csv_header(const std::vector<double>& thresholds) {
  std::string header = "trial_id,algorithm,n,K,snr_db,kappa,seed,branch,t_end,err_S_final,err_Lambda_final,err_A_final";
  for (double t : thresholds) header += ",reach_" + threshold_label(t) + "_iter";
  for (double t : thresholds) header += ",reach_" + threshold_label(t);
  header += ",wall_ms";
  return header;
}

void write_csv(std::ostream& os, const std::vector<RunResult>& results, bool include_summary) {
  if (results.empty()) return;
  os << csv_header(results.front().config.thresholds) << "\n";
  for (const RunResult& result : results) {
    for (const ExperimentRecord& r : result.records) {
      os << r.trial_id << ',' << to_string(r.algorithm) << ',' << r.n << ',' << r.count << ','
         << fmt(r.snr_db) << ',' << fmt(r.kappa) << ',' << r.seed << ',' << r.branch << ','
         << r.t_end << ',' << fmt(r.err_s_final) << ',' << fmt(r.err_lambda_final) << ','
         << fmt(r.err_a_final);
      for (const ThresholdOutcome& o : r.reaches) os << ',' << o.iterations;
      for (const ThresholdOutcome& o : r.reaches) os << ',' << (o.reached ? 1 : 0);
      os << ',' << fmt(r.wall_ms) << "\n";
    }
  }
  if (!include_summary) return;
  for (const RunResult& result : results) {
    const auto& records = result.records;
    const double total = static_cast<double>(records.size());
    for (size_t ti = 0; ti < result.config.thresholds.size(); ++ti) {
      long successes = 0;
      double iter_sum = 0.0;
      double wall_sum = 0.0;
      for (const ExperimentRecord& r : records) {
        if (ti < r.reaches.size() && r.reaches[ti].reached) {
          ++successes;
          iter_sum += static_cast<double>(r.reaches[ti].iterations);
          wall_sum += r.reaches[ti].wall_ms;
        }
      }
      os << "#summary," << to_string(result.config.algorithm) << ',' << result.config.n << ','
         << result.config.count << ',' << fmt(result.config.snr_db) << ','
         << fmt(result.config.kappa) << ",threshold=" << threshold_label(result.config.thresholds[ti])
         << ",success_rate=" << fmt(total > 0 ? static_cast<double>(successes) / total : 0.0)
         << ",mean_iters=" << fmt(successes > 0 ? iter_sum / static_cast<double>(successes)
                                                : std::numeric_limits<double>::quiet_NaN())
         << ",mean_wall_ms=" << fmt(successes > 0 ? wall_sum / static_cast<double>(successes)
                                                  : std::numeric_limits<double>::quiet_NaN())
         << "\n";
    }
    double err_s_sum = 0.0;
    double err_lambda_sum = 0.0;
    double err_a_sum = 0.0;
    long ok = 0;
    for (const ExperimentRecord& r : records) {
      if (r.failed) continue;
      ++ok;
      err_s_sum += r.err_s_final;
      err_lambda_sum += r.err_lambda_final;
      err_a_sum += r.err_a_final;
    }
    os << "#summary," << to_string(result.config.algorithm) << ',' << result.config.n << ','
       << result.config.count << ',' << fmt(result.config.snr_db) << ','
       << fmt(result.config.kappa) << ",final,mean_err_S="
       << fmt(ok > 0 ? err_s_sum / static_cast<double>(ok) : std::numeric_limits<double>::quiet_NaN())
       << ",mean_err_Lambda=" << fmt(ok > 0 ? err_lambda_sum / static_cast<double>(ok)
                                            : std::numeric_limits<double>::quiet_NaN())
       << ",mean_err_A=" << fmt(ok > 0 ? err_a_sum / static_cast<double>(ok)
                                       : std::numeric_limits<double>::quiet_NaN())
       << ",failures=" << (records.size() - static_cast<size_t>(ok)) << "\n";
  }
}

void write_csv(std::ostream& os, const RunResult& result, bool include_summary) {
  write_csv(os, std::vector<RunResult>{result}, include_summary);
}

}  // namespace simdiag
