#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "simdiag/cadzow.hpp"
#include "simdiag/matrix_tuple.hpp"

namespace simdiag {

enum class Algorithm { atds, shrt };

const char* to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& name);

struct SolverConfig {
  double epsilon = 1e-6;       // alternating-projection stopping threshold
  int t_max = 20000;           // alternating-projection iteration cap
  double tol = 1e-8;           // membership/diagonalizability tolerance
  double shrt_rel_tol = 1e-6;  // relative objective-change stop for the sweeps
  int shrt_pair_cap = 20000;   // pair-update cap for the sweeps
};

struct TrialConfig {
  int n = 5;
  int count = 20;  // tuple length K
  double snr_db = 50.0;
  double kappa = 5.0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::atds;
  // Relative diagonalizer-error targets, positive and decreasing.  An empty
  // list disables per-iteration tracking (final errors only).
  std::vector<double> thresholds = {1e-2, 1e-3, 1e-4};
  SolverConfig solver;

  void validate() const;
};

struct ThresholdOutcome {
  double threshold = 0.0;
  bool reached = false;
  long iterations = -1;  // first iterate t with err_S(t) <= threshold
  double wall_ms = std::numeric_limits<double>::quiet_NaN();
};

struct ExperimentRecord {
  int trial_id = 0;
  Algorithm algorithm = Algorithm::atds;
  int n = 0;
  int count = 0;
  double snr_db = 0.0;
  double kappa = 0.0;
  std::uint64_t seed = 0;  // the derived per-trial seed
  std::string branch = "-";
  long t_end = 0;
  double err_s_final = std::numeric_limits<double>::quiet_NaN();
  double err_lambda_final = std::numeric_limits<double>::quiet_NaN();
  double err_a_final = std::numeric_limits<double>::quiet_NaN();
  std::vector<ThresholdOutcome> reaches;
  double wall_ms = 0.0;  // solver time, scoring excluded
  bool failed = false;
  std::string failure;
  // Alternating-projection residual history (empty for the sweep baseline);
  // kept for diagnostics, never serialized.
  std::vector<double> cadzow_residuals;
};

struct RunResult {
  TrialConfig config;
  std::vector<ExperimentRecord> records;
};

// Runs n_trials independent seeded trials of one configuration.  Individual
// trial failures are recorded on the trial, never abort the batch.
RunResult run_trials(const TrialConfig& cfg, int n_trials);

// One row per trial, plus "#summary" aggregate rows (success rate and mean
// iterations / wall time over successful trials per threshold).  Identical
// configurations produce identical output except for the wall-time columns.
void write_csv(std::ostream& os, const std::vector<RunResult>& results, bool include_summary = true);
void write_csv(std::ostream& os, const RunResult& result, bool include_summary = true);

std::string csv_header(const std::vector<double>& thresholds);

}  // namespace simdiag
