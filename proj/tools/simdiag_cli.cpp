// Command-line front end: solve a tuple from a file, benchmark one synthetic
// configuration, or sweep a grid of noise levels and condition numbers.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "simdiag/atds.hpp"
#include "simdiag/metrics.hpp"
#include "simdiag/runner.hpp"
#include "simdiag/shrt.hpp"
#include "simdiag/tuple_io.hpp"

namespace {

using namespace simdiag;

void print_matrix(std::ostream& os, const Matrix& m, const std::string& label) {
  os << label << ":\n";
  for (int i = 0; i < m.rows(); ++i) {
    os << "  ";
    for (int j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ' ';
      os << format_complex(m(i, j));
    }
    os << "\n";
  }
}

void print_lambdas(std::ostream& os, const std::vector<Vector>& lambdas) {
  for (size_t k = 0; k < lambdas.size(); ++k) {
    os << "lambda_" << (k + 1) << ":";
    for (int i = 0; i < lambdas[k].size(); ++i) os << ' ' << format_complex(lambdas[k](i));
    os << "\n";
  }
}

int run_solve(const std::string& input, const std::string& algorithm, const SolverConfig& solver,
              const std::string& out_path) {
  const MatrixTuple tuple = read_tuple_file(input);
  Matrix s;
  std::vector<Vector> lambdas;

  if (algorithm_from_string(algorithm) == Algorithm::atds) {
    CadzowConfig cfg;
    cfg.epsilon = solver.epsilon;
    cfg.t_max = solver.t_max;
    const AtdsOutcome outcome = atds_solve(tuple, cfg, solver.tol);
    std::cout << "algorithm: atds\n"
              << "branch: " << to_string(outcome.branch) << "\n"
              << "iterations: " << outcome.cadzow_trace.t_end << " ("
              << (outcome.cadzow_trace.reason == StopReason::converged ? "converged"
                                                                       : "iteration cap")
              << ")\n"
              << "final residual: " << outcome.cadzow_trace.residuals.back() << "\n"
              << "off objective: " << outcome.off_value << "\n"
              << "cond(S): " << outcome.cond_s << "\n"
              << "approximation error: " << outcome.approximation_error << "\n";
    if (outcome.pcd_index >= 0) std::cout << "fallback member: " << (outcome.pcd_index + 1) << "\n";
    s = outcome.s;
    lambdas = outcome.lambdas;
  } else {
    const int pairs = tuple.n() * (tuple.n() - 1) / 2;
    const int sweeps = solver.shrt_pair_cap / std::max(1, pairs) + 1;
    const auto [result, f_history] =
        shrt_run(tuple, sweeps, solver.shrt_rel_tol, {}, solver.shrt_pair_cap);
    std::cout << "algorithm: shrt\n"
              << "pair updates: " << (f_history.size() - 1) << "\n"
              << "off objective: " << result.off_value << "\n"
              << "cond(S): " << result.cond_s << "\n";
    s = result.s;
    lambdas = result.lambdas;
  }

  print_matrix(std::cout, s, "S");
  print_lambdas(std::cout, lambdas);

  if (!out_path.empty()) {
    write_tuple_file(out_path, MatrixTuple({s}));
    std::cout << "wrote S to " << out_path << "\n";
  }
  return 0;
}

void emit(const std::vector<RunResult>& results, const std::string& out_path) {
  if (out_path.empty()) {
    write_csv(std::cout, results);
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot open '" + out_path + "' for writing");
  write_csv(out, results);
  std::cout << "wrote " << out_path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate simultaneous diagonalization toolkit"};
  app.require_subcommand(1);

  SolverConfig solver;
  std::string algorithm = "atds";
  std::string out_path;

  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--epsilon", solver.epsilon, "residual threshold for the alternating projections");
    cmd->add_option("--t-max", solver.t_max, "iteration cap for the alternating projections");
    cmd->add_option("--tol", solver.tol, "membership/diagonalizability tolerance");
    cmd->add_option("--out", out_path, "output path");
  };

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "diagonalize a tuple read from a file");
  std::string input;
  solve_cmd->add_option("input", input, "tuple file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--algorithm", algorithm, "atds or shrt")
      ->check(CLI::IsMember({"atds", "shrt"}));
  add_solver_flags(solve_cmd);

  // bench / sweep share most flags
  TrialConfig trial;
  int trials = 100;
  std::vector<double> snr_list = {50.0};
  std::vector<double> kappa_list = {5.0};
  std::vector<std::string> algorithms = {"atds"};
  std::vector<double> thresholds = {1e-2, 1e-3, 1e-4};

  auto add_bench_flags = [&](CLI::App* cmd) {
    cmd->add_option("--n", trial.n, "matrix dimension");
    cmd->add_option("--k", trial.count, "tuple length");
    cmd->add_option("--trials", trials, "trials per configuration");
    cmd->add_option("--seed", trial.seed, "base RNG seed");
    cmd->add_option("--thresholds", thresholds, "error targets, comma separated")->delimiter(',');
    add_solver_flags(cmd);
  };

  auto* bench_cmd = app.add_subcommand("bench", "run one synthetic configuration");
  bench_cmd->add_option("--snr-db", snr_list, "signal-to-noise ratio in dB")->delimiter(',');
  bench_cmd->add_option("--kappa", kappa_list, "condition number of the planted diagonalizer")
      ->delimiter(',');
  bench_cmd->add_option("--algorithm", algorithms, "atds and/or shrt")->delimiter(',');
  add_bench_flags(bench_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "grid over SNR x kappa x algorithm");
  sweep_cmd->add_option("--snr-db", snr_list, "SNR list in dB, comma separated")->delimiter(',');
  sweep_cmd->add_option("--kappa", kappa_list, "kappa list, comma separated")->delimiter(',');
  sweep_cmd->add_option("--algorithm", algorithms, "algorithm list, comma separated")->delimiter(',');
  add_bench_flags(sweep_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) {
      return run_solve(input, algorithm, solver, out_path);
    }

    if (bench_cmd->parsed() && (snr_list.size() != 1 || kappa_list.size() != 1 || algorithms.size() != 1)) {
      std::cerr << "bench takes a single configuration; use sweep for grids\n";
      return 2;
    }

    std::vector<RunResult> results;
    for (const std::string& alg : algorithms) {
      for (double kappa : kappa_list) {
        for (double snr : snr_list) {
          TrialConfig cfg = trial;
          cfg.snr_db = snr;
          cfg.kappa = kappa;
          cfg.algorithm = algorithm_from_string(alg);
          cfg.thresholds = thresholds;
          cfg.solver = solver;
          results.push_back(run_trials(cfg, trials));
        }
      }
    }
    emit(results, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
