#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kgroups/cluster.hpp"
#include "kgroups/datagen.hpp"
#include "kgroups/eval.hpp"
#include "kgroups/io.hpp"
#include "kgroups/kernels.hpp"

namespace kgroups {

enum class Method { KGroups, KernelKMeans, Spectral, Exact1D };

Method parse_method(const std::string& name);
std::string method_name(Method method);

/// One benchmark: a dataset source, a kernel, a solver, and a Monte-Carlo
/// trial loop. Synthetic sources draw a fresh sample per trial; fixed
/// datasets (CSV / dermatology) reuse the data and vary the solver seed.
struct ExperimentConfig {
  // dataset source (exactly one)
  std::string builtin;  // name from builtin_names()
  int n = 200;          // builtin sample size
  BuiltinParams builtin_params;
  std::string csv_path;
  CsvOptions csv_options;
  std::string dermatology_path;
  bool drop_missing = false;

  SemimetricSpec semimetric = SemimetricSpec::alpha(1.0);
  Method method = Method::KGroups;
  int k = 2;  // forced to 2 for Exact1D
  SolverConfig solver;
  int trials = 1;
  std::uint64_t master_seed = 0;
  std::string output_path;  // artifact prefix; empty writes nothing

  void validate() const;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  double arand = 0.0;
  double objective = 0.0;  // Q for the solvers, -W* for exact1d
  int passes = 0;
  double seconds = 0.0;
};

struct ResultRecord {
  std::vector<TrialRecord> trials;
  MonteCarloSummary accuracy_summary;
  MonteCarloSummary arand_summary;
};

/// Runs the trial loop; builds one Gram per dataset; scores each trial's
/// best-of-restarts result against the truth labels. Writes
/// <output>.trials.csv and <output>.summary.json when an output path is set.
/// Seeds: trial_seed = derive_seed(master_seed, trial); the data and solver
/// streams are derive_seed(trial_seed, 0) and derive_seed(trial_seed, 1).
ResultRecord run_experiment(const ExperimentConfig& config);

}  // namespace kgroups
