#include "kgroups/experiment.hpp"

#include <nlohmann/json.hpp>

#include <cassert>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "kgroups/exact1d.hpp"
#include "kgroups/spectral.hpp"

namespace kgroups {

Method parse_method(const std::string& name) {
  if (name == "kgroups") return Method::KGroups;
  if (name == "kkmeans" || name == "kernel-kmeans") return Method::KernelKMeans;
  if (name == "spectral") return Method::Spectral;
  if (name == "exact1d") return Method::Exact1D;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string method_name(Method method) {
  switch (method) {
    case Method::KGroups: return "kgroups";
    case Method::KernelKMeans: return "kkmeans";
    case Method::Spectral: return "spectral";
    case Method::Exact1D: return "exact1d";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  const int sources = (builtin.empty() ? 0 : 1) + (csv_path.empty() ? 0 : 1) +
                      (dermatology_path.empty() ? 0 : 1);
  if (sources != 1)
    throw std::invalid_argument(
        "experiment: exactly one dataset source (builtin, csv, dermatology) "
        "must be given");
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (method == Method::Exact1D) {
    if (k != 2) throw std::invalid_argument("exact1d: k is fixed at 2");
  } else if (k < 2) {
    throw std::invalid_argument("experiment: k must be >= 2");
  }
  if (!builtin.empty() && n < 1)
    throw std::invalid_argument("experiment: n must be >= 1");
}

namespace {

struct Dataset {
  Eigen::MatrixXd points;
  Partition truth;
  std::unique_ptr<GramMatrix> gram;  // absent for exact1d
};

void attach_gram(Dataset& data, const ExperimentConfig& config) {
  if (config.method == Method::Exact1D) return;
  KernelSpec kernel{config.semimetric, {}};
  data.gram = std::make_unique<GramMatrix>(gram_matrix(kernel, data.points));
}

Dataset fixed_dataset(const ExperimentConfig& config) {
  Dataset data;
  if (!config.dermatology_path.empty()) {
    CsvOptions options;
    options.has_header = false;
    options.missing_token = "?";
    const RawTable raw = load_csv(config.dermatology_path, options);
    DermatologyData derm = preprocess_dermatology(raw, config.drop_missing);
    data.points = std::move(derm.points);
    data.truth = std::move(derm.truth);
  } else {
    const RawTable raw = load_csv(config.csv_path, config.csv_options);
    if (!raw.labels)
      throw std::invalid_argument(
          "experiment: benchmark dataset needs a truth label column");
    data.points = raw.values;
    data.truth = labels_to_partition(*raw.labels);
  }
  attach_gram(data, config);
  return data;
}

Dataset synthetic_dataset(const ExperimentConfig& config, std::uint64_t seed) {
  Dataset data;
  LabeledDataset sample =
      sample_builtin(config.builtin, config.n, seed, config.builtin_params);
  data.points = std::move(sample.points);
  data.truth = std::move(sample.labels);
  attach_gram(data, config);
  return data;
}

TrialRecord score_trial(const ExperimentConfig& config, const Dataset& data,
                        int trial, std::uint64_t solver_seed) {
  TrialRecord record;
  record.trial = trial;
  record.seed = solver_seed;
  const auto start = std::chrono::steady_clock::now();

  Partition predicted;
  if (config.method == Method::Exact1D) {
    if (data.points.cols() != 1)
      throw std::invalid_argument("exact1d: dataset must be one-dimensional");
    const std::vector<double> values(data.points.data(),
                                     data.points.data() + data.points.rows());
    Exact1dResult result = solve_exact_2class(values);
    predicted = std::move(result.assignment);
    record.objective = -result.within;
    record.passes = 1;
  } else {
    SolverConfig solver = config.solver;
    solver.seed = solver_seed;
    const Eigen::VectorXd unit = Eigen::VectorXd::Ones(data.gram->size());
    ClusteringResult result;
    if (config.method == Method::Spectral)
      result = spectral_baseline(*data.gram, config.k, solver);
    else
      result = solve(*data.gram, unit, config.k, solver,
                     config.method == Method::KGroups
                         ? Algorithm::KGroups
                         : Algorithm::KernelKMeans);
    predicted = std::move(result.assignment);
    record.objective = result.objective;
    record.passes = result.passes;
  }

  record.accuracy = accuracy(predicted, data.truth);
  record.arand = adjusted_rand(predicted, data.truth);
  record.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return record;
}

void write_artifacts(const ExperimentConfig& config,
                     const ResultRecord& record) {
  const std::string trials_path = config.output_path + ".trials.csv";
  std::FILE* file = std::fopen(trials_path.c_str(), "w");
  if (!file)
    throw std::runtime_error("experiment: cannot open " + trials_path);
  std::fprintf(file, "trial,seed,accuracy,arand,objective,passes,seconds\n");
  for (const TrialRecord& t : record.trials)
    std::fprintf(file, "%d,%llu,%.17g,%.17g,%.17g,%d,%.6f\n", t.trial,
                 static_cast<unsigned long long>(t.seed), t.accuracy, t.arand,
                 t.objective, t.passes, t.seconds);
  std::fclose(file);

  nlohmann::json summary;
  summary["algorithm"] = method_name(config.method);
  summary["dataset"] = !config.builtin.empty()
                           ? config.builtin
                           : (!config.csv_path.empty() ? config.csv_path
                                                       : "dermatology");
  summary["trials"] = record.trials.size();
  summary["k"] = config.k;
  summary["seed"] = config.master_seed;
  summary["accuracy"] = {{"mean", record.accuracy_summary.mean},
                         {"sem", record.accuracy_summary.sem}};
  summary["arand"] = {{"mean", record.arand_summary.mean},
                      {"sem", record.arand_summary.sem}};
  std::ofstream json_file(config.output_path + ".summary.json");
  json_file << summary.dump(2) << "\n";
}

}  // namespace

ResultRecord run_experiment(const ExperimentConfig& config) {
  config.validate();
  const bool synthetic = !config.builtin.empty();

#ifndef NDEBUG
  const std::uint64_t grams_before =
      detail::gram_build_count.load(std::memory_order_relaxed);
#endif

  Dataset data;
  if (!synthetic) data = fixed_dataset(config);

  ResultRecord record;
  std::vector<double> accuracies, arands;
  for (int trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t trial_seed =
        derive_seed(config.master_seed, static_cast<std::uint64_t>(trial));
    if (synthetic)
      data = synthetic_dataset(config, derive_seed(trial_seed, 0));
    TrialRecord trial_record =
        score_trial(config, data, trial, derive_seed(trial_seed, 1));
    accuracies.push_back(trial_record.accuracy);
    arands.push_back(trial_record.arand);
    record.trials.push_back(trial_record);
  }
  record.accuracy_summary = monte_carlo_summary(accuracies);
  record.arand_summary = monte_carlo_summary(arands);

#ifndef NDEBUG
  {
    // One Gram per dataset; the spectral path additionally builds the
    // degree-scaled Gram (skipped by the unit-weight fallback) and the
    // embedding's linear Gram per trial.
    const std::uint64_t datasets =
        synthetic ? static_cast<std::uint64_t>(config.trials) : 1;
    const std::uint64_t built =
        detail::gram_build_count.load(std::memory_order_relaxed) -
        grams_before;
    const std::uint64_t trials = static_cast<std::uint64_t>(config.trials);
    if (config.method == Method::Spectral)
      assert(built >= datasets + trials && built <= datasets + 2 * trials);
    else if (config.method == Method::Exact1D)
      assert(built == 0);
    else
      assert(built == datasets);
  }
#endif
  if (!config.output_path.empty()) write_artifacts(config, record);
  return record;
}

}  // namespace kgroups
