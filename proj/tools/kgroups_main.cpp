// Command-line front end: generate synthetic datasets, build Gram matrices,
// cluster a dataset once, or run a Monte-Carlo benchmark.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "kgroups/cluster.hpp"
#include "kgroups/datagen.hpp"
#include "kgroups/eval.hpp"
#include "kgroups/exact1d.hpp"
#include "kgroups/experiment.hpp"
#include "kgroups/io.hpp"
#include "kgroups/kernels.hpp"
#include "kgroups/spectral.hpp"

namespace {

using namespace kgroups;

struct KernelFlags {
  std::string kernel = "alpha";
  double param = 1.0;

  SemimetricSpec spec() const {
    if (kernel == "alpha") return SemimetricSpec::alpha(param);
    if (kernel == "expabs") return SemimetricSpec::exp_abs(param);
    if (kernel == "expsquare") return SemimetricSpec::exp_square(param);
    throw CLI::ValidationError("--kernel", "unknown kernel: " + kernel);
  }
};

void add_kernel_flags(CLI::App* cmd, KernelFlags& flags) {
  cmd->add_option("--kernel", flags.kernel, "Semimetric family")
      ->check(CLI::IsMember({"alpha", "expabs", "expsquare"}))
      ->capture_default_str();
  cmd->add_option("--param", flags.param,
                  "Family parameter (alpha or sigma)")
      ->capture_default_str();
}

struct SolverFlags {
  int restarts = 5;
  std::uint64_t seed = 0;
  std::string init = "kmeanspp";
  int max_passes = 100;
  double tolerance = 0.0;

  SolverConfig config() const {
    SolverConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.max_passes = max_passes;
    cfg.move_tolerance = tolerance;
    cfg.init = init == "random" ? InitStrategy::Random
                                : InitStrategy::KMeansPlusPlus;
    return cfg;
  }
};

void add_solver_flags(CLI::App* cmd, SolverFlags& flags) {
  cmd->add_option("--restarts", flags.restarts, "Independent restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", flags.seed, "Master seed")->capture_default_str();
  cmd->add_option("--init", flags.init, "Initialization strategy")
      ->check(CLI::IsMember({"kmeanspp", "random"}))
      ->capture_default_str();
  cmd->add_option("--max-passes", flags.max_passes, "Pass limit per run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--tolerance", flags.tolerance,
                  "Minimum objective gain to accept a move")
      ->capture_default_str();
}

BuiltinParams builtin_params(int dim, int m, const std::string& convention) {
  BuiltinParams params;
  params.dimension = dim;
  params.m = m;
  params.convention = convention == "variance" ? VarianceConvention::Variance
                                               : VarianceConvention::StdDev;
  return params;
}

Eigen::MatrixXd load_points(const std::string& path, bool no_header,
                            const std::string& missing,
                            const std::optional<std::string>& label_column,
                            std::optional<Partition>& truth) {
  CsvOptions options;
  options.has_header = !no_header;
  options.missing_token = missing;
  options.label_column = label_column;
  RawTable table = load_csv(path, options);
  if (!table.labels && options.has_header && !label_column) {
    // Fall back to a column literally named "label" when present.
    for (const auto& name : table.column_names)
      if (name == "label") {
        options.label_column = "label";
        table = load_csv(path, options);
        break;
      }
  }
  if (table.labels) truth = labels_to_partition(*table.labels);
  if (!table.missing_cells.empty())
    throw std::runtime_error("dataset has missing cells; clustering needs "
                             "complete rows");
  return table.values;
}

// Flat key=value config file, one option per line, '#' comments. Returned as
// --key=value tokens so command-line flags given after them take precedence.
std::vector<std::string> config_file_args(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open config file " + path);
  std::vector<std::string> args;
  std::string line;
  int line_number = 0;
  while (std::getline(file, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto equals = line.find('=', first);
    if (equals == std::string::npos)
      throw std::invalid_argument("config file " + path + " line " +
                                  std::to_string(line_number) +
                                  ": expected key=value");
    const auto strip = [](std::string text) {
      const auto begin = text.find_first_not_of(" \t\r");
      const auto end = text.find_last_not_of(" \t\r");
      return begin == std::string::npos
                 ? std::string{}
                 : text.substr(begin, end - begin + 1);
    };
    args.push_back("--" + strip(line.substr(first, equals - first)) + "=" +
                   strip(line.substr(equals + 1)));
  }
  return args;
}

void write_labels(const std::string& output, const std::string& format,
                  const std::vector<int>& labels, double objective) {
  if (format == "json") {
    nlohmann::json doc;
    doc["labels"] = labels;
    doc["objective"] = objective;
    if (output.empty()) {
      std::cout << doc.dump(2) << "\n";
    } else {
      std::ofstream file(output);
      file << doc.dump(2) << "\n";
    }
    return;
  }
  std::FILE* file = output.empty() ? stdout : std::fopen(output.c_str(), "w");
  if (!file) throw std::runtime_error("cannot open " + output);
  std::fprintf(file, "index,label\n");
  for (std::size_t i = 0; i < labels.size(); ++i)
    std::fprintf(file, "%zu,%d\n", i, labels[i]);
  if (!output.empty()) std::fclose(file);
}

int run(int argc, char** argv) {
  CLI::App app{"Energy-statistics clustering in kernel spaces", "kgroups"};
  app.require_subcommand(1);

  // --- generate ---
  auto* generate = app.add_subcommand(
      "generate", "Sample a builtin synthetic dataset and emit CSV");
  std::string gen_name;
  int gen_n = 800, gen_dim = 10, gen_m = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_convention = "stddev", gen_output;
  generate->add_option("--name", gen_name, "Builtin dataset")
      ->required()
      ->check(CLI::IsMember(builtin_names()));
  generate->add_option("--n", gen_n, "Sample size")->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--seed", gen_seed, "Seed")->capture_default_str();
  generate->add_option("--dim", gen_dim, "Dimension (gauss1/gauss2)")
      ->capture_default_str();
  generate->add_option("--m", gen_m, "Unbalance parameter (unbalanced)")
      ->capture_default_str();
  generate->add_option("--convention,--variance-convention", gen_convention,
                       "Reading of N(a,b) in the 1-D specs")
      ->check(CLI::IsMember({"stddev", "variance"}))
      ->capture_default_str();
  generate->add_option("--output", gen_output, "Output CSV (default stdout)");

  // --- cluster ---
  auto* cluster = app.add_subcommand(
      "cluster", "Cluster one dataset with one algorithm");
  std::string cl_input, cl_missing = "?", cl_algorithm = "kgroups";
  std::string cl_output, cl_format = "csv";
  std::optional<std::string> cl_label_column;
  bool cl_no_header = false;
  int cl_k = 0;
  KernelFlags cl_kernel;
  SolverFlags cl_solver;
  cluster->add_option("--input", cl_input, "Dataset CSV")->required();
  cluster->add_option("--k", cl_k, "Number of clusters")->required();
  cluster->add_option("--algorithm", cl_algorithm, "Solver")
      ->check(CLI::IsMember({"kgroups", "kkmeans", "spectral"}))
      ->capture_default_str();
  cluster->add_option("--label-column", cl_label_column,
                      "Truth label column (name or 0-based index)");
  cluster->add_flag("--no-header", cl_no_header, "Input has no header row");
  cluster->add_option("--missing", cl_missing, "Missing-value token")
      ->capture_default_str();
  cluster->add_option("--output", cl_output, "Labels output (default stdout)");
  cluster->add_option("--format", cl_format, "Label output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  add_kernel_flags(cluster, cl_kernel);
  add_solver_flags(cluster, cl_solver);

  // --- benchmark ---
  auto* benchmark = app.add_subcommand(
      "benchmark", "Monte-Carlo benchmark over trials");
  benchmark->option_defaults()->multi_option_policy(
      CLI::MultiOptionPolicy::TakeLast);
  std::string bm_config;
  benchmark->add_option("--config", bm_config,
                        "Flat key=value config file (same keys as the flags; "
                        "flags override the file)");
  std::string bm_name, bm_input, bm_dermatology, bm_algorithm = "kgroups";
  std::string bm_missing = "?", bm_convention = "stddev", bm_output;
  std::optional<std::string> bm_label_column;
  bool bm_no_header = false, bm_drop_missing = false;
  int bm_k = 2, bm_n = 200, bm_dim = 10, bm_m = 0, bm_trials = 10;
  KernelFlags bm_kernel;
  SolverFlags bm_solver;
  benchmark->add_option("--name", bm_name, "Builtin dataset")
      ->check(CLI::IsMember(builtin_names()));
  benchmark->add_option("--input", bm_input, "Fixed dataset CSV");
  benchmark->add_option("--dermatology", bm_dermatology,
                        "UCI dermatology file (34 attributes + class)");
  benchmark->add_flag("--drop-missing", bm_drop_missing,
                      "Drop incomplete dermatology rows instead of imputing");
  benchmark->add_option("--label-column", bm_label_column,
                        "Truth label column for --input");
  benchmark->add_flag("--no-header", bm_no_header, "CSV has no header row");
  benchmark->add_option("--missing", bm_missing, "Missing-value token")
      ->capture_default_str();
  benchmark->add_option("--algorithm", bm_algorithm, "Solver")
      ->check(CLI::IsMember({"kgroups", "kkmeans", "spectral", "exact1d"}))
      ->capture_default_str();
  benchmark->add_option("--k", bm_k, "Number of clusters")->capture_default_str();
  benchmark->add_option("--n", bm_n, "Sample size per trial (builtin)")
      ->capture_default_str();
  benchmark->add_option("--dim", bm_dim, "Dimension (gauss1/gauss2)")
      ->capture_default_str();
  benchmark->add_option("--m", bm_m, "Unbalance parameter")->capture_default_str();
  benchmark->add_option("--convention,--variance-convention", bm_convention,
                        "Reading of N(a,b) in the 1-D specs")
      ->check(CLI::IsMember({"stddev", "variance"}))
      ->capture_default_str();
  benchmark->add_option("--trials", bm_trials, "Monte-Carlo trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  benchmark->add_option("--output", bm_output,
                        "Artifact prefix (.trials.csv, .summary.json)");
  add_kernel_flags(benchmark, bm_kernel);
  add_solver_flags(benchmark, bm_solver);

  // --- exact1d ---
  auto* exact = app.add_subcommand(
      "exact1d", "Deterministic two-class solver for 1-D data");
  std::string ex_input, ex_output, ex_format = "csv";
  std::optional<std::string> ex_label_column;
  bool ex_no_header = false;
  exact->add_option("--input", ex_input, "Single-column CSV")->required();
  exact->add_flag("--no-header", ex_no_header, "Input has no header row");
  exact->add_option("--label-column", ex_label_column,
                    "Truth label column (name or 0-based index)");
  exact->add_option("--output", ex_output, "Labels output (default stdout)");
  exact->add_option("--format", ex_format, "Label output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // --- gram ---
  auto* gram_cmd = app.add_subcommand("gram", "Emit the Gram matrix as CSV");
  std::string gr_input, gr_name, gr_output, gr_convention = "stddev";
  bool gr_no_header = false;
  std::optional<std::string> gr_label_column;
  int gr_n = 100, gr_dim = 10, gr_m = 0;
  std::uint64_t gr_seed = 0;
  KernelFlags gr_kernel;
  gram_cmd->add_option("--input", gr_input, "Dataset CSV");
  gram_cmd->add_option("--name", gr_name, "Builtin dataset")
      ->check(CLI::IsMember(builtin_names()));
  gram_cmd->add_option("--n", gr_n, "Sample size (builtin)")->capture_default_str();
  gram_cmd->add_option("--dim", gr_dim, "Dimension")->capture_default_str();
  gram_cmd->add_option("--m", gr_m, "Unbalance parameter")->capture_default_str();
  gram_cmd->add_option("--seed", gr_seed, "Seed (builtin)")->capture_default_str();
  gram_cmd->add_option("--convention,--variance-convention", gr_convention, "1-D spec convention")
      ->check(CLI::IsMember({"stddev", "variance"}));
  gram_cmd->add_flag("--no-header", gr_no_header, "CSV has no header row");
  gram_cmd->add_option("--label-column", gr_label_column,
                       "Label column to strip");
  gram_cmd->add_option("--output", gr_output, "Output CSV (required)")
      ->required();
  add_kernel_flags(gram_cmd, gr_kernel);

  std::vector<std::string> args(argv + 1, argv + argc);
  if (!args.empty() && args[0] == "benchmark") {
    std::string config_path;
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size())
        config_path = args[i + 1];
      else if (args[i].rfind("--config=", 0) == 0)
        config_path = args[i].substr(9);
    }
    if (!config_path.empty()) {
      std::vector<std::string> merged{"benchmark"};
      for (std::string& token : config_file_args(config_path))
        merged.push_back(std::move(token));
      merged.insert(merged.end(), args.begin() + 1, args.end());
      args = std::move(merged);
    }
  }

  try {
    std::reverse(args.begin(), args.end());  // CLI11 consumes back-to-front
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (generate->parsed()) {
    const LabeledDataset dataset = sample_builtin(
        gen_name, gen_n, gen_seed,
        builtin_params(gen_dim, gen_m, gen_convention));
    if (gen_output.empty()) {
      // stdout path: same format as write_dataset_csv
      for (Eigen::Index d = 0; d < dataset.points.cols(); ++d)
        std::printf(d == 0 ? "x%d" : ",x%d", static_cast<int>(d));
      std::printf(",label\n");
      for (Eigen::Index i = 0; i < dataset.points.rows(); ++i) {
        for (Eigen::Index d = 0; d < dataset.points.cols(); ++d)
          std::printf(d == 0 ? "%.17g" : ",%.17g", dataset.points(i, d));
        std::printf(",%d\n", dataset.labels.labels[static_cast<std::size_t>(i)]);
      }
    } else {
      write_dataset_csv(gen_output, dataset.points, &dataset.labels.labels);
      std::fprintf(stderr, "wrote %ld points to %s\n",
                   static_cast<long>(dataset.points.rows()), gen_output.c_str());
    }
    return 0;
  }

  if (cluster->parsed()) {
    if (cl_k < 2) throw CLI::ValidationError("--k", "k must be >= 2");
    std::optional<Partition> truth;
    const Eigen::MatrixXd points =
        load_points(cl_input, cl_no_header, cl_missing, cl_label_column, truth);
    const KernelSpec kernel{cl_kernel.spec(), {}};
    const GramMatrix gram = gram_matrix(kernel, points);
    const Eigen::VectorXd unit = Eigen::VectorXd::Ones(gram.size());
    const SolverConfig solver_cfg = cl_solver.config();
    const ClusteringResult result =
        cl_algorithm == "spectral"
            ? spectral_baseline(gram, cl_k, solver_cfg)
            : solve(gram, unit, cl_k, solver_cfg,
                    cl_algorithm == "kgroups" ? Algorithm::KGroups
                                              : Algorithm::KernelKMeans);
    write_labels(cl_output, cl_format, result.assignment.labels,
                 result.objective);
    std::fprintf(stderr, "objective %.12g, passes %d, converged %s\n",
                 result.objective, result.passes,
                 result.converged ? "yes" : "no");
    if (truth) {
      std::fprintf(stderr, "accuracy %.6f, arand %.6f\n",
                   accuracy(result.assignment, *truth),
                   adjusted_rand(result.assignment, *truth));
    }
    return 0;
  }

  if (benchmark->parsed()) {
    ExperimentConfig config;
    config.builtin = bm_name;
    config.n = bm_n;
    config.builtin_params = builtin_params(bm_dim, bm_m, bm_convention);
    config.csv_path = bm_input;
    config.csv_options.has_header = !bm_no_header;
    config.csv_options.missing_token = bm_missing;
    config.csv_options.label_column = bm_label_column;
    config.dermatology_path = bm_dermatology;
    config.drop_missing = bm_drop_missing;
    config.semimetric = bm_kernel.spec();
    config.method = parse_method(bm_algorithm);
    config.k = config.method == Method::Exact1D ? 2 : bm_k;
    config.solver = bm_solver.config();
    config.trials = bm_trials;
    config.master_seed = bm_solver.seed;
    config.output_path = bm_output;

    const ResultRecord record = run_experiment(config);
    std::printf("dataset=%s algorithm=%s trials=%d\n",
                !bm_name.empty() ? bm_name.c_str()
                                 : (!bm_input.empty() ? bm_input.c_str()
                                                      : "dermatology"),
                bm_algorithm.c_str(), bm_trials);
    std::printf("accuracy mean %.6f sem %.6f\n", record.accuracy_summary.mean,
                record.accuracy_summary.sem);
    std::printf("arand    mean %.6f sem %.6f\n", record.arand_summary.mean,
                record.arand_summary.sem);
    return 0;
  }

  if (exact->parsed()) {
    std::optional<Partition> truth;
    const Eigen::MatrixXd points =
        load_points(ex_input, ex_no_header, "?", ex_label_column, truth);
    if (points.cols() != 1)
      throw CLI::ValidationError("--input", "exact1d needs 1-D data");
    const std::vector<double> values(points.data(),
                                     points.data() + points.rows());
    const Exact1dResult result = solve_exact_2class(values);
    write_labels(ex_output, ex_format, result.assignment.labels,
                 -result.within);
    std::fprintf(stderr, "split %d, W %.12g\n", result.split_index,
                 result.within);
    if (truth)
      std::fprintf(stderr, "accuracy %.6f\n",
                   accuracy(result.assignment, *truth));
    return 0;
  }

  if (gram_cmd->parsed()) {
    Eigen::MatrixXd points;
    if (!gr_name.empty()) {
      points = sample_builtin(gr_name, gr_n, gr_seed,
                              builtin_params(gr_dim, gr_m, gr_convention))
                   .points;
    } else if (!gr_input.empty()) {
      std::optional<Partition> truth;
      points = load_points(gr_input, gr_no_header, "?", gr_label_column, truth);
    } else {
      throw CLI::ValidationError("gram", "need --input or --name");
    }
    const GramMatrix gram = gram_matrix(KernelSpec{gr_kernel.spec(), {}}, points);
    write_matrix_csv(gr_output, gram.matrix());
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
