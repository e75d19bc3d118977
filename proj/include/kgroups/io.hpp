#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgroups/energy.hpp"

namespace kgroups {

struct CsvOptions {
  bool has_header = true;
  std::string missing_token = "?";
  /// Column holding truth labels: a header name, or a 0-based index given as
  /// digits (usable without a header).
  std::optional<std::string> label_column;
};

struct RawTable {
  Eigen::MatrixXd values;  // NaN where missing
  std::vector<std::string> column_names;        // empty without a header
  std::vector<std::pair<int, int>> missing_cells;  // (row, column)
  std::optional<std::vector<double>> labels;    // extracted label column
};

/// Parses a rectangular comma-separated numeric file. Cells equal to the
/// missing token become NaN and are listed in missing_cells. Throws on
/// ragged rows, non-numeric cells, or an unknown label column.
RawTable load_csv(const std::string& path, const CsvOptions& options = {});

/// Maps raw label values (e.g. 1..6 class codes) to a Partition with labels
/// 0..k-1, ordered by sorted distinct value. Missing labels are rejected.
Partition labels_to_partition(const std::vector<double>& raw);

/// Writes points (and labels, when given) as CSV with a x0..x{D-1}[,label]
/// header. Values use 17 significant digits so a reload is bit-exact.
void write_dataset_csv(const std::string& path, const Eigen::MatrixXd& points,
                       const std::vector<int>* labels = nullptr);

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& matrix);

struct DermatologyData {
  Eigen::MatrixXd points;  // standardized attributes
  Partition truth;         // classes shifted to 0..5
};

/// Dermatology preprocessing: 34 attributes + class column, classes 1..6,
/// missing "?" entries in the age column. Either mean-imputes the missing
/// ages (default) or drops the incomplete rows, then standardizes every
/// column to zero mean and unit (population) variance; constant columns are
/// left at zero.
DermatologyData preprocess_dermatology(const RawTable& raw,
                                       bool drop_missing = false);

}  // namespace kgroups
