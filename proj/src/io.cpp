#include "kgroups/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace kgroups {

namespace {

std::string trim(const std::string& text) {
  std::size_t first = 0;
  std::size_t last = text.size();
  while (first < last && std::isspace(static_cast<unsigned char>(text[first])))
    ++first;
  while (last > first &&
         std::isspace(static_cast<unsigned char>(text[last - 1])))
    --last;
  return text.substr(first, last - first);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream stream(line);
  while (std::getline(stream, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool all_digits(const std::string& text) {
  return !text.empty() &&
         std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

double parse_cell(const std::string& cell, int row, int column) {
  try {
    std::size_t consumed = 0;
    const double value = std::stod(cell, &consumed);
    if (consumed != cell.size()) throw std::invalid_argument("trailing text");
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("load_csv: non-numeric cell '" + cell +
                                "' at row " + std::to_string(row) +
                                ", column " + std::to_string(column));
  }
}

}  // namespace

RawTable load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("load_csv: cannot open " + path);

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(file, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) throw std::runtime_error("load_csv: empty file " + path);

  RawTable table;
  std::size_t first_data_row = 0;
  if (options.has_header) {
    table.column_names = rows[0];
    first_data_row = 1;
    if (rows.size() == 1)
      throw std::runtime_error("load_csv: header but no data in " + path);
  }
  const std::size_t columns = rows[first_data_row].size();
  for (std::size_t r = first_data_row; r < rows.size(); ++r)
    if (rows[r].size() != columns)
      throw std::invalid_argument(
          "load_csv: ragged row " + std::to_string(r + 1) + " in " + path +
          " (" + std::to_string(rows[r].size()) + " cells, expected " +
          std::to_string(columns) + ")");
  if (options.has_header && table.column_names.size() != columns)
    throw std::invalid_argument("load_csv: header width mismatch in " + path);

  int label_index = -1;
  if (options.label_column) {
    const std::string& wanted = *options.label_column;
    if (options.has_header) {
      const auto it = std::find(table.column_names.begin(),
                                table.column_names.end(), wanted);
      if (it != table.column_names.end())
        label_index =
            static_cast<int>(std::distance(table.column_names.begin(), it));
    }
    if (label_index < 0 && all_digits(wanted)) label_index = std::stoi(wanted);
    if (label_index < 0 || label_index >= static_cast<int>(columns))
      throw std::invalid_argument("load_csv: label column '" + wanted +
                                  "' not found");
  }

  const std::size_t n = rows.size() - first_data_row;
  const std::size_t data_columns = label_index >= 0 ? columns - 1 : columns;
  table.values.resize(static_cast<Eigen::Index>(n),
                      static_cast<Eigen::Index>(data_columns));
  std::vector<double> labels;
  if (label_index >= 0) labels.reserve(n);

  for (std::size_t r = 0; r < n; ++r) {
    const auto& cells = rows[r + first_data_row];
    int out_column = 0;
    for (std::size_t c = 0; c < columns; ++c) {
      const std::string& cell = cells[c];
      const bool missing = cell == options.missing_token;
      if (static_cast<int>(c) == label_index) {
        if (missing)
          throw std::invalid_argument("load_csv: missing label at row " +
                                      std::to_string(r + 1));
        labels.push_back(parse_cell(cell, static_cast<int>(r),
                                    static_cast<int>(c)));
        continue;
      }
      if (missing) {
        table.values(static_cast<Eigen::Index>(r), out_column) =
            std::numeric_limits<double>::quiet_NaN();
        table.missing_cells.emplace_back(static_cast<int>(r), out_column);
      } else {
        table.values(static_cast<Eigen::Index>(r), out_column) =
            parse_cell(cell, static_cast<int>(r), static_cast<int>(c));
      }
      ++out_column;
    }
  }
  if (label_index >= 0) {
    if (options.has_header)
      table.column_names.erase(table.column_names.begin() + label_index);
    table.labels = std::move(labels);
  }
  return table;
}

Partition labels_to_partition(const std::vector<double>& raw) {
  if (raw.empty())
    throw std::invalid_argument("labels_to_partition: no labels");
  std::map<double, int> mapping;
  for (double value : raw) {
    if (std::isnan(value))
      throw std::invalid_argument("labels_to_partition: missing label");
    mapping.emplace(value, 0);
  }
  int next = 0;
  for (auto& [value, code] : mapping) code = next++;
  std::vector<int> labels;
  labels.reserve(raw.size());
  for (double value : raw) labels.push_back(mapping[value]);
  return Partition(std::move(labels), next);
}

void write_dataset_csv(const std::string& path, const Eigen::MatrixXd& points,
                       const std::vector<int>* labels) {
  std::FILE* file = std::fopen(path.c_str(), "w");
  if (!file)
    throw std::runtime_error("write_dataset_csv: cannot open " + path);
  for (Eigen::Index d = 0; d < points.cols(); ++d)
    std::fprintf(file, d == 0 ? "x%d" : ",x%d", static_cast<int>(d));
  if (labels) std::fprintf(file, ",label");
  std::fprintf(file, "\n");
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index d = 0; d < points.cols(); ++d)
      std::fprintf(file, d == 0 ? "%.17g" : ",%.17g", points(i, d));
    if (labels) std::fprintf(file, ",%d", (*labels)[static_cast<std::size_t>(i)]);
    std::fprintf(file, "\n");
  }
  std::fclose(file);
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& matrix) {
  std::FILE* file = std::fopen(path.c_str(), "w");
  if (!file) throw std::runtime_error("write_matrix_csv: cannot open " + path);
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j)
      std::fprintf(file, j == 0 ? "%.17g" : ",%.17g", matrix(i, j));
    std::fprintf(file, "\n");
  }
  std::fclose(file);
}

DermatologyData preprocess_dermatology(const RawTable& raw,
                                       bool drop_missing) {
  Eigen::MatrixXd values = raw.values;
  std::vector<double> classes;
  if (raw.labels) {
    classes = *raw.labels;
  } else if (values.cols() == 35) {
    // Class column attached as the last attribute.
    classes.resize(static_cast<std::size_t>(values.rows()));
    for (Eigen::Index i = 0; i < values.rows(); ++i)
      classes[static_cast<std::size_t>(i)] = values(i, 34);
    values = values.leftCols(34).eval();
  }
  if (values.cols() != 34 || classes.empty())
    throw std::invalid_argument(
        "preprocess_dermatology: expected 34 attributes plus a class column");
  for (double c : classes)
    if (!(c >= 1.0 && c <= 6.0))
      throw std::invalid_argument(
          "preprocess_dermatology: class outside 1..6");

  if (drop_missing) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < values.rows(); ++i)
      if (!values.row(i).hasNaN()) keep.push_back(i);
    Eigen::MatrixXd kept(static_cast<Eigen::Index>(keep.size()), values.cols());
    std::vector<double> kept_classes;
    kept_classes.reserve(keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r) {
      kept.row(static_cast<Eigen::Index>(r)) = values.row(keep[r]);
      kept_classes.push_back(classes[static_cast<std::size_t>(keep[r])]);
    }
    values = std::move(kept);
    classes = std::move(kept_classes);
  } else {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      double sum = 0.0;
      Eigen::Index present = 0;
      for (Eigen::Index i = 0; i < values.rows(); ++i)
        if (!std::isnan(values(i, c))) {
          sum += values(i, c);
          ++present;
        }
      if (present == 0)
        throw std::invalid_argument(
            "preprocess_dermatology: column with no observed values");
      const double mean = sum / static_cast<double>(present);
      for (Eigen::Index i = 0; i < values.rows(); ++i)
        if (std::isnan(values(i, c))) values(i, c) = mean;
    }
  }

  const double n = static_cast<double>(values.rows());
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    const double mean = values.col(c).mean();
    values.col(c).array() -= mean;
    const double variance = values.col(c).squaredNorm() / n;
    if (variance > 0.0)
      values.col(c) /= std::sqrt(variance);
    else
      values.col(c).setZero();
  }

  return {std::move(values), labels_to_partition(classes)};
}

}  // namespace kgroups
