#include "kgroups/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace kgroups {

Eigen::MatrixXd confusion_matrix(const Partition& predicted,
                                 const Partition& truth) {
  if (predicted.size() != truth.size())
    throw std::invalid_argument("confusion_matrix: length mismatch");
  const int k = std::max(predicted.k, truth.k);
  Eigen::MatrixXd confusion = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < truth.size(); ++i)
    confusion(truth.labels[i], predicted.labels[i]) += 1.0;
  return confusion;
}

double max_assignment_value(const Eigen::MatrixXd& scores) {
  // Hungarian method with potentials on the negated matrix (minimization).
  const int n = static_cast<int>(scores.rows());
  if (scores.cols() != n)
    throw std::invalid_argument("max_assignment_value: matrix must be square");
  if (n == 0) return 0.0;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -scores(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  double total = 0.0;
  for (int j = 1; j <= n; ++j) total += scores(match[j] - 1, j - 1);
  return total;
}

double accuracy(const Partition& predicted, const Partition& truth) {
  const Eigen::MatrixXd confusion = confusion_matrix(predicted, truth);
  return max_assignment_value(confusion) / static_cast<double>(truth.size());
}

double adjusted_rand(const Partition& predicted, const Partition& truth) {
  const Eigen::MatrixXd confusion = confusion_matrix(predicted, truth);
  const auto pairs = [](double m) { return m * (m - 1.0) / 2.0; };

  double sum_cells = 0.0;
  for (Eigen::Index t = 0; t < confusion.rows(); ++t)
    for (Eigen::Index p = 0; p < confusion.cols(); ++p)
      sum_cells += pairs(confusion(t, p));
  double sum_rows = 0.0;
  for (Eigen::Index t = 0; t < confusion.rows(); ++t)
    sum_rows += pairs(confusion.row(t).sum());
  double sum_cols = 0.0;
  for (Eigen::Index p = 0; p < confusion.cols(); ++p)
    sum_cols += pairs(confusion.col(p).sum());

  const double total_pairs = pairs(confusion.sum());
  const double expected = sum_rows * sum_cols / total_pairs;
  const double maximum = 0.5 * (sum_rows + sum_cols);
  if (maximum == expected) return 1.0;  // both partitions degenerate-equal
  return (sum_cells - expected) / (maximum - expected);
}

MonteCarloSummary monte_carlo_summary(std::span<const double> values) {
  if (values.empty())
    throw std::invalid_argument("monte_carlo_summary: no trials");
  const double m = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= m;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  // Population standard deviation over the trials, divided by sqrt(m);
  // 0 for a single trial by construction.
  const double sem = std::sqrt(sq / m) / std::sqrt(m);
  return {mean, sem};
}

}  // namespace kgroups
