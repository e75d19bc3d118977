#pragma once

#include <Eigen/Dense>

#include <span>

#include "kgroups/energy.hpp"

namespace kgroups {

/// Square contingency table of size max(k_pred, k_truth); entry (t, p)
/// counts points with truth label t and predicted label p.
Eigen::MatrixXd confusion_matrix(const Partition& predicted,
                                 const Partition& truth);

/// Fraction of correctly classified points under the best relabeling of the
/// predicted clusters (exact optimal assignment on the confusion matrix).
double accuracy(const Partition& predicted, const Partition& truth);

/// Adjusted Rand index from the contingency table; 1 iff the partitions are
/// identical up to relabeling, ~0 for independent labelings.
double adjusted_rand(const Partition& predicted, const Partition& truth);

struct MonteCarloSummary {
  double mean = 0.0;
  double sem = 0.0;  // sample standard error of the mean; 0 for a single trial
};

MonteCarloSummary monte_carlo_summary(std::span<const double> values);

/// Maximum-sum assignment of rows to columns of a square matrix (Hungarian
/// method, O(k^3)); exposed for the metric routines and their tests.
double max_assignment_value(const Eigen::MatrixXd& scores);

}  // namespace kgroups
