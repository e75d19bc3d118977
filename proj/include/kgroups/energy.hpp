#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "kgroups/kernels.hpp"

namespace kgroups {

/// Points with strictly positive per-point weights.
struct WeightedSample {
  Eigen::MatrixXd points;   // n x D
  Eigen::VectorXd weights;  // length n, all > 0
  double total_weight = 0.0;

  static WeightedSample make(Eigen::MatrixXd points, Eigen::VectorXd weights);
  static WeightedSample unit_weights(Eigen::MatrixXd points);
};

/// Cluster labeling: labels[i] in [0, k). Clusters are non-empty except
/// transiently inside solvers.
struct Partition {
  std::vector<int> labels;
  int k = 0;

  Partition() = default;
  Partition(std::vector<int> labels, int k);

  int size() const { return static_cast<int>(labels.size()); }
  std::vector<int> cluster_counts() const;
  /// Throws unless every label is in range and every cluster is non-empty.
  void validate() const;
};

/// Sum of `values` by recursive halving; error grows like O(log n) rather
/// than O(n) ulps, which matters for the n^2-term dispersion sums.
double pairwise_sum(std::span<const double> values);

/// Unweighted two-sample energy statistic
///   2 g(X,Y) - g(X,X) - g(Y,Y),  g(A,B) = mean of rho(a,b) over pairs.
/// Nonnegative for semimetrics of negative type; zero iff equal samples in
/// the population limit.
double energy_distance(const Eigen::MatrixXd& sample_x,
                       const Eigen::MatrixXd& sample_y,
                       const SemimetricSpec& spec);

/// Weighted between/within dispersion of cluster pairs:
///   g(C_i, C_j) = (1 / s_i s_j) sum_{x in C_i} sum_{y in C_j} w(x) w(y) rho(x,y)
/// `rho` holds pairwise semimetric values for the full sample.
double g_dispersion(const WeightedSample& sample, const Partition& part,
                    int cluster_i, int cluster_j, const Eigen::MatrixXd& rho);

/// W = sum_j (s_j / 2) g(C_j, C_j)
double within_dispersion(const WeightedSample& sample, const Partition& part,
                         const Eigen::MatrixXd& rho);

/// S = sum_{i<j} (s_i s_j / 2s) [2 g(C_i,C_j) - g(C_i,C_i) - g(C_j,C_j)]
double between_statistic(const WeightedSample& sample, const Partition& part,
                         const Eigen::MatrixXd& rho);

/// S + W - (s/2) g(X,X); identically zero in exact arithmetic for every
/// partition, which makes maximizing S the same problem as minimizing W.
double lemma1_residual(const WeightedSample& sample, const Partition& part,
                       const Eigen::MatrixXd& rho);

}  // namespace kgroups
