#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "kgroups/energy.hpp"
#include "kgroups/kernels.hpp"
#include "kgroups/rng.hpp"

namespace kgroups {

enum class InitStrategy { KMeansPlusPlus, Random, Provided };
enum class Algorithm { KGroups, KernelKMeans };

struct SolverConfig {
  int max_passes = 100;
  /// A move is accepted only if its objective gain exceeds this; 0 is the
  /// strict `delta Q > 0` rule, larger values guard against floating-point
  /// ping-pong.
  double move_tolerance = 0.0;
  int restarts = 5;
  std::uint64_t seed = 0;
  InitStrategy init = InitStrategy::KMeansPlusPlus;
  /// Initial labels for InitStrategy::Provided.
  std::vector<int> provided_labels;
};

struct ClusteringResult {
  Partition assignment;
  double objective = 0.0;  // final Q of the returned run
  int passes = 0;
  int moves = 0;
  bool converged = false;  // final pass made zero moves
};

/// Labels plus the incremental caches both solvers maintain:
///   s_j = sum of weights in cluster j
///   q_j = sum_{x,y in C_j} w(x) w(y) kappa(x,y)
///   Q   = sum_j q_j / s_j   (the objective being maximized)
struct ClusterState {
  Partition part;
  Eigen::VectorXd s;  // length k
  Eigen::VectorXd q;  // length k

  static ClusterState from_partition(Partition part, const GramMatrix& gram,
                                     const Eigen::VectorXd& weights);

  double objective() const;
  int cluster_count(int j) const { return counts[static_cast<std::size_t>(j)]; }

  /// Largest relative mismatch between the caches and a from-scratch
  /// recomputation (used by debug checks and tests).
  double cache_error(const GramMatrix& gram,
                     const Eigen::VectorXd& weights) const;

  // Maintained by the sweeps; exposed for them.
  std::vector<int> counts;
};

/// Cost of point i against cluster ell under the current labeling:
///   Q_ell(x_i) = sum_{y in C_ell} w_i w_y kappa(x_i, y)
/// Zero for an empty (transient) cluster. O(n).
double point_cost(const ClusterState& state, const GramMatrix& gram,
                  const Eigen::VectorXd& weights, int i, int ell);

/// Exact objective change from moving point i to cluster ell, in closed form.
/// Returns nullopt when the move is unavailable because it would empty the
/// source cluster (or drain its weight).
std::optional<double> delta_q(const ClusterState& state, const GramMatrix& gram,
                              const Eigen::VectorXd& weights, int i, int ell);

/// Called after each applied move with the updated state.
using MoveObserver =
    std::function<void(const ClusterState& state, int point, int from, int to)>;

/// One Hartigan pass in index order: each point moves to the cluster with the
/// largest delta Q if that gain exceeds config.move_tolerance. Returns the
/// number of accepted moves. The objective never decreases within a pass.
int kgroups_sweep(ClusterState& state, const GramMatrix& gram,
                  const Eigen::VectorXd& weights, const SolverConfig& config,
                  const MoveObserver& observer = {});

/// One Lloyd pass in index order: each point is reassigned to the cluster
/// minimizing J^(ell)(x_i) = q_ell / s_ell^2 - 2 Q_ell(x_i) / s_ell, with
/// caches updated incrementally. Moves that would empty a cluster are
/// skipped. Returns the number of accepted moves.
int kmeans_sweep(ClusterState& state, const GramMatrix& gram,
                 const Eigen::VectorXd& weights, const SolverConfig& config,
                 const MoveObserver& observer = {});

/// Initial labeling. KMeansPlusPlus seeds centers in feature space with
/// probability proportional to squared feature-space distance to the nearest
/// chosen center, then assigns points to the nearest center. Random draws
/// uniform labels until all k clusters are non-empty. Provided validates
/// caller labels.
Partition init_assignment(const GramMatrix& gram,
                          const Eigen::VectorXd& weights, int k,
                          InitStrategy strategy, Rng& rng,
                          const std::vector<int>* provided = nullptr);

/// Best of `config.restarts` independent runs (restart r is seeded with
/// derive_seed(config.seed, r)); each run sweeps until a pass makes no moves
/// or max_passes is reached. Ties in the final objective keep the first run.
ClusteringResult solve(const GramMatrix& gram, const Eigen::VectorXd& weights,
                       int k, const SolverConfig& config, Algorithm algorithm);

/// H = W^{1/2} Y with Y_ij = [x_i in C_j] / sqrt(s_j). Satisfies H >= 0,
/// H^T H = I and H H^T omega = omega with omega = W^{1/2} e (H H^T projects
/// onto span{H columns}, which contains the root-weight vector; it fixes
/// W e only under unit weights), and Tr[H^T W^{1/2} G W^{1/2} H] equals the
/// objective Q.
Eigen::MatrixXd build_h_matrix(const Partition& part,
                               const Eigen::VectorXd& weights);

/// Weighted kernel k-means objective
///   J = sum_j sum_{x in C_j} w(x) || phi(x) - phi(mu_j) ||^2
/// evaluated per point through kernel expansions. J + Q is constant across
/// partitions of a dataset, which ties the energy objective to Lloyd's.
double kernel_kmeans_objective_j(const Partition& part, const GramMatrix& gram,
                                 const Eigen::VectorXd& weights);

}  // namespace kgroups
