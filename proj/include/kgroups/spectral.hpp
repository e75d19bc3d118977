#pragma once

#include <Eigen/Dense>

#include "kgroups/cluster.hpp"
#include "kgroups/kernels.hpp"

namespace kgroups {

/// Top-k eigenpairs of G~ = W^{1/2} G W^{1/2}, eigenvalues descending.
/// Solves the trace maximization with only the orthonormality constraint
/// kept; sum of the eigenvalues upper-bounds the discrete objective Q of
/// every partition.
struct SpectralEmbedding {
  Eigen::MatrixXd u;            // n x k, orthonormal columns
  Eigen::VectorXd eigenvalues;  // length k, lambda_1 >= ... >= lambda_k
};

SpectralEmbedding relaxed_solution(const GramMatrix& gram,
                                   const Eigen::VectorXd& weights, int k);

/// Spectral pipeline: rows of the relaxed solution normalized to unit length
/// (zero rows left at zero), then clustered with classical k-means
/// (linear-kernel Lloyd, k-means++ seeding, best of config.restarts).
ClusteringResult spectral_cluster(const GramMatrix& gram,
                                  const Eigen::VectorXd& weights, int k,
                                  const SolverConfig& config);

/// The spectral-clustering baseline as benchmarked: the Gram matrix is read
/// as a graph affinity with vertex-degree node weights, so the embedding
/// diagonalizes W^{-1/2} G W^{-1/2} (the standard normalized-affinity
/// construction). Falls back to unit weights when a degree is nonpositive,
/// which can happen for indefinite kernels.
ClusteringResult spectral_baseline(const GramMatrix& gram, int k,
                                   const SolverConfig& config);

}  // namespace kgroups
