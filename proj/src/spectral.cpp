#include "kgroups/spectral.hpp"

#include <stdexcept>

namespace kgroups {

SpectralEmbedding relaxed_solution(const GramMatrix& gram,
                                   const Eigen::VectorXd& weights, int k) {
  const Eigen::Index n = gram.size();
  if (k < 1 || k > n)
    throw std::invalid_argument("relaxed_solution: need 1 <= k <= n");
  if (weights.size() != n)
    throw std::invalid_argument("relaxed_solution: weight count mismatch");

  const Eigen::VectorXd root = weights.array().sqrt();
  const Eigen::MatrixXd scaled =
      root.asDiagonal() * gram.matrix() * root.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(scaled);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("relaxed_solution: eigensolver failed");

  // Eigen returns eigenvalues ascending; take the trailing k, reversed.
  SpectralEmbedding embedding;
  embedding.u.resize(n, k);
  embedding.eigenvalues.resize(k);
  for (int c = 0; c < k; ++c) {
    embedding.u.col(c) = solver.eigenvectors().col(n - 1 - c);
    embedding.eigenvalues(c) = solver.eigenvalues()(n - 1 - c);
  }
  return embedding;
}

ClusteringResult spectral_cluster(const GramMatrix& gram,
                                  const Eigen::VectorXd& weights, int k,
                                  const SolverConfig& config) {
  const SpectralEmbedding embedding = relaxed_solution(gram, weights, k);

  Eigen::MatrixXd rows = embedding.u;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const double norm = rows.row(i).norm();
    if (norm > 0.0) rows.row(i) /= norm;
  }

  // Classical k-means on the normalized rows == kernel k-means with the
  // linear kernel of the embedding.
  GramMatrix linear(rows * rows.transpose());
  SolverConfig inner = config;
  inner.init = InitStrategy::KMeansPlusPlus;
  return solve(linear, Eigen::VectorXd::Ones(rows.rows()), k, inner,
               Algorithm::KernelKMeans);
}

ClusteringResult spectral_baseline(const GramMatrix& gram, int k,
                                   const SolverConfig& config) {
  const Eigen::VectorXd degrees = gram.matrix().rowwise().sum();
  if ((degrees.array() <= 0.0).any())
    return spectral_cluster(gram, Eigen::VectorXd::Ones(gram.size()), k,
                            config);
  // G' = W^{-1} G W^{-1} with vertex degrees as node weights; the embedding
  // then diagonalizes W^{1/2} G' W^{1/2} = W^{-1/2} G W^{-1/2}.
  const Eigen::VectorXd inverse = degrees.cwiseInverse();
  GramMatrix scaled(inverse.asDiagonal() * gram.matrix() *
                    inverse.asDiagonal());
  return spectral_cluster(scaled, degrees, k, config);
}

}  // namespace kgroups
