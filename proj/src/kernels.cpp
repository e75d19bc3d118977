#include "kgroups/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kgroups {

namespace detail {
std::atomic<std::uint64_t> gram_build_count{0};
}

SemimetricSpec::SemimetricSpec(SemimetricFamily family, double parameter)
    : family(family), parameter(parameter) {
  switch (family) {
    case SemimetricFamily::Alpha:
      if (!(parameter > 0.0) || !(parameter <= 2.0))
        throw std::invalid_argument(
            "SemimetricSpec: alpha must satisfy 0 < alpha <= 2, got " +
            std::to_string(parameter));
      break;
    case SemimetricFamily::ExpAbs:
    case SemimetricFamily::ExpSquare:
      if (!(parameter > 0.0))
        throw std::invalid_argument(
            "SemimetricSpec: sigma must be positive, got " +
            std::to_string(parameter));
      break;
  }
}

GramMatrix::GramMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols())
    throw std::invalid_argument("GramMatrix: matrix must be square");
  detail::gram_build_count.fetch_add(1, std::memory_order_relaxed);
}

namespace {

double euclidean_distance(const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& y) {
  return (x - y).norm();  // stable sum of squares + sqrt (hypot-style scaling
                          // is unnecessary at data scale, Eigen uses blocked
                          // squared sums in double)
}

double rho_of_distance(const SemimetricSpec& spec, double dist) {
  switch (spec.family) {
    case SemimetricFamily::Alpha:
      return std::pow(dist, spec.parameter);
    case SemimetricFamily::ExpAbs:
      return 2.0 - 2.0 * std::exp(-dist / (2.0 * spec.parameter));
    case SemimetricFamily::ExpSquare:
      return 2.0 -
             2.0 * std::exp(-(dist * dist) /
                            (2.0 * spec.parameter * spec.parameter));
  }
  return 0.0;  // unreachable
}

void require_same_dim(const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& y,
                      const char* where) {
  if (x.size() != y.size())
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
}

}  // namespace

double semimetric_eval(const SemimetricSpec& spec,
                       const Eigen::Ref<const Eigen::VectorXd>& x,
                       const Eigen::Ref<const Eigen::VectorXd>& y) {
  require_same_dim(x, y, "semimetric_eval");
  return rho_of_distance(spec, euclidean_distance(x, y));
}

double kernel_eval(const KernelSpec& spec,
                   const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y) {
  require_same_dim(x, y, "kernel_eval");
  Eigen::VectorXd x0 = spec.base_point;
  if (x0.size() == 0) x0 = Eigen::VectorXd::Zero(x.size());
  require_same_dim(x, x0, "kernel_eval (base point)");
  const double rx = semimetric_eval(spec.semimetric, x, x0);
  const double ry = semimetric_eval(spec.semimetric, y, x0);
  const double rxy = semimetric_eval(spec.semimetric, x, y);
  return 0.5 * (rx + ry - rxy);
}

GramMatrix gram_matrix(const KernelSpec& spec, const Eigen::MatrixXd& data) {
  const Eigen::Index n = data.rows();
  if (n < 1) throw std::invalid_argument("gram_matrix: need at least 1 point");
  Eigen::VectorXd x0 = spec.base_point;
  if (x0.size() == 0) x0 = Eigen::VectorXd::Zero(data.cols());
  if (x0.size() != data.cols())
    throw std::invalid_argument("gram_matrix: base point dimension " +
                                std::to_string(x0.size()) +
                                " does not match data dimension " +
                                std::to_string(data.cols()));

  Eigen::VectorXd rho0(n);
  for (Eigen::Index i = 0; i < n; ++i)
    rho0(i) = rho_of_distance(spec.semimetric,
                              euclidean_distance(data.row(i), x0));

  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = rho0(i);  // kappa(x,x) = rho(x,x0)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double rij = rho_of_distance(
          spec.semimetric, euclidean_distance(data.row(i), data.row(j)));
      const double value = 0.5 * (rho0(i) + rho0(j) - rij);
      g(i, j) = value;
      g(j, i) = value;
    }
  }
  return GramMatrix(std::move(g));
}

Eigen::MatrixXd semimetric_matrix(const SemimetricSpec& spec,
                                  const Eigen::MatrixXd& data) {
  const Eigen::Index n = data.rows();
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double value = rho_of_distance(
          spec, euclidean_distance(data.row(i), data.row(j)));
      rho(i, j) = value;
      rho(j, i) = value;
    }
  return rho;
}

Eigen::MatrixXd rho_from_gram(const GramMatrix& gram) {
  const Eigen::MatrixXd& g = gram.matrix();
  const Eigen::VectorXd d = g.diagonal();
  Eigen::MatrixXd rho =
      d.replicate(1, g.cols()) + d.transpose().replicate(g.rows(), 1) - 2.0 * g;
  return rho;
}

PsdCheck check_psd(const GramMatrix& gram, double tolerance) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      gram.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("check_psd: eigensolver failed to converge");
  const double min_ev = solver.eigenvalues().minCoeff();
  const double scale =
      std::max(1.0, gram.matrix().cwiseAbs().rowwise().sum().maxCoeff());
  return {min_ev >= -tolerance * scale, min_ev};
}

AffinityGram kernel_from_affinity(const Eigen::MatrixXd& affinity,
                                  const Eigen::VectorXd& node_weights) {
  const Eigen::Index n = affinity.rows();
  if (affinity.cols() != n)
    throw std::invalid_argument("kernel_from_affinity: affinity must be square");
  if (node_weights.size() != n)
    throw std::invalid_argument(
        "kernel_from_affinity: weight count does not match affinity size");
  if ((affinity.array() != affinity.transpose().array()).any())
    throw std::invalid_argument("kernel_from_affinity: affinity must be symmetric");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(node_weights(i) > 0.0))
      throw std::invalid_argument(
          "kernel_from_affinity: node weights must be strictly positive");

  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = affinity(i, i) / (node_weights(i) * node_weights(i));
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double value = affinity(i, j) / (node_weights(i) * node_weights(j));
      g(i, j) = value;
      g(j, i) = value;
    }
  }
  AffinityGram result{GramMatrix(std::move(g)), false, 0.0};
  const PsdCheck psd = check_psd(result.gram);
  result.psd_warning = !psd.is_psd;
  result.min_eigenvalue = psd.min_eigenvalue;
  return result;
}

}  // namespace kgroups
