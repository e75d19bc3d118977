#include "kgroups/energy.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace kgroups {

WeightedSample WeightedSample::make(Eigen::MatrixXd points,
                                    Eigen::VectorXd weights) {
  if (points.rows() != weights.size())
    throw std::invalid_argument("WeightedSample: point/weight count mismatch");
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    if (!(weights(i) > 0.0))
      throw std::invalid_argument("WeightedSample: weights must be positive");
  WeightedSample sample;
  sample.total_weight = weights.sum();
  sample.points = std::move(points);
  sample.weights = std::move(weights);
  return sample;
}

WeightedSample WeightedSample::unit_weights(Eigen::MatrixXd points) {
  const Eigen::Index n = points.rows();
  return make(std::move(points), Eigen::VectorXd::Ones(n));
}

Partition::Partition(std::vector<int> labels, int k)
    : labels(std::move(labels)), k(k) {}

std::vector<int> Partition::cluster_counts() const {
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  for (int label : labels) {
    if (label < 0 || label >= k)
      throw std::out_of_range("Partition: label " + std::to_string(label) +
                              " outside [0, " + std::to_string(k) + ")");
    ++counts[static_cast<std::size_t>(label)];
  }
  return counts;
}

void Partition::validate() const {
  for (int count : cluster_counts())
    if (count == 0)
      throw std::invalid_argument("Partition: empty cluster");
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 32) {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

// Indices of each cluster's members, for contiguous iteration.
std::vector<std::vector<int>> members_by_cluster(const Partition& part) {
  std::vector<std::vector<int>> members(static_cast<std::size_t>(part.k));
  for (int i = 0; i < part.size(); ++i)
    members[static_cast<std::size_t>(part.labels[i])].push_back(i);
  return members;
}

// (1 / s_i s_j) sum w(x) w(y) rho(x,y) over x in a, y in b.
double weighted_pair_mean(const std::vector<int>& a, const std::vector<int>& b,
                          const Eigen::VectorXd& w, const Eigen::MatrixXd& rho,
                          double s_a, double s_b) {
  std::vector<double> row_sums;
  row_sums.reserve(a.size());
  std::vector<double> terms;
  terms.reserve(b.size());
  for (int x : a) {
    terms.clear();
    for (int y : b) terms.push_back(w(y) * rho(x, y));
    row_sums.push_back(w(x) * pairwise_sum(terms));
  }
  return pairwise_sum(row_sums) / (s_a * s_b);
}

double unweighted_pair_mean(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                            const SemimetricSpec& spec) {
  std::vector<double> row_sums;
  row_sums.reserve(static_cast<std::size_t>(a.rows()));
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(b.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    terms.clear();
    for (Eigen::Index j = 0; j < b.rows(); ++j)
      terms.push_back(semimetric_eval(spec, a.row(i), b.row(j)));
    row_sums.push_back(pairwise_sum(terms));
  }
  return pairwise_sum(row_sums) /
         (static_cast<double>(a.rows()) * static_cast<double>(b.rows()));
}

Eigen::VectorXd cluster_weight_sums(const WeightedSample& sample,
                                    const Partition& part) {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(part.k);
  for (int i = 0; i < part.size(); ++i)
    s(part.labels[i]) += sample.weights(i);
  return s;
}

void require_consistent(const WeightedSample& sample, const Partition& part,
                        const Eigen::MatrixXd& rho) {
  if (part.size() != sample.points.rows() ||
      rho.rows() != sample.points.rows() || rho.cols() != rho.rows())
    throw std::invalid_argument("energy statistics: size mismatch");
}

}  // namespace

double energy_distance(const Eigen::MatrixXd& sample_x,
                       const Eigen::MatrixXd& sample_y,
                       const SemimetricSpec& spec) {
  if (sample_x.rows() == 0 || sample_y.rows() == 0)
    throw std::invalid_argument("energy_distance: empty group");
  const double g_xy = unweighted_pair_mean(sample_x, sample_y, spec);
  const double g_xx = unweighted_pair_mean(sample_x, sample_x, spec);
  const double g_yy = unweighted_pair_mean(sample_y, sample_y, spec);
  return 2.0 * g_xy - g_xx - g_yy;
}

double g_dispersion(const WeightedSample& sample, const Partition& part,
                    int cluster_i, int cluster_j, const Eigen::MatrixXd& rho) {
  require_consistent(sample, part, rho);
  if (cluster_i > cluster_j) std::swap(cluster_i, cluster_j);  // exact symmetry
  const auto members = members_by_cluster(part);
  const auto& a = members.at(static_cast<std::size_t>(cluster_i));
  const auto& b = members.at(static_cast<std::size_t>(cluster_j));
  if (a.empty() || b.empty())
    throw std::invalid_argument("g_dispersion: empty cluster");
  const Eigen::VectorXd s = cluster_weight_sums(sample, part);
  return weighted_pair_mean(a, b, sample.weights, rho, s(cluster_i),
                            s(cluster_j));
}

double within_dispersion(const WeightedSample& sample, const Partition& part,
                         const Eigen::MatrixXd& rho) {
  require_consistent(sample, part, rho);
  part.validate();
  const auto members = members_by_cluster(part);
  const Eigen::VectorXd s = cluster_weight_sums(sample, part);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(part.k));
  for (int j = 0; j < part.k; ++j) {
    const auto& c = members[static_cast<std::size_t>(j)];
    terms.push_back(0.5 * s(j) *
                    weighted_pair_mean(c, c, sample.weights, rho, s(j), s(j)));
  }
  return pairwise_sum(terms);
}

double between_statistic(const WeightedSample& sample, const Partition& part,
                         const Eigen::MatrixXd& rho) {
  require_consistent(sample, part, rho);
  part.validate();
  if (part.k < 2)
    throw std::invalid_argument("between_statistic: need k >= 2");
  const auto members = members_by_cluster(part);
  const Eigen::VectorXd s = cluster_weight_sums(sample, part);
  const double s_total = sample.total_weight;

  std::vector<double> g_within(static_cast<std::size_t>(part.k));
  for (int j = 0; j < part.k; ++j) {
    const auto& c = members[static_cast<std::size_t>(j)];
    g_within[static_cast<std::size_t>(j)] =
        weighted_pair_mean(c, c, sample.weights, rho, s(j), s(j));
  }

  std::vector<double> terms;
  for (int i = 0; i < part.k; ++i)
    for (int j = i + 1; j < part.k; ++j) {
      const double g_ij =
          weighted_pair_mean(members[static_cast<std::size_t>(i)],
                             members[static_cast<std::size_t>(j)],
                             sample.weights, rho, s(i), s(j));
      terms.push_back(s(i) * s(j) / (2.0 * s_total) *
                      (2.0 * g_ij - g_within[static_cast<std::size_t>(i)] -
                       g_within[static_cast<std::size_t>(j)]));
    }
  return pairwise_sum(terms);
}

double lemma1_residual(const WeightedSample& sample, const Partition& part,
                       const Eigen::MatrixXd& rho) {
  const double w = within_dispersion(sample, part, rho);
  const double s = part.k >= 2 ? between_statistic(sample, part, rho) : 0.0;

  // (s/2) g(X,X) over the whole sample as one cluster
  std::vector<int> all(static_cast<std::size_t>(part.size()));
  for (int i = 0; i < part.size(); ++i) all[static_cast<std::size_t>(i)] = i;
  const double g_total = [&] {
    std::vector<double> row_sums;
    std::vector<double> terms;
    for (int x : all) {
      terms.clear();
      for (int y : all) terms.push_back(sample.weights(y) * rho(x, y));
      row_sums.push_back(sample.weights(x) * pairwise_sum(terms));
    }
    return pairwise_sum(row_sums) /
           (sample.total_weight * sample.total_weight);
  }();
  return s + w - 0.5 * sample.total_weight * g_total;
}

}  // namespace kgroups
