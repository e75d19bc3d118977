#include "kgroups/cluster.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kgroups {

namespace {

void require_weights(const Eigen::VectorXd& weights, Eigen::Index n) {
  if (weights.size() != n)
    throw std::invalid_argument("solver: weight count does not match Gram size");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(weights(i) > 0.0))
      throw std::invalid_argument("solver: weights must be strictly positive");
}

// Per-point diagonal of W G W, cached once per solver run.
Eigen::VectorXd wgw_diagonal(const GramMatrix& gram,
                             const Eigen::VectorXd& weights) {
  return weights.array().square() * gram.matrix().diagonal().array();
}

// Q_ell(x_i) for every ell at once: one pass over the Gram column.
void point_costs_all(const ClusterState& state, const GramMatrix& gram,
                     const Eigen::VectorXd& weights, int i,
                     std::vector<double>& cost) {
  const int k = state.part.k;
  cost.assign(static_cast<std::size_t>(k), 0.0);
  const auto column = gram.matrix().col(i);
  const int n = state.part.size();
  for (int y = 0; y < n; ++y)
    cost[static_cast<std::size_t>(state.part.labels[y])] +=
        weights(y) * column(y);
  const double w_i = weights(i);
  for (double& c : cost) c *= w_i;
}

struct SweepContext {
  const GramMatrix& gram;
  const Eigen::VectorXd& weights;
  const Eigen::VectorXd& diag;  // (W G W)_ii
  double move_tolerance = 0.0;
};

void apply_move(ClusterState& state, int i, int from, int to, double cost_from,
                double cost_to, double dii, const Eigen::VectorXd& weights) {
  state.q(from) += -2.0 * cost_from + dii;
  state.q(to) += 2.0 * cost_to + dii;
  state.s(from) -= weights(i);
  state.s(to) += weights(i);
  --state.counts[static_cast<std::size_t>(from)];
  ++state.counts[static_cast<std::size_t>(to)];
  state.part.labels[static_cast<std::size_t>(i)] = to;
}

int hartigan_pass(ClusterState& state, const SweepContext& ctx,
                  const MoveObserver& observer) {
  const int n = state.part.size();
  const int k = state.part.k;
  int moves = 0;
  std::vector<double> cost;
  for (int i = 0; i < n; ++i) {
    const int j = state.part.labels[static_cast<std::size_t>(i)];
    const double w_i = ctx.weights(i);
    if (state.cluster_count(j) <= 1 || !(state.s(j) - w_i > 0.0))
      continue;  // moving i would empty its source cluster
    point_costs_all(state, ctx.gram, ctx.weights, i, cost);
    const double dii = ctx.diag(i);
    const double source_term =
        (w_i / state.s(j) * state.q(j) - 2.0 * cost[static_cast<std::size_t>(j)] +
         dii) /
        (state.s(j) - w_i);
    int best = -1;
    double best_gain = 0.0;
    for (int ell = 0; ell < k; ++ell) {
      if (ell == j) continue;
      const double q_over_s =
          state.cluster_count(ell) > 0 ? state.q(ell) / state.s(ell) : 0.0;
      const double target_term =
          (w_i * q_over_s - 2.0 * cost[static_cast<std::size_t>(ell)] - dii) /
          (state.s(ell) + w_i);
      const double gain = source_term - target_term;
      if (gain > best_gain || best < 0) {
        best = ell;
        best_gain = gain;
      }
    }
    if (best >= 0 && best_gain > ctx.move_tolerance) {
      apply_move(state, i, j, best, cost[static_cast<std::size_t>(j)],
                 cost[static_cast<std::size_t>(best)], dii, ctx.weights);
      ++moves;
      if (observer) observer(state, i, j, best);
    }
  }
  return moves;
}

int lloyd_pass(ClusterState& state, const SweepContext& ctx,
               const MoveObserver& observer) {
  const int n = state.part.size();
  const int k = state.part.k;
  int moves = 0;
  std::vector<double> cost;
  for (int i = 0; i < n; ++i) {
    const int j = state.part.labels[static_cast<std::size_t>(i)];
    point_costs_all(state, ctx.gram, ctx.weights, i, cost);
    int best = j;
    double best_value = std::numeric_limits<double>::infinity();
    for (int ell = 0; ell < k; ++ell) {
      if (state.cluster_count(ell) == 0) continue;
      const double s_ell = state.s(ell);
      const double value = state.q(ell) / (s_ell * s_ell) -
                           2.0 * cost[static_cast<std::size_t>(ell)] / s_ell;
      if (value < best_value) {
        best_value = value;
        best = ell;
      }
    }
    if (best != j) {
      const double w_i = ctx.weights(i);
      if (state.cluster_count(j) <= 1 || !(state.s(j) - w_i > 0.0))
        continue;  // would empty the source cluster
      apply_move(state, i, j, best, cost[static_cast<std::size_t>(j)],
                 cost[static_cast<std::size_t>(best)], ctx.diag(i),
                 ctx.weights);
      ++moves;
      if (observer) observer(state, i, j, best);
    }
  }
  return moves;
}

}  // namespace

ClusterState ClusterState::from_partition(Partition part,
                                          const GramMatrix& gram,
                                          const Eigen::VectorXd& weights) {
  const int n = part.size();
  if (gram.size() != n)
    throw std::invalid_argument("ClusterState: partition/Gram size mismatch");
  require_weights(weights, n);
  ClusterState state;
  state.counts = part.cluster_counts();
  state.s = Eigen::VectorXd::Zero(part.k);
  state.q = Eigen::VectorXd::Zero(part.k);
  for (int i = 0; i < n; ++i) state.s(part.labels[i]) += weights(i);
  for (int i = 0; i < n; ++i) {
    const auto column = gram.matrix().col(i);
    const int label_i = part.labels[i];
    double acc = 0.0;
    for (int y = 0; y < n; ++y)
      if (part.labels[y] == label_i) acc += weights(y) * column(y);
    state.q(label_i) += weights(i) * acc;
  }
  state.part = std::move(part);
  return state;
}

double ClusterState::objective() const {
  double total = 0.0;
  for (int j = 0; j < part.k; ++j)
    if (counts[static_cast<std::size_t>(j)] > 0) total += q(j) / s(j);
  return total;
}

double ClusterState::cache_error(const GramMatrix& gram,
                                 const Eigen::VectorXd& weights) const {
  const ClusterState fresh = from_partition(part, gram, weights);
  double worst = 0.0;
  for (int j = 0; j < part.k; ++j) {
    worst = std::max(worst, std::abs(s(j) - fresh.s(j)) /
                                std::max(1.0, std::abs(fresh.s(j))));
    worst = std::max(worst, std::abs(q(j) - fresh.q(j)) /
                                std::max(1.0, std::abs(fresh.q(j))));
  }
  return worst;
}

double point_cost(const ClusterState& state, const GramMatrix& gram,
                  const Eigen::VectorXd& weights, int i, int ell) {
  const int n = state.part.size();
  if (i < 0 || i >= n) throw std::out_of_range("point_cost: point index");
  if (ell < 0 || ell >= state.part.k)
    throw std::out_of_range("point_cost: cluster index");
  const auto column = gram.matrix().col(i);
  double acc = 0.0;
  for (int y = 0; y < n; ++y)
    if (state.part.labels[y] == ell) acc += weights(y) * column(y);
  return weights(i) * acc;
}

std::optional<double> delta_q(const ClusterState& state, const GramMatrix& gram,
                              const Eigen::VectorXd& weights, int i, int ell) {
  const int n = state.part.size();
  if (i < 0 || i >= n) throw std::out_of_range("delta_q: point index");
  if (ell < 0 || ell >= state.part.k)
    throw std::out_of_range("delta_q: cluster index");
  const int j = state.part.labels[static_cast<std::size_t>(i)];
  if (ell == j)
    throw std::invalid_argument("delta_q: target equals current cluster");
  const double w_i = weights(i);
  if (state.cluster_count(j) <= 1 || !(state.s(j) - w_i > 0.0))
    return std::nullopt;  // move would empty the source cluster

  const double dii = w_i * w_i * gram(i, i);
  const double cost_j = point_cost(state, gram, weights, i, j);
  const double cost_ell = point_cost(state, gram, weights, i, ell);
  const double q_over_s_ell =
      state.cluster_count(ell) > 0 ? state.q(ell) / state.s(ell) : 0.0;
  const double source_term =
      (w_i / state.s(j) * state.q(j) - 2.0 * cost_j + dii) /
      (state.s(j) - w_i);
  const double target_term =
      (w_i * q_over_s_ell - 2.0 * cost_ell - dii) / (state.s(ell) + w_i);
  return source_term - target_term;
}

int kgroups_sweep(ClusterState& state, const GramMatrix& gram,
                  const Eigen::VectorXd& weights, const SolverConfig& config,
                  const MoveObserver& observer) {
  const Eigen::VectorXd diag = wgw_diagonal(gram, weights);
  SweepContext ctx{gram, weights, diag, config.move_tolerance};
  return hartigan_pass(state, ctx, observer);
}

int kmeans_sweep(ClusterState& state, const GramMatrix& gram,
                 const Eigen::VectorXd& weights, const SolverConfig& config,
                 const MoveObserver& observer) {
  const Eigen::VectorXd diag = wgw_diagonal(gram, weights);
  SweepContext ctx{gram, weights, diag, config.move_tolerance};
  return lloyd_pass(state, ctx, observer);
}

Partition init_assignment(const GramMatrix& gram,
                          const Eigen::VectorXd& weights, int k,
                          InitStrategy strategy, Rng& rng,
                          const std::vector<int>* provided) {
  const int n = static_cast<int>(gram.size());
  if (k < 1) throw std::invalid_argument("init_assignment: k must be >= 1");
  if (k > n)
    throw std::invalid_argument("init_assignment: k = " + std::to_string(k) +
                                " exceeds n = " + std::to_string(n));
  require_weights(weights, n);

  switch (strategy) {
    case InitStrategy::Provided: {
      if (provided == nullptr)
        throw std::invalid_argument("init_assignment: no labels provided");
      if (static_cast<int>(provided->size()) != n)
        throw std::invalid_argument("init_assignment: provided label count");
      Partition part(*provided, k);
      part.validate();
      return part;
    }

    case InitStrategy::Random: {
      std::vector<int> labels(static_cast<std::size_t>(n));
      if (n == k) {
        // Uniform labels conditioned on all-non-empty is exactly a uniform
        // random bijection here; draw it directly.
        std::iota(labels.begin(), labels.end(), 0);
        for (int i = n - 1; i > 0; --i)
          std::swap(labels[static_cast<std::size_t>(i)],
                    labels[rng.index(static_cast<std::size_t>(i) + 1)]);
        return Partition(std::move(labels), k);
      }
      for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<int> seen(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < n; ++i) {
          labels[static_cast<std::size_t>(i)] =
              static_cast<int>(rng.index(static_cast<std::size_t>(k)));
          seen[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] = 1;
        }
        if (std::accumulate(seen.begin(), seen.end(), 0) == k)
          return Partition(std::move(labels), k);
      }
      // Practically unreachable for n > k; guarantee termination anyway.
      std::vector<int> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      for (int i = n - 1; i > 0; --i)
        std::swap(order[static_cast<std::size_t>(i)],
                  order[rng.index(static_cast<std::size_t>(i) + 1)]);
      for (int t = 0; t < n; ++t)
        labels[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])] =
            t < k ? t : static_cast<int>(rng.index(static_cast<std::size_t>(k)));
      return Partition(std::move(labels), k);
    }

    case InitStrategy::KMeansPlusPlus: {
      const auto& g = gram.matrix();
      const auto feature_dist2 = [&](int a, int b) {
        return std::max(0.0, g(a, a) + g(b, b) - 2.0 * g(a, b));
      };
      std::vector<int> centers;
      centers.reserve(static_cast<std::size_t>(k));
      std::vector<double> nearest(static_cast<std::size_t>(n));
      centers.push_back(static_cast<int>(rng.index(static_cast<std::size_t>(n))));
      for (int i = 0; i < n; ++i)
        nearest[static_cast<std::size_t>(i)] = feature_dist2(i, centers[0]);
      while (static_cast<int>(centers.size()) < k) {
        double total = 0.0;
        for (double d : nearest) total += d;
        int next;
        if (total > 0.0) {
          next = static_cast<int>(rng.categorical(nearest));
        } else {
          // All remaining points coincide with chosen centers; fall back to
          // a uniform pick among non-center indices.
          std::vector<int> rest;
          for (int i = 0; i < n; ++i)
            if (std::find(centers.begin(), centers.end(), i) == centers.end())
              rest.push_back(i);
          next = rest[rng.index(rest.size())];
        }
        centers.push_back(next);
        for (int i = 0; i < n; ++i)
          nearest[static_cast<std::size_t>(i)] =
              std::min(nearest[static_cast<std::size_t>(i)],
                       feature_dist2(i, next));
      }
      std::vector<int> labels(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        int best = 0;
        double best_d = feature_dist2(i, centers[0]);
        for (int t = 1; t < k; ++t) {
          const double d = feature_dist2(i, centers[static_cast<std::size_t>(t)]);
          if (d < best_d) {
            best_d = d;
            best = t;
          }
        }
        labels[static_cast<std::size_t>(i)] = best;
      }
      // A center sits at distance zero from itself; pinning it keeps every
      // cluster non-empty even among duplicate points.
      for (int t = 0; t < k; ++t)
        labels[static_cast<std::size_t>(centers[static_cast<std::size_t>(t)])] = t;
      return Partition(std::move(labels), k);
    }
  }
  throw std::logic_error("init_assignment: unknown strategy");
}

ClusteringResult solve(const GramMatrix& gram, const Eigen::VectorXd& weights,
                       int k, const SolverConfig& config, Algorithm algorithm) {
  const int n = static_cast<int>(gram.size());
  if (k < 2) throw std::invalid_argument("solve: k must be >= 2");
  if (k > n) throw std::invalid_argument("solve: k exceeds number of points");
  if (config.max_passes < 1)
    throw std::invalid_argument("solve: max_passes must be >= 1");
  if (config.restarts < 1)
    throw std::invalid_argument("solve: restarts must be >= 1");
  require_weights(weights, n);

  const Eigen::VectorXd diag = wgw_diagonal(gram, weights);
  SweepContext ctx{gram, weights, diag, config.move_tolerance};

  ClusteringResult best;
  bool have_best = false;
  // Provided labels make every restart identical; run once.
  const int restarts =
      config.init == InitStrategy::Provided ? 1 : config.restarts;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(r)));
    Partition part =
        init_assignment(gram, weights, k, config.init, rng,
                        config.init == InitStrategy::Provided
                            ? &config.provided_labels
                            : nullptr);
    ClusterState state = ClusterState::from_partition(std::move(part), gram, weights);

    int passes = 0;
    int moves_total = 0;
    bool converged = false;
    while (passes < config.max_passes) {
      const int moves = algorithm == Algorithm::KGroups
                            ? hartigan_pass(state, ctx, {})
                            : lloyd_pass(state, ctx, {});
      ++passes;
      moves_total += moves;
      if (moves == 0) {
        converged = true;
        break;
      }
#ifndef NDEBUG
      assert(state.cache_error(gram, weights) <= 1e-9);
#endif
    }

    const double objective = state.objective();
    if (!have_best || objective > best.objective) {
      best = ClusteringResult{std::move(state.part), objective, passes,
                              moves_total, converged};
      have_best = true;
    }
  }
  return best;
}

Eigen::MatrixXd build_h_matrix(const Partition& part,
                               const Eigen::VectorXd& weights) {
  const int n = part.size();
  require_weights(weights, n);
  part.validate();
  Eigen::VectorXd s = Eigen::VectorXd::Zero(part.k);
  for (int i = 0; i < n; ++i) s(part.labels[i]) += weights(i);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, part.k);
  for (int i = 0; i < n; ++i)
    h(i, part.labels[i]) = std::sqrt(weights(i)) / std::sqrt(s(part.labels[i]));
  return h;
}

double kernel_kmeans_objective_j(const Partition& part, const GramMatrix& gram,
                                 const Eigen::VectorXd& weights) {
  const int n = part.size();
  if (gram.size() != n)
    throw std::invalid_argument("kernel_kmeans_objective_j: size mismatch");
  require_weights(weights, n);
  part.validate();

  ClusterState state = ClusterState::from_partition(part, gram, weights);
  double j_total = 0.0;
  for (int i = 0; i < n; ++i) {
    const int j = part.labels[i];
    const double s_j = state.s(j);
    const double mean_dot = point_cost(state, gram, weights, i, j) /
                            (weights(i) * s_j);  // <phi(x_i), phi(mu_j)>
    j_total += weights(i) *
               (gram(i, i) - 2.0 * mean_dot + state.q(j) / (s_j * s_j));
  }
  return j_total;
}

}  // namespace kgroups
