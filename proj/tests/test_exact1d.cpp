#include <doctest.h>

#include <algorithm>
#include <vector>

#include "kgroups/cluster.hpp"
#include "kgroups/datagen.hpp"
#include "kgroups/eval.hpp"
#include "kgroups/exact1d.hpp"
#include "kgroups/kernels.hpp"
#include "kgroups/rng.hpp"
#include "test_helpers.hpp"

using namespace kgroups;

namespace {

// O(n^2) mean absolute difference, straight off the definition.
double brute_g(std::span<const double> values) {
  double acc = 0.0;
  for (double x : values)
    for (double y : values) acc += std::abs(x - y);
  const double n = static_cast<double>(values.size());
  return acc / (n * n);
}

std::vector<double> random_values(Rng& rng, int n, bool with_duplicates) {
  std::vector<double> values(static_cast<std::size_t>(n));
  for (double& v : values) v = 3.0 * rng.normal();
  if (with_duplicates && n >= 4) {
    values[1] = values[0];
    values[static_cast<std::size_t>(n - 1)] = values[2];
  }
  return values;
}

}  // namespace

TEST_CASE("g_sorted") {
  SUBCASE("hand values") {
    CHECK(g_sorted(std::vector<double>{7.0}) == 0.0);
    CHECK(g_sorted(std::vector<double>{0.0, 1.0}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(g_sorted(std::span<const double>{}),
                    std::invalid_argument);
  }
  SUBCASE("matches the O(n^2) double sum") {
    Rng rng(61);
    for (int t = 0; t < 30; ++t) {
      std::vector<double> values = random_values(rng, 50, t % 3 == 0);
      std::sort(values.begin(), values.end());
      const double expected = brute_g(values);
      CHECK(std::abs(g_sorted(values) - expected) <=
            1e-10 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("within_1d") {
  SUBCASE("hand values") {
    const std::vector<double> a{4.0};
    const std::vector<double> b{9.0};
    CHECK(within_1d({std::span<const double>(a), std::span<const double>(b)}) ==
          0.0);
    const std::vector<double> pair{0.0, 1.0};
    CHECK(within_1d({std::span<const double>(pair)}) == doctest::Approx(0.5));
  }
  SUBCASE("agrees with within_dispersion under rho_1 and unit weights") {
    Rng rng(62);
    std::vector<double> seg1 = random_values(rng, 7, false);
    std::vector<double> seg2 = random_values(rng, 5, false);
    std::sort(seg1.begin(), seg1.end());
    std::sort(seg2.begin(), seg2.end());

    Eigen::MatrixXd points(12, 1);
    std::vector<int> labels(12);
    for (int i = 0; i < 7; ++i) {
      points(i, 0) = seg1[static_cast<std::size_t>(i)];
      labels[static_cast<std::size_t>(i)] = 0;
    }
    for (int i = 0; i < 5; ++i) {
      points(7 + i, 0) = seg2[static_cast<std::size_t>(i)];
      labels[static_cast<std::size_t>(7 + i)] = 1;
    }
    const auto sample = WeightedSample::unit_weights(points);
    const Eigen::MatrixXd rho =
        semimetric_matrix(SemimetricSpec::alpha(1.0), points);
    const double reference =
        within_dispersion(sample, Partition(labels, 2), rho);
    CHECK(within_1d({std::span<const double>(seg1),
                     std::span<const double>(seg2)}) ==
          doctest::Approx(reference).epsilon(1e-12));
  }
}

TEST_CASE("solve_exact_2class") {
  SUBCASE("hand instance {0, 1, 10, 11}") {
    const std::vector<double> data{0.0, 1.0, 10.0, 11.0};
    const Exact1dResult result = solve_exact_2class(data);
    CHECK(result.split_index == 2);
    CHECK(result.within == doctest::Approx(1.0));
    CHECK(result.assignment.labels == std::vector<int>{0, 0, 1, 1});
  }
  SUBCASE("two points split into singletons") {
    const std::vector<double> data{5.0, -3.0};
    const Exact1dResult result = solve_exact_2class(data);
    CHECK(result.within == doctest::Approx(0.0));
    CHECK(result.assignment.labels[0] != result.assignment.labels[1]);
    CHECK(result.assignment.labels[1] == 0);  // -3 is the left cluster
  }
  SUBCASE("n < 2 rejected") {
    CHECK_THROWS_AS(solve_exact_2class(std::vector<double>{1.0}),
                    std::invalid_argument);
  }
  SUBCASE("equals brute force over splits") {
    Rng rng(63);
    for (int t = 0; t < 30; ++t) {
      std::vector<double> data = random_values(rng, 20, t % 4 == 0);
      const Exact1dResult result = solve_exact_2class(data);
      std::vector<double> sorted = data;
      std::sort(sorted.begin(), sorted.end());
      double best = 1e300;
      for (std::size_t split = 1; split < sorted.size(); ++split) {
        const std::span<const double> all(sorted);
        best = std::min(best,
                        within_1d({all.first(split), all.subspan(split)}));
      }
      CHECK(result.within == doctest::Approx(best).epsilon(1e-12));
    }
  }
  SUBCASE("equals brute force over ALL bipartitions for n <= 10") {
    Rng rng(64);
    for (int t = 0; t < 20; ++t) {
      const int n = 4 + static_cast<int>(rng.index(7));
      std::vector<double> data = random_values(rng, n, t % 3 == 0);
      const Exact1dResult result = solve_exact_2class(data);

      Eigen::MatrixXd points(n, 1);
      for (int i = 0; i < n; ++i)
        points(i, 0) = data[static_cast<std::size_t>(i)];
      const Eigen::MatrixXd rho =
          semimetric_matrix(SemimetricSpec::alpha(1.0), points);
      double best = 1e300;
      for (const auto& labels : test_helpers::all_bipartitions(n))
        best = std::min(best, test_helpers::brute_force_w(
                                  labels, 2, rho, Eigen::VectorXd::Ones(n)));
      CHECK(result.within == doctest::Approx(best).epsilon(1e-10));
    }
  }
  SUBCASE("matches kernel k-groups accuracy on a 1-D Gaussian mixture") {
    const LabeledDataset data = sample_builtin("normal1d", 200, 77);
    const std::vector<double> values(data.points.data(),
                                     data.points.data() + 200);
    const Exact1dResult exact = solve_exact_2class(values);

    const GramMatrix gram =
        gram_matrix(KernelSpec{SemimetricSpec::alpha(1.0), {}}, data.points);
    SolverConfig config;
    config.seed = 7;
    const ClusteringResult iterative = solve(
        gram, Eigen::VectorXd::Ones(200), 2, config, Algorithm::KGroups);

    const double exact_accuracy = accuracy(exact.assignment, data.labels);
    const double iterative_accuracy =
        accuracy(iterative.assignment, data.labels);
    CHECK(std::abs(exact_accuracy - iterative_accuracy) <= 0.02);
  }
  SUBCASE("partition invariant under input shuffling") {
    Rng rng(65);
    std::vector<double> data = random_values(rng, 15, false);
    const Exact1dResult reference = solve_exact_2class(data);

    std::vector<int> order(15);
    std::iota(order.begin(), order.end(), 0);
    for (int i = 14; i > 0; --i)
      std::swap(order[static_cast<std::size_t>(i)],
                order[rng.index(static_cast<std::size_t>(i) + 1)]);
    std::vector<double> shuffled(15);
    for (int i = 0; i < 15; ++i)
      shuffled[static_cast<std::size_t>(i)] =
          data[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    const Exact1dResult moved = solve_exact_2class(shuffled);

    // Same split as a set pair over original values.
    for (int i = 0; i < 15; ++i)
      CHECK(moved.assignment.labels[static_cast<std::size_t>(i)] ==
            reference.assignment
                .labels[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
    CHECK(moved.within == doctest::Approx(reference.within));
  }
}
