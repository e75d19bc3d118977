#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

#include "kgroups/energy.hpp"
#include "kgroups/kernels.hpp"
#include "kgroups/rng.hpp"
#include "test_helpers.hpp"

using namespace kgroups;

namespace {

Eigen::MatrixXd column(std::initializer_list<double> values) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (double v : values) m(i++, 0) = v;
  return m;
}

}  // namespace

TEST_CASE("pairwise_sum matches plain summation") {
  Rng rng(11);
  std::vector<double> values;
  for (int i = 0; i < 1000; ++i) values.push_back(rng.normal());
  double plain = 0.0;
  for (double v : values) plain += v;
  CHECK(pairwise_sum(values) == doctest::Approx(plain).epsilon(1e-12));
  CHECK(pairwise_sum(std::span<const double>{}) == 0.0);
}

TEST_CASE("energy_distance") {
  const auto rho1 = SemimetricSpec::alpha(1.0);
  SUBCASE("identical multisets give zero") {
    const Eigen::MatrixXd x = column({0.5, 1.5, -2.0});
    CHECK(energy_distance(x, x, rho1) == doctest::Approx(0.0));
  }
  SUBCASE("single points") {
    CHECK(energy_distance(column({0.0}), column({1.0}), rho1) ==
          doctest::Approx(2.0));
  }
  SUBCASE("separated Gaussians score higher") {
    Rng rng(12);
    Eigen::MatrixXd x(50, 1), near(50, 1), far(50, 1);
    for (int i = 0; i < 50; ++i) {
      x(i, 0) = rng.normal();
      near(i, 0) = 0.1 + rng.normal();
      far(i, 0) = 5.0 + rng.normal();
    }
    const double d_far = energy_distance(x, far, rho1);
    const double d_near = energy_distance(x, near, rho1);
    CHECK(d_far > d_near);
    CHECK(d_far > 0.0);
  }
  SUBCASE("empty group rejected") {
    CHECK_THROWS_AS(
        energy_distance(Eigen::MatrixXd(0, 1), column({1.0}), rho1),
        std::invalid_argument);
  }
}

TEST_CASE("g_dispersion hand values") {
  const auto rho1 = SemimetricSpec::alpha(1.0);
  SUBCASE("singleton clusters reduce to rho(a,b)") {
    auto sample = WeightedSample::make(column({1.0, 4.0}),
                                       (Eigen::VectorXd(2) << 0.3, 1.7).finished());
    const Partition part({0, 1}, 2);
    const Eigen::MatrixXd rho = semimetric_matrix(rho1, sample.points);
    CHECK(g_dispersion(sample, part, 0, 1, rho) == doctest::Approx(3.0));
    CHECK(g_dispersion(sample, part, 0, 0, rho) == doctest::Approx(0.0));
  }
  SUBCASE("unit weights on {0,1,2} as one cluster") {
    auto sample = WeightedSample::unit_weights(column({0.0, 1.0, 2.0}));
    const Partition part({0, 0, 0}, 1);
    const Eigen::MatrixXd rho = semimetric_matrix(rho1, sample.points);
    CHECK(g_dispersion(sample, part, 0, 0, rho) ==
          doctest::Approx(8.0 / 9.0));
  }
  SUBCASE("symmetry") {
    Rng rng(13);
    auto sample = WeightedSample::make(test_helpers::random_points(rng, 9, 2),
                                       test_helpers::random_weights(rng, 9));
    const Partition part = test_helpers::random_partition(rng, 9, 3);
    const Eigen::MatrixXd rho =
        semimetric_matrix(test_helpers::random_family(rng), sample.points);
    CHECK(g_dispersion(sample, part, 0, 2, rho) ==
          g_dispersion(sample, part, 2, 0, rho));
  }
}

TEST_CASE("within_dispersion hand values") {
  const auto rho1 = SemimetricSpec::alpha(1.0);
  SUBCASE("all singletons") {
    auto sample = WeightedSample::unit_weights(column({0.0, 3.0, 9.0}));
    const Partition part({0, 1, 2}, 3);
    CHECK(within_dispersion(sample, part,
                            semimetric_matrix(rho1, sample.points)) == 0.0);
  }
  SUBCASE("one cluster {0,1}") {
    auto sample = WeightedSample::unit_weights(column({0.0, 1.0}));
    const Partition part({0, 0}, 1);
    CHECK(within_dispersion(sample, part,
                            semimetric_matrix(rho1, sample.points)) ==
          doctest::Approx(0.5));
  }
  SUBCASE("unit weights agree with the unweighted estimator") {
    Rng rng(14);
    const int n = 12;
    auto sample =
        WeightedSample::unit_weights(test_helpers::random_points(rng, n, 2));
    const Partition part = test_helpers::random_partition(rng, n, 3);
    const Eigen::MatrixXd rho = semimetric_matrix(rho1, sample.points);
    // Unweighted W via n_j / 2 * mean pairwise rho inside each cluster.
    double expected = 0.0;
    for (int j = 0; j < part.k; ++j) {
      std::vector<int> members;
      for (int i = 0; i < n; ++i)
        if (part.labels[i] == j) members.push_back(i);
      double acc = 0.0;
      for (int a : members)
        for (int b : members) acc += rho(a, b);
      const double nj = static_cast<double>(members.size());
      expected += nj / 2.0 * acc / (nj * nj);
    }
    CHECK(within_dispersion(sample, part, rho) == doctest::Approx(expected));
  }
}

TEST_CASE("between_statistic hand values and nonnegativity") {
  const auto rho1 = SemimetricSpec::alpha(1.0);
  SUBCASE("identical singletons") {
    auto sample = WeightedSample::unit_weights(column({2.0, 2.0}));
    const Partition part({0, 1}, 2);
    CHECK(between_statistic(sample, part,
                            semimetric_matrix(rho1, sample.points)) ==
          doctest::Approx(0.0));
  }
  SUBCASE("unit singletons at 0 and 1") {
    auto sample = WeightedSample::unit_weights(column({0.0, 1.0}));
    const Partition part({0, 1}, 2);
    CHECK(between_statistic(sample, part,
                            semimetric_matrix(rho1, sample.points)) ==
          doctest::Approx(0.5));
  }
  SUBCASE("S >= 0 on random instances") {
    Rng rng(15);
    for (int t = 0; t < 40; ++t) {
      const int n = 4 + static_cast<int>(rng.index(12));
      const int k = 2 + static_cast<int>(rng.index(3));
      if (k > n) continue;
      auto sample = WeightedSample::make(
          test_helpers::random_points(rng, n, 2),
          test_helpers::random_weights(rng, n));
      const Partition part = test_helpers::random_partition(rng, n, k);
      const Eigen::MatrixXd rho =
          semimetric_matrix(test_helpers::random_family(rng), sample.points);
      CHECK(between_statistic(sample, part, rho) >= -1e-10);
    }
  }
}

TEST_CASE("Lemma 1 identity") {
  Rng rng(16);
  SUBCASE("random instances") {
    for (int t = 0; t < 40; ++t) {
      const int n = 5 + static_cast<int>(rng.index(26));
      const int k = 1 + static_cast<int>(rng.index(4));
      auto sample = WeightedSample::make(
          test_helpers::random_points(rng, n, 3),
          test_helpers::random_weights(rng, n));
      const Partition part = test_helpers::random_partition(rng, n, k);
      const Eigen::MatrixXd rho =
          semimetric_matrix(test_helpers::random_family(rng), sample.points);
      const double w = within_dispersion(sample, part, rho);
      CHECK(std::abs(lemma1_residual(sample, part, rho)) <=
            1e-10 * std::max(1.0, std::abs(w)));
    }
  }
  SUBCASE("n=30, k=3, rho_1.5") {
    auto sample = WeightedSample::make(test_helpers::random_points(rng, 30, 2),
                                       test_helpers::random_weights(rng, 30));
    const Partition part = test_helpers::random_partition(rng, 30, 3);
    const Eigen::MatrixXd rho =
        semimetric_matrix(SemimetricSpec::alpha(1.5), sample.points);
    CHECK(std::abs(lemma1_residual(sample, part, rho)) <= 1e-10);
  }
  SUBCASE("argmax S == argmin W over all bipartitions, n <= 8") {
    const int n = 8;
    auto sample = WeightedSample::make(test_helpers::random_points(rng, n, 2),
                                       test_helpers::random_weights(rng, n));
    const Eigen::MatrixXd rho =
        semimetric_matrix(SemimetricSpec::alpha(1.0), sample.points);
    double best_s = -1.0, best_w = 1e300;
    std::vector<int> argmax_s, argmin_w;
    for (const auto& labels : test_helpers::all_bipartitions(n)) {
      const Partition part(labels, 2);
      const double s = between_statistic(sample, part, rho);
      const double w = within_dispersion(sample, part, rho);
      if (s > best_s) {
        best_s = s;
        argmax_s = labels;
      }
      if (w < best_w) {
        best_w = w;
        argmin_w = labels;
      }
    }
    CHECK(argmax_s == argmin_w);
  }
}

TEST_CASE("energy statistic input validation") {
  auto sample = WeightedSample::unit_weights(column({0.0, 1.0, 2.0}));
  const Eigen::MatrixXd rho =
      semimetric_matrix(SemimetricSpec::alpha(1.0), sample.points);
  CHECK_THROWS_AS(between_statistic(sample, Partition({0, 0, 0}, 1), rho),
                  std::invalid_argument);
  // empty cluster 2
  CHECK_THROWS_AS(within_dispersion(sample, Partition({0, 0, 0}, 2), rho),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      WeightedSample::make(column({0.0}), (Eigen::VectorXd(1) << 0.0).finished()),
      std::invalid_argument);
}
