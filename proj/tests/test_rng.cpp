#include <doctest.h>

#include <cmath>
#include <vector>

#include "kgroups/rng.hpp"

using namespace kgroups;

TEST_CASE("identical seeds give identical streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next() == b.next());
    CHECK(a.uniform() == b.uniform());
    CHECK(a.normal() == b.normal());
  }
}

TEST_CASE("derive_seed separates streams") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("uniform stays in [0,1) and uniform_open in (0,1]") {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.uniform_open();
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("normal variates have roughly unit moments") {
  Rng rng(123);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("index is unbiased enough and in range") {
  Rng rng(5);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.index(7)];
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("categorical follows the weights") {
  Rng rng(9);
  const std::vector<double> weights = {1.0, 3.0, 0.0, 4.0};
  std::vector<int> counts(4, 0);
  for (int i = 0; i < 80000; ++i) ++counts[rng.categorical(weights)];
  CHECK(counts[2] == 0);
  CHECK(std::abs(counts[0] - 10000) < 600);
  CHECK(std::abs(counts[1] - 30000) < 900);
  CHECK(std::abs(counts[3] - 40000) < 900);
}
