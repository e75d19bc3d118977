#pragma once

#include <span>
#include <vector>

#include "kgroups/energy.hpp"

namespace kgroups {

/// Data sorted ascending together with the permutation back to input order.
struct SortedSample1D {
  std::vector<double> values;           // non-decreasing
  std::vector<int> original_indices;    // sorted position -> input position

  static SortedSample1D from(std::span<const double> data);
};

/// Mean absolute pairwise difference of a sorted segment in O(n):
///   g(C, C) = (2 / n^2) * sum_l (2l - 1 - n) x_l   (l is 1-based)
double g_sorted(std::span<const double> sorted_values);

/// Within dispersion of sorted segments under rho(x,y) = |x - y| and unit
/// weights: W = sum_j sum_l ((2l - 1 - n_j) / n_j) x_l.
double within_1d(const std::vector<std::span<const double>>& segments);

struct Exact1dResult {
  Partition assignment;  // over the original input order
  int split_index = 0;   // points 1..split_index (sorted) form cluster 0
  double within = 0.0;   // W at the optimum
};

/// Deterministic exact two-class solver for 1-D data with rho_1 and unit
/// weights: sorts, evaluates W for every prefix/suffix split with both sides
/// non-empty, and returns the argmin (smallest split on ties).
Exact1dResult solve_exact_2class(std::span<const double> data);

}  // namespace kgroups
