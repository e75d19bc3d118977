#include "kgroups/exact1d.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace kgroups {

SortedSample1D SortedSample1D::from(std::span<const double> data) {
  SortedSample1D sorted;
  sorted.original_indices.resize(data.size());
  std::iota(sorted.original_indices.begin(), sorted.original_indices.end(), 0);
  std::stable_sort(sorted.original_indices.begin(),
                   sorted.original_indices.end(),
                   [&](int a, int b) { return data[a] < data[b]; });
  sorted.values.reserve(data.size());
  for (int idx : sorted.original_indices)
    sorted.values.push_back(data[static_cast<std::size_t>(idx)]);
  return sorted;
}

double g_sorted(std::span<const double> sorted_values) {
  const auto n = sorted_values.size();
  if (n == 0) throw std::invalid_argument("g_sorted: empty segment");
  std::vector<double> terms;
  terms.reserve(n);
  const double dn = static_cast<double>(n);
  for (std::size_t l = 1; l <= n; ++l)
    terms.push_back((2.0 * static_cast<double>(l) - 1.0 - dn) *
                    sorted_values[l - 1]);
  return 2.0 / (dn * dn) * pairwise_sum(terms);
}

double within_1d(const std::vector<std::span<const double>>& segments) {
  std::vector<double> per_segment;
  per_segment.reserve(segments.size());
  for (const auto& segment : segments) {
    const auto n = segment.size();
    if (n == 0) throw std::invalid_argument("within_1d: empty segment");
    std::vector<double> terms;
    terms.reserve(n);
    const double dn = static_cast<double>(n);
    for (std::size_t l = 1; l <= n; ++l)
      terms.push_back((2.0 * static_cast<double>(l) - 1.0 - dn) / dn *
                      segment[l - 1]);
    per_segment.push_back(pairwise_sum(terms));
  }
  return pairwise_sum(per_segment);
}

Exact1dResult solve_exact_2class(std::span<const double> data) {
  const auto n = data.size();
  if (n < 2)
    throw std::invalid_argument("solve_exact_2class: need at least 2 points");
  const SortedSample1D sorted = SortedSample1D::from(data);
  const std::span<const double> values(sorted.values);

  int best_split = 0;
  double best_within = std::numeric_limits<double>::infinity();
  for (std::size_t split = 1; split < n; ++split) {
    const double candidate =
        within_1d({values.first(split), values.subspan(split)});
    if (candidate < best_within) {
      best_within = candidate;
      best_split = static_cast<int>(split);
    }
  }

  std::vector<int> labels(n, 1);
  for (int pos = 0; pos < best_split; ++pos)
    labels[static_cast<std::size_t>(
        sorted.original_indices[static_cast<std::size_t>(pos)])] = 0;
  return {Partition(std::move(labels), 2), best_split, best_within};
}

}  // namespace kgroups
