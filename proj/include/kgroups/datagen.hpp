#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "kgroups/energy.hpp"

namespace kgroups {

enum class PointTransform { None, ExpPointwise };

/// How to read the second argument of the 1-D specs N(a, b): as the variance
/// or as the standard deviation. The multi-dimensional specs are covariance
/// matrices and are unaffected.
enum class VarianceConvention { Variance, StdDev };

struct MixtureComponent {
  double weight = 0.0;
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;  // diagonal covariance entries, all > 0
};

struct MixtureSpec {
  std::vector<MixtureComponent> components;
  PointTransform transform = PointTransform::None;
  int dimension = 0;

  /// Throws unless weights sum to 1 (1e-12), variances are positive and
  /// dimensions agree.
  void validate() const;
};

struct LabeledDataset {
  Eigen::MatrixXd points;  // n x D
  Partition labels;        // generating component of each point
  std::uint64_t seed = 0;
};

/// Draws n points: component by weight, then an independent normal per
/// coordinate (mean + sqrt(variance) * z), then the pointwise transform.
/// Exactly reproducible per seed: one component draw followed by D normal
/// draws per point, in point order (see rng.hpp for the variate algorithms).
LabeledDataset sample_mixture(const MixtureSpec& spec, int n,
                              std::uint64_t seed);

struct BuiltinParams {
  int dimension = 10;  // gauss1 / gauss2
  int m = 0;           // unbalanced: component sizes N -+ m with N = 300
  VarianceConvention convention = VarianceConvention::StdDev;  // 1-D specs
};

/// Mixture parameterizations of the synthetic benchmarks:
///   gauss1       N(0, I_D) vs N(0.7*(1 x10, 0...), I_D)
///   gauss2       N(0, I_D) vs N((1 x10, 0...), diag(S~_10, I_{D-10}))
///   gauss20      D = 20, 2*Sigma_1 = Sigma_2 = I, mu_2 = (1 x5, 0 x15)/2
///   loggauss20   exp of gauss20
///   unbalanced   D = 4 mixture with weights (N-m)/2N, (N+m)/2N, N = 300
///   cigars       D = 2, mu_2 = (6.5, 0), Sigma = diag(1, 20)
///   normal1d     (1/2) N(0, 1.5) + (1/2) N(1.5, 0.3)
///   lognormal1d  exp of normal1d
/// `circles` is not a Gaussian mixture; use sample_builtin for it.
MixtureSpec builtin_mixture_spec(const std::string& name,
                                 const BuiltinParams& params = {});

/// Two concentric circles of radius 1 and 3 (equiprobable), angle uniform,
/// plus 0.2 * N(0, I_2) noise.
LabeledDataset sample_circles(int n, std::uint64_t seed);

/// Any builtin by name, including circles.
LabeledDataset sample_builtin(const std::string& name, int n,
                              std::uint64_t seed,
                              const BuiltinParams& params = {});

/// Names accepted by sample_builtin.
const std::vector<std::string>& builtin_names();

}  // namespace kgroups
