#include "kgroups/datagen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kgroups/rng.hpp"

namespace kgroups {

void MixtureSpec::validate() const {
  if (components.empty())
    throw std::invalid_argument("MixtureSpec: no components");
  if (dimension < 1) throw std::invalid_argument("MixtureSpec: dimension < 1");
  double total = 0.0;
  for (const auto& component : components) {
    if (component.mean.size() != dimension ||
        component.variance.size() != dimension)
      throw std::invalid_argument("MixtureSpec: component dimension mismatch");
    if (!(component.weight >= 0.0))
      throw std::invalid_argument("MixtureSpec: negative component weight");
    for (Eigen::Index d = 0; d < dimension; ++d)
      if (!(component.variance(d) > 0.0))
        throw std::invalid_argument("MixtureSpec: variance must be positive");
    total += component.weight;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("MixtureSpec: weights must sum to 1");
}

LabeledDataset sample_mixture(const MixtureSpec& spec, int n,
                              std::uint64_t seed) {
  spec.validate();
  if (n < 1) throw std::invalid_argument("sample_mixture: n must be >= 1");
  Rng rng(seed);
  std::vector<double> weights;
  weights.reserve(spec.components.size());
  for (const auto& component : spec.components)
    weights.push_back(component.weight);

  LabeledDataset dataset;
  dataset.seed = seed;
  dataset.points.resize(n, spec.dimension);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto c = rng.categorical(weights);
    labels[static_cast<std::size_t>(i)] = static_cast<int>(c);
    const auto& component = spec.components[c];
    for (int d = 0; d < spec.dimension; ++d)
      dataset.points(i, d) =
          component.mean(d) + std::sqrt(component.variance(d)) * rng.normal();
  }
  if (spec.transform == PointTransform::ExpPointwise)
    dataset.points = dataset.points.array().exp();
  dataset.labels =
      Partition(std::move(labels), static_cast<int>(spec.components.size()));
  return dataset;
}

namespace {

MixtureComponent component(double weight, Eigen::VectorXd mean,
                           Eigen::VectorXd variance) {
  return {weight, std::move(mean), std::move(variance)};
}

MixtureSpec two_component(int dimension, Eigen::VectorXd mu1,
                          Eigen::VectorXd var1, Eigen::VectorXd mu2,
                          Eigen::VectorXd var2, double weight1 = 0.5,
                          PointTransform transform = PointTransform::None) {
  MixtureSpec spec;
  spec.dimension = dimension;
  spec.transform = transform;
  spec.components.push_back(component(weight1, std::move(mu1), std::move(var1)));
  spec.components.push_back(
      component(1.0 - weight1, std::move(mu2), std::move(var2)));
  return spec;
}

Eigen::VectorXd signal_mean(int dimension, int signal_dims, double value) {
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dimension);
  mean.head(signal_dims).setConstant(value);
  return mean;
}

MixtureSpec normal1d_spec(VarianceConvention convention,
                          PointTransform transform) {
  const auto var = [&](double b) {
    return convention == VarianceConvention::Variance ? b : b * b;
  };
  Eigen::VectorXd mu1(1), mu2(1), v1(1), v2(1);
  mu1 << 0.0;
  mu2 << 1.5;
  v1 << var(1.5);
  v2 << var(0.3);
  return two_component(1, mu1, v1, mu2, v2, 0.5, transform);
}

}  // namespace

MixtureSpec builtin_mixture_spec(const std::string& name,
                                 const BuiltinParams& params) {
  if (name == "gauss1") {
    const int d = params.dimension;
    if (d < 10) throw std::invalid_argument("gauss1: needs dimension >= 10");
    return two_component(d, Eigen::VectorXd::Zero(d), Eigen::VectorXd::Ones(d),
                         signal_mean(d, 10, 0.7), Eigen::VectorXd::Ones(d));
  }
  if (name == "gauss2") {
    const int d = params.dimension;
    if (d < 10) throw std::invalid_argument("gauss2: needs dimension >= 10");
    Eigen::VectorXd var2 = Eigen::VectorXd::Ones(d);
    var2.head(10) << 1.367, 3.175, 3.247, 4.403, 1.249, 1.969, 4.035, 4.237,
        2.813, 3.637;
    return two_component(d, Eigen::VectorXd::Zero(d), Eigen::VectorXd::Ones(d),
                         signal_mean(d, 10, 1.0), std::move(var2));
  }
  if (name == "gauss20" || name == "loggauss20") {
    const int d = 20;
    return two_component(
        d, Eigen::VectorXd::Zero(d), Eigen::VectorXd::Constant(d, 0.5),
        signal_mean(d, 5, 0.5), Eigen::VectorXd::Ones(d), 0.5,
        name == "loggauss20" ? PointTransform::ExpPointwise
                             : PointTransform::None);
  }
  if (name == "unbalanced") {
    const int d = 4;
    const double n_total = 300.0;
    const double m = static_cast<double>(params.m);
    if (m < 0 || m >= n_total)
      throw std::invalid_argument("unbalanced: need 0 <= m < 300");
    Eigen::VectorXd mu2(d), var2(d);
    mu2 << 1.5, 1.5, 0.0, 0.0;
    var2 << 0.5, 0.5, 1.0, 1.0;
    return two_component(d, Eigen::VectorXd::Zero(d), Eigen::VectorXd::Ones(d),
                         std::move(mu2), std::move(var2),
                         (n_total - m) / (2.0 * n_total));
  }
  if (name == "cigars") {
    Eigen::VectorXd mu2(2), var(2);
    mu2 << 6.5, 0.0;
    var << 1.0, 20.0;
    return two_component(2, Eigen::VectorXd::Zero(2), var, std::move(mu2), var);
  }
  if (name == "normal1d")
    return normal1d_spec(params.convention, PointTransform::None);
  if (name == "lognormal1d")
    return normal1d_spec(params.convention, PointTransform::ExpPointwise);
  throw std::invalid_argument("unknown builtin mixture: " + name);
}

LabeledDataset sample_circles(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_circles: n must be >= 1");
  Rng rng(seed);
  LabeledDataset dataset;
  dataset.seed = seed;
  dataset.points.resize(n, 2);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int cls = rng.uniform() < 0.5 ? 0 : 1;
    const double radius = cls == 0 ? 1.0 : 3.0;
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    dataset.points(i, 0) = radius * std::cos(angle) + 0.2 * rng.normal();
    dataset.points(i, 1) = radius * std::sin(angle) + 0.2 * rng.normal();
    labels[static_cast<std::size_t>(i)] = cls;
  }
  dataset.labels = Partition(std::move(labels), 2);
  return dataset;
}

LabeledDataset sample_builtin(const std::string& name, int n,
                              std::uint64_t seed, const BuiltinParams& params) {
  if (name == "circles") return sample_circles(n, seed);
  return sample_mixture(builtin_mixture_spec(name, params), n, seed);
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "gauss1",     "gauss2", "gauss20", "loggauss20", "unbalanced",
      "cigars",     "circles", "normal1d", "lognormal1d"};
  return names;
}

}  // namespace kgroups
