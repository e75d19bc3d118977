#pragma once

#include <Eigen/Dense>

#include <atomic>
#include <cstdint>

namespace kgroups {

/// Families of semimetrics of negative type on R^D:
///   Alpha:     rho_alpha(x,y)  = |x - y|^alpha,              0 < alpha <= 2
///   ExpAbs:    rho~_sigma(x,y) = 2 - 2 exp(-|x-y| / (2 sigma))
///   ExpSquare: rho^_sigma(x,y) = 2 - 2 exp(-|x-y|^2 / (2 sigma^2))
/// alpha = 2 is accepted but only separates distributions by their means.
enum class SemimetricFamily { Alpha, ExpAbs, ExpSquare };

struct SemimetricSpec {
  SemimetricFamily family = SemimetricFamily::Alpha;
  double parameter = 1.0;

  /// Validates the parameter range; throws std::invalid_argument outside it.
  SemimetricSpec(SemimetricFamily family, double parameter);
  SemimetricSpec() = default;

  static SemimetricSpec alpha(double a) {
    return {SemimetricFamily::Alpha, a};
  }
  static SemimetricSpec exp_abs(double sigma) {
    return {SemimetricFamily::ExpAbs, sigma};
  }
  static SemimetricSpec exp_square(double sigma) {
    return {SemimetricFamily::ExpSquare, sigma};
  }
};

/// A kernel kappa(x,y) = [rho(x,x0) + rho(y,x0) - rho(x,y)] / 2 derived from
/// a semimetric of negative type and a base point x0. An empty base_point
/// means x0 = 0 (the default used throughout; only the generated semimetric,
/// not the kernel itself, is independent of x0).
struct KernelSpec {
  SemimetricSpec semimetric;
  Eigen::VectorXd base_point;  // empty => zero vector of the data dimension
};

/// Dense symmetric matrix of kernel evaluations over a dataset. Immutable
/// after construction and safe to share across threads.
class GramMatrix {
 public:
  explicit GramMatrix(Eigen::MatrixXd entries);

  Eigen::Index size() const { return entries_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const {
    return entries_(i, j);
  }
  const Eigen::MatrixXd& matrix() const { return entries_; }

 private:
  Eigen::MatrixXd entries_;
};

double semimetric_eval(const SemimetricSpec& spec,
                       const Eigen::Ref<const Eigen::VectorXd>& x,
                       const Eigen::Ref<const Eigen::VectorXd>& y);

double kernel_eval(const KernelSpec& spec,
                   const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y);

/// Gram matrix of kernel evaluations over the rows of `data`. Each unordered
/// pair is evaluated once and mirrored, so the result is exactly symmetric.
GramMatrix gram_matrix(const KernelSpec& spec, const Eigen::MatrixXd& data);

/// Pairwise semimetric values over the rows of `data` (exactly symmetric,
/// zero diagonal).
Eigen::MatrixXd semimetric_matrix(const SemimetricSpec& spec,
                                  const Eigen::MatrixXd& data);

/// Semimetric recovered from a Gram matrix:
/// rho(i,j) = G_ii + G_jj - 2 G_ij.
Eigen::MatrixXd rho_from_gram(const GramMatrix& gram);

struct PsdCheck {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
};

/// True iff lambda_min(G) >= -tolerance * max(1, ||G||_inf), with ||G||_inf
/// the maximum absolute row sum.
PsdCheck check_psd(const GramMatrix& gram, double tolerance = 1e-8);

struct AffinityGram {
  GramMatrix gram;
  /// Set when the derived matrix fails check_psd; the caller may proceed
  /// (solvers still terminate) but the kernel interpretation is lost.
  bool psd_warning = false;
  double min_eigenvalue = 0.0;
};

/// Gram matrix G_ij = A_ij / (w_i w_j) induced by a graph affinity matrix
/// and positive node weights (e.g. degrees). Makes the generalized ratio
/// association objective a special case of the clustering objective.
AffinityGram kernel_from_affinity(const Eigen::MatrixXd& affinity,
                                  const Eigen::VectorXd& node_weights);

namespace detail {
/// Gram constructions performed so far (used by debug-build assertions that
/// the experiment harness builds one Gram per dataset per trial).
extern std::atomic<std::uint64_t> gram_build_count;
}  // namespace detail

}  // namespace kgroups
