#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "arp/permutation.hpp"

namespace arp {

struct SurrogateState {
  std::vector<Permutation> evaluated;
  std::vector<double> f;
  double kernel_theta = 1.0;    // overwritten by the likelihood fit
  double noise_floor = 1e-8;    // first nugget tried
};

struct GpFitOptions {
  bool fit_theta = true;  // false keeps state.kernel_theta
};

struct GpPrediction {
  double mean = 0.0;
  double sd = 0.0;
};

// The 29 kernel parameters 2^-6, 2^-5.5, ..., 2^8.
std::vector<double> kernel_theta_grid();

/// Kriging model over permutations with kernel
/// k(p, q) = exp(-theta * kendall(p, q) / (n(n-1)/2)) and constant mean.
///
/// The mean and process variance are the generalized-least-squares
/// estimates; theta maximizes the concentrated log-likelihood
/// -(m/2) log(sigma^2) - (1/2) log|R| over kernel_theta_grid(). The nugget
/// starts at noise_floor and grows tenfold until R + nugget I factors. It is
/// part of the process covariance (k(p, p) = 1 + nugget), so the posterior
/// reproduces the training values exactly with zero variance there.
class PermutationGp {
 public:
  PermutationGp() = default;

  // Throws DomainError with fewer than two distinct permutations or
  // mismatched inputs.
  static PermutationGp fit(const SurrogateState& state, const GpFitOptions& options = {});

  GpPrediction predict(const Permutation& p) const;

  // Predictions for many points at once; faster than repeated predict().
  std::vector<GpPrediction> predict(std::span<const Permutation> points) const;

  double theta() const noexcept { return theta_; }
  double nugget() const noexcept { return nugget_; }
  double mean() const noexcept { return mu_; }
  double variance() const noexcept { return sigma2_; }
  double log_likelihood() const noexcept { return log_likelihood_; }

 private:
  Eigen::MatrixXd correlations(std::span<const PairSignature> points) const;

  int n_ = 0;
  double scale_ = 1.0;  // 1 / (n(n-1)/2)
  double theta_ = 1.0;
  double nugget_ = 0.0;
  double mu_ = 0.0;
  double sigma2_ = 0.0;
  double log_likelihood_ = 0.0;
  std::vector<PairSignature> train_;
  Eigen::MatrixXd chol_l_;  // lower Cholesky factor of R + nugget I
  Eigen::VectorXd alpha_;   // R^-1 (y - mu 1)
};

// Fits a model to `state` (alias of PermutationGp::fit).
PermutationGp gp_fit(const SurrogateState& state, const GpFitOptions& options = {});

// (best_f - mean) Phi(z) + sd phi(z) with z = (best_f - mean) / sd, for
// minimization. Reduces to max(best_f - mean, 0) when sd = 0.
double expected_improvement(double mean, double sd, double best_f);

}  // namespace arp
