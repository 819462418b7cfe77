#include "arp/gaussian_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include <Eigen/Cholesky>

#include "arp/errors.hpp"

namespace arp {

namespace {

constexpr double kMaxNugget = 1.0;
constexpr double kTinyVariance = 1e-300;

}  // namespace

std::vector<double> kernel_theta_grid() {
  std::vector<double> grid;
  for (int k = -12; k <= 16; ++k) grid.push_back(std::exp2(0.5 * k));
  return grid;
}

PermutationGp PermutationGp::fit(const SurrogateState& state, const GpFitOptions& options) {
  const std::size_t m = state.evaluated.size();
  if (m != state.f.size()) throw DomainError("gp_fit: permutation and value counts differ");
  if (m < 2) throw DomainError("gp_fit: need at least two evaluated permutations");
  const int n = state.evaluated.front().size();
  for (const auto& p : state.evaluated) {
    if (p.size() != n) throw DomainError("gp_fit: permutation length mismatch");
  }
  for (double v : state.f) {
    if (!std::isfinite(v)) throw DomainError("gp_fit: non-finite observation");
  }
  {
    std::set<std::vector<int>> distinct;
    for (const auto& p : state.evaluated) distinct.insert(p.values());
    if (distinct.size() < 2) throw DomainError("gp_fit: all evaluated permutations are identical");
  }
  if (!(state.noise_floor > 0.0)) throw DomainError("gp_fit: noise floor must be positive");

  PermutationGp gp;
  gp.n_ = n;
  gp.scale_ = 1.0 / static_cast<double>(max_kendall_distance(n));
  gp.train_.reserve(m);
  for (const auto& p : state.evaluated) gp.train_.emplace_back(p);

  const auto md = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd dist(md, md);
  for (Eigen::Index a = 0; a < md; ++a) {
    dist(a, a) = 0.0;
    for (Eigen::Index b = a + 1; b < md; ++b) {
      const double d = static_cast<double>(
          gp.train_[static_cast<std::size_t>(a)].distance(gp.train_[static_cast<std::size_t>(b)]));
      dist(a, b) = d * gp.scale_;
      dist(b, a) = d * gp.scale_;
    }
  }
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(state.f.data(), md);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(md);

  const std::vector<double> grid =
      options.fit_theta ? kernel_theta_grid() : std::vector<double>{state.kernel_theta};
  bool have_model = false;
  Eigen::LLT<Eigen::MatrixXd> llt;
  for (double theta : grid) {
    if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("gp_fit: invalid kernel theta");
    const Eigen::MatrixXd corr = (-theta * dist.array()).exp().matrix();
    double nugget = state.noise_floor;
    bool factored = false;
    while (nugget <= kMaxNugget) {
      Eigen::MatrixXd r = corr;
      r.diagonal().array() += nugget;
      llt.compute(r);
      if (llt.info() == Eigen::Success && (llt.matrixLLT().diagonal().array() > 0.0).all()) {
        factored = true;
        break;
      }
      nugget *= 10.0;
    }
    if (!factored) continue;

    const Eigen::VectorXd rinv_one = llt.solve(ones);
    const double mu = ones.dot(llt.solve(y)) / ones.dot(rinv_one);
    const Eigen::VectorXd resid = y - mu * ones;
    const Eigen::VectorXd alpha = llt.solve(resid);
    const double sigma2 = std::max(resid.dot(alpha) / static_cast<double>(m), kTinyVariance);
    const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    const double ll = -0.5 * static_cast<double>(m) * std::log(sigma2) - 0.5 * log_det;
    if (!std::isfinite(ll)) continue;
    if (!have_model || ll > gp.log_likelihood_) {
      have_model = true;
      gp.theta_ = theta;
      gp.nugget_ = nugget;
      gp.mu_ = mu;
      gp.sigma2_ = sigma2;
      gp.log_likelihood_ = ll;
      gp.chol_l_ = llt.matrixL();
      gp.alpha_ = alpha;
    }
  }
  if (!have_model) throw DomainError("gp_fit: correlation matrix could not be factored");
  return gp;
}

Eigen::MatrixXd PermutationGp::correlations(std::span<const PairSignature> points) const {
  const auto m = static_cast<Eigen::Index>(train_.size());
  const auto b = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd r(m, b);
  for (Eigen::Index j = 0; j < b; ++j) {
    const PairSignature& x = points[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < m; ++i) {
      r(i, j) = static_cast<double>(train_[static_cast<std::size_t>(i)].distance(x));
    }
  }
  // The nugget belongs to the process (microscale variation), so a point
  // coinciding with a training point carries it too and is reproduced exactly.
  return (r.array() == 0.0).select(1.0 + nugget_, (-theta_ * scale_ * r.array()).exp()).matrix();
}

GpPrediction PermutationGp::predict(const Permutation& p) const {
  return predict(std::span<const Permutation>(&p, 1)).front();
}

std::vector<GpPrediction> PermutationGp::predict(std::span<const Permutation> points) const {
  if (train_.empty()) throw DomainError("predict: model is not fitted");
  std::vector<PairSignature> sig;
  sig.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != n_) throw DomainError("predict: permutation length mismatch");
    sig.emplace_back(p);
  }
  Eigen::MatrixXd r = correlations(sig);
  const Eigen::VectorXd means = (r.transpose() * alpha_).array() + mu_;
  chol_l_.triangularView<Eigen::Lower>().solveInPlace(r);
  const Eigen::VectorXd explained = r.colwise().squaredNorm().transpose();

  std::vector<GpPrediction> out(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    const double var = sigma2_ * std::max(0.0, 1.0 + nugget_ - explained(jj));
    out[j] = {means(jj), std::sqrt(var)};
  }
  return out;
}

PermutationGp gp_fit(const SurrogateState& state, const GpFitOptions& options) {
  return PermutationGp::fit(state, options);
}

double expected_improvement(double mean, double sd, double best_f) {
  if (!(sd >= 0.0)) throw DomainError("expected_improvement: sd must be >= 0");
  const double gain = best_f - mean;
  if (sd == 0.0) return std::max(gain, 0.0);
  const double z = gain / sd;
  const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  return std::max(gain * cdf + sd * pdf, 0.0);
}

}  // namespace arp
