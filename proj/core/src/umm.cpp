#include <algorithm>
#include <numeric>

#include "arp/errors.hpp"
#include "arp/mallows.hpp"
#include "arp/optimizers.hpp"

namespace arp {

namespace {

constexpr int kRedraws = 100;

// Normalized weights by objective rank (1-based k, earlier evaluation first
// on ties): (m - k + 1) for Linear, decay^(k - 1) for Geometric.
std::vector<double> rank_weights(const std::vector<double>& f, const UmmOptions& options) {
  const std::size_t m = f.size();
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
  std::vector<double> w(m);
  double total = 0.0;
  double geometric = 1.0;
  for (std::size_t k = 0; k < m; ++k) {
    w[idx[k]] = options.weights == UmmWeights::Linear ? static_cast<double>(m - k) : geometric;
    total += w[idx[k]];
    geometric *= options.decay;
  }
  for (double& v : w) v /= total;
  return w;
}

}  // namespace

RunHistory umm(const Instance& instance, const RunConfig& config,
               const std::vector<Permutation>& init, const UmmOptions& options) {
  if (!(options.decay > 0.0 && options.decay <= 1.0)) throw DomainError("umm: decay outside (0, 1]");
  config.validate();
  if (init.empty()) throw DomainError("umm: empty initial design");
  Evaluator evaluate(instance, config.representation, config.budget);
  std::vector<Permutation> perms;
  std::vector<double> values;
  for (const auto& p : init) {
    if (evaluate.exhausted()) break;
    values.push_back(evaluate(p));
    perms.push_back(p);
  }

  const int n = instance.n;
  const int iterations = evaluate.remaining();
  Rng rng(derive_seed(config.seed, 1));
  MallowsState state;
  for (int k = 0; k < iterations; ++k) {
    state.sigma0 = weighted_borda(perms, rank_weights(values, options));
    state.theta = n >= 2 ? theta_for_target(n, target_distance(n, k, iterations)) : 0.0;
    state.iteration = k;
    Permutation sample = mallows_sample(state, rng);
    for (int r = 0; r < kRedraws && evaluate.seen(sample); ++r) sample = mallows_sample(state, rng);
    values.push_back(evaluate(sample));
    perms.push_back(std::move(sample));
  }
  return evaluate.take_history();
}

}  // namespace arp
