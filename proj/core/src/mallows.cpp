#include "arp/mallows.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "arp/errors.hpp"

namespace arp {

double expected_distance(int n, double theta) {
  if (n < 1) throw DomainError("expected_distance: n must be >= 1");
  if (theta < 0.0) throw DomainError("expected_distance: theta must be >= 0");
  if (theta < 1e-9) return 0.25 * n * (n - 1);
  double sum = n / std::expm1(theta);
  for (int j = 1; j <= n; ++j) sum -= j / std::expm1(j * theta);
  return std::max(sum, 0.0);
}

double theta_for_target(int n, double d_target) {
  const double dmax = 0.25 * n * (n - 1);
  if (!(d_target > 0.0 && d_target <= dmax)) {
    throw DomainError("theta_for_target: target outside (0, n(n-1)/4]");
  }
  if (d_target == dmax) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (expected_distance(n, hi) > d_target) hi *= 2.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (expected_distance(n, mid) > d_target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double target_distance(int n, int k, int iterations) {
  const double dmax = 0.25 * n * (n - 1);
  const double first = std::min(0.125 * n * (n - 1), dmax);
  const double last = std::min(1.0, dmax);
  if (iterations <= 1) return first;
  const double s = static_cast<double>(k) / (iterations - 1);
  return first + (last - first) * s;
}

Permutation mallows_sample(const MallowsState& state, Rng& rng) {
  const int n = state.sigma0.size();
  if (n < 1) throw DomainError("mallows_sample: empty reference permutation");
  if (!(state.theta >= 0.0)) throw DomainError("mallows_sample: theta must be >= 0");

  // Lehmer code: code[i] = #{j > i : sigma[j] < sigma[i]} in {0..n-1-i}.
  std::vector<int> remaining(static_cast<std::size_t>(n));
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<int> seq(static_cast<std::size_t>(n));
  std::vector<double> cdf;
  for (int i = 0; i < n; ++i) {
    const int options = n - i;
    int r = 0;
    if (options > 1) {
      if (state.theta == 0.0) {
        r = static_cast<int>(rng.below(static_cast<std::uint64_t>(options)));
      } else {
        cdf.resize(static_cast<std::size_t>(options));
        double acc = 0.0;
        for (int k = 0; k < options; ++k) {
          acc += std::exp(-state.theta * k);
          cdf[static_cast<std::size_t>(k)] = acc;
        }
        const double u = rng.uniform() * acc;
        r = static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        r = std::min(r, options - 1);
      }
    }
    seq[static_cast<std::size_t>(i)] = remaining[static_cast<std::size_t>(r)];
    remaining.erase(remaining.begin() + r);
  }
  return compose(Permutation(std::move(seq)), state.sigma0);
}

Permutation weighted_borda(std::span<const Permutation> perms, std::span<const double> weights) {
  if (perms.empty()) throw DomainError("weighted_borda: no permutations");
  if (perms.size() != weights.size()) throw DomainError("weighted_borda: count mismatch");
  const int n = perms.front().size();
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("weighted_borda: invalid weight");
    total += w;
  }
  if (!(total > 0.0)) throw DomainError("weighted_borda: all weights are zero");

  std::vector<double> mean(static_cast<std::size_t>(n), 0.0);
  for (std::size_t k = 0; k < perms.size(); ++k) {
    if (perms[k].size() != n) throw DomainError("weighted_borda: length mismatch");
    for (int i = 0; i < n; ++i) mean[static_cast<std::size_t>(i)] += weights[k] * perms[k][i];
  }
  std::vector<int> items(static_cast<std::size_t>(n));
  std::iota(items.begin(), items.end(), 0);
  std::stable_sort(items.begin(), items.end(), [&](int a, int b) {
    return mean[static_cast<std::size_t>(a)] < mean[static_cast<std::size_t>(b)];
  });
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) out[static_cast<std::size_t>(items[static_cast<std::size_t>(r)])] = r;
  return Permutation(std::move(out));
}

}  // namespace arp
