#pragma once

#include <span>

#include "arp/permutation.hpp"
#include "arp/random.hpp"

namespace arp {

struct MallowsState {
  Permutation sigma0;
  double theta = 0.0;
  int iteration = 0;
};

// E[D | theta] for the Kendall Mallows model on S_n:
//   n / (e^theta - 1) - sum_{j=1..n} j / (e^{j theta} - 1),
// continued by n(n-1)/4 at theta = 0.
double expected_distance(int n, double theta);

// Dispersion whose expected distance is d_target, by bisection to 1e-10 in
// theta. Throws DomainError unless 0 < d_target <= n(n-1)/4.
double theta_for_target(int n, double d_target);

// Expected-distance target of sampling iteration k (0-based) out of
// `iterations`: linear from n(n-1)/8 down to 1, clamped to n(n-1)/4.
double target_distance(int n, int k, int iterations);

/// Draw from P(sigma) proportional to exp(-theta d(sigma, sigma0)).
///
/// A draw centered at the identity has a Lehmer code of independent
/// truncated geometric entries, V_j in {0, ..., n-1-j} with
/// P(V_j = r) proportional to e^{-theta r}. The decoded permutation is then
/// composed with sigma0, which moves the center (Kendall distance is
/// right-invariant).
Permutation mallows_sample(const MallowsState& state, Rng& rng);

/// Weighted Borda consensus: item i gets the weighted mean of the values
/// perms[k][i]; the output assigns 0..n-1 by increasing mean, ties to the
/// lower index. Throws DomainError on size mismatch, negative weights or
/// all-zero weights.
Permutation weighted_borda(std::span<const Permutation> perms, std::span<const double> weights);

}  // namespace arp
