#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arp/random.hpp"

namespace arp {

/// A bijection on {0, ..., n-1} stored as its image sequence.
///
/// In the order representation seq[i] is the asteroid visited at step i; in
/// the rank representation seq[j] is the step at which asteroid j is visited.
class Permutation {
 public:
  Permutation() = default;

  // Throws DomainError unless `seq` is a bijection on 0..n-1.
  explicit Permutation(std::vector<int> seq);

  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(seq_.size()); }
  int operator[](int i) const { return seq_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& values() const noexcept { return seq_; }
  std::span<const int> span() const noexcept { return seq_; }

  // Exchanges the values at positions i and j.
  void swap_positions(int i, int j);

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> seq_;
};

enum class Representation { Order, Rank };

std::string to_string(Representation r);
Representation parse_representation(std::string_view text);

Permutation inverse(const Permutation& p);

// (p o q)[i] = p[q[i]].
Permutation compose(const Permutation& p, const Permutation& q);

// Maps an optimizer-internal permutation to the visiting order it denotes:
// Order passes through, Rank inverts. The map is an involution.
Permutation to_order(const Permutation& internal, Representation r);
Permutation from_order(const Permutation& order, Representation r);

// Number of discordant pairs; merge-sort inversion count, O(n log n).
// Throws DomainError on length mismatch.
std::int64_t kendall_distance(const Permutation& p, const Permutation& q);

inline std::int64_t max_kendall_distance(int n) {
  return static_cast<std::int64_t>(n) * (n - 1) / 2;
}

/// Kendall distance through pair-orientation bit sets.
///
/// Each permutation is encoded once as n(n-1)/2 bits, bit (i, j) set when
/// p[i] < p[j]; the distance between two encodings is the popcount of their
/// XOR. Used by the surrogate, which computes millions of distances against
/// a fixed training set.
class PairSignature {
 public:
  PairSignature() = default;
  explicit PairSignature(const Permutation& p);

  std::int64_t distance(const PairSignature& other) const;

  friend bool operator==(const PairSignature&, const PairSignature&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

// Fisher-Yates shuffle of the identity.
Permutation sample_uniform(int n, Rng& rng);

// Sequential max-min Kendall design of k permutations. Seeds (if any) fill
// the first slots; each later member is the first-best of 100*n uniform
// candidates by minimum distance to the current members.
std::vector<Permutation> maxmin_design(int n, int k, Rng& rng,
                                       std::span<const Permutation> seeds = {});

// Dash-separated indices, e.g. "2-0-1".
std::string format_permutation(const Permutation& p, char separator = '-');

// Accepts '-', ',' or whitespace separators. Throws DomainError when the
// text is not a permutation of 0..n-1.
Permutation parse_permutation(std::string_view text);

}  // namespace arp
