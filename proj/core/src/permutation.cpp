#include "arp/permutation.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <numeric>

#include "arp/errors.hpp"

namespace arp {

namespace {

std::int64_t count_inversions(std::vector<int>& a, std::vector<int>& buffer,
                              std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t count = count_inversions(a, buffer, lo, mid) +
                       count_inversions(a, buffer, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[i] <= a[j]) {
      buffer[k++] = a[i++];
    } else {
      count += static_cast<std::int64_t>(mid - i);
      buffer[k++] = a[j++];
    }
  }
  while (i < mid) buffer[k++] = a[i++];
  while (j < hi) buffer[k++] = a[j++];
  std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(lo),
            buffer.begin() + static_cast<std::ptrdiff_t>(hi),
            a.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

}  // namespace

Permutation::Permutation(std::vector<int> seq) : seq_(std::move(seq)) {
  std::vector<char> seen(seq_.size(), 0);
  for (int v : seq_) {
    if (v < 0 || static_cast<std::size_t>(v) >= seq_.size() || seen[static_cast<std::size_t>(v)]) {
      throw DomainError("not a permutation of 0..n-1");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> seq(static_cast<std::size_t>(n));
  std::iota(seq.begin(), seq.end(), 0);
  return Permutation(std::move(seq));
}

void Permutation::swap_positions(int i, int j) {
  std::swap(seq_[static_cast<std::size_t>(i)], seq_[static_cast<std::size_t>(j)]);
}

std::string to_string(Representation r) {
  return r == Representation::Order ? "order" : "rank";
}

Representation parse_representation(std::string_view text) {
  if (text == "order") return Representation::Order;
  if (text == "rank") return Representation::Rank;
  throw DomainError("unknown representation '" + std::string(text) + "' (order|rank)");
}

Permutation inverse(const Permutation& p) {
  std::vector<int> inv(static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = i;
  return Permutation(std::move(inv));
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw DomainError("compose: length mismatch");
  std::vector<int> out(static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(i)] = p[q[i]];
  return Permutation(std::move(out));
}

Permutation to_order(const Permutation& internal, Representation r) {
  return r == Representation::Order ? internal : inverse(internal);
}

Permutation from_order(const Permutation& order, Representation r) {
  return r == Representation::Order ? order : inverse(order);
}

std::int64_t kendall_distance(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw DomainError("kendall_distance: length mismatch");
  const std::size_t n = static_cast<std::size_t>(p.size());
  // Positions sorted by q's value, read through p: discordant pairs become
  // inversions.
  std::vector<int> q_inv(n);
  for (std::size_t i = 0; i < n; ++i) q_inv[static_cast<std::size_t>(q.values()[i])] = static_cast<int>(i);
  std::vector<int> seq(n);
  for (std::size_t k = 0; k < n; ++k) seq[k] = p[q_inv[k]];
  std::vector<int> buffer(n);
  return count_inversions(seq, buffer, 0, n);
}

PairSignature::PairSignature(const Permutation& p) {
  const std::size_t n = static_cast<std::size_t>(p.size());
  const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  words_.assign((bits + 63) / 64, 0);
  std::size_t bit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++bit) {
      if (p.values()[i] < p.values()[j]) words_[bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
  }
}

std::int64_t PairSignature::distance(const PairSignature& other) const {
  if (words_.size() != other.words_.size()) {
    throw DomainError("PairSignature: length mismatch");
  }
  std::int64_t d = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) d += std::popcount(words_[w] ^ other.words_[w]);
  return d;
}

Permutation sample_uniform(int n, Rng& rng) {
  if (n < 1) throw DomainError("sample_uniform: n must be >= 1");
  std::vector<int> seq(static_cast<std::size_t>(n));
  std::iota(seq.begin(), seq.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(seq[static_cast<std::size_t>(i)], seq[static_cast<std::size_t>(j)]);
  }
  return Permutation(std::move(seq));
}

std::vector<Permutation> maxmin_design(int n, int k, Rng& rng,
                                       std::span<const Permutation> seeds) {
  if (k < 1) throw DomainError("maxmin_design: k must be >= 1");
  std::vector<Permutation> design;
  design.reserve(static_cast<std::size_t>(k));
  for (const auto& s : seeds) {
    if (s.size() != n) throw DomainError("maxmin_design: seed length mismatch");
    if (static_cast<int>(design.size()) == k) break;
    design.push_back(s);
  }
  if (design.empty()) design.push_back(sample_uniform(n, rng));

  const int pool = 100 * n;
  while (static_cast<int>(design.size()) < k) {
    Permutation best;
    std::int64_t best_min = -1;
    for (int c = 0; c < pool; ++c) {
      Permutation candidate = sample_uniform(n, rng);
      std::int64_t closest = std::numeric_limits<std::int64_t>::max();
      for (const auto& member : design) {
        closest = std::min(closest, kendall_distance(candidate, member));
        if (closest <= best_min) break;
      }
      if (closest > best_min) {
        best_min = closest;
        best = std::move(candidate);
      }
    }
    design.push_back(std::move(best));
  }
  return design;
}

std::string format_permutation(const Permutation& p, char separator) {
  std::string out;
  for (int i = 0; i < p.size(); ++i) {
    if (i > 0) out.push_back(separator);
    out += std::to_string(p[i]);
  }
  return out;
}

Permutation parse_permutation(std::string_view text) {
  std::vector<int> seq;
  std::size_t pos = 0;
  auto is_sep = [](char c) { return c == '-' || c == ',' || c == ' ' || c == '\t'; };
  while (pos < text.size()) {
    while (pos < text.size() && is_sep(text[pos])) ++pos;
    if (pos >= text.size()) break;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc()) {
      throw DomainError("cannot parse permutation '" + std::string(text) + "'");
    }
    seq.push_back(value);
    pos = static_cast<std::size_t>(ptr - text.data());
    if (pos < text.size() && !is_sep(text[pos])) {
      throw DomainError("cannot parse permutation '" + std::string(text) + "'");
    }
  }
  if (seq.empty()) throw DomainError("empty permutation");
  return Permutation(std::move(seq));
}

}  // namespace arp
