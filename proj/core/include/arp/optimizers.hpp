#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "arp/genetic.hpp"
#include "arp/permutation.hpp"
#include "arp/problem.hpp"

namespace arp {

struct RunConfig {
  int budget = 400;
  Representation representation = Representation::Order;
  int init_design_size = 10;
  std::uint64_t seed = 0;
  bool greedy_seed = false;

  // Throws DomainError unless budget >= init_design_size >= 1.
  void validate() const;
};

struct HistoryEntry {
  int eval = 0;       // 1-based
  Permutation order;  // visiting order that was evaluated
  double f = 0.0;
  double dv = 0.0;
  double T = 0.0;
  double wall_ms = 0.0;  // since the start of the run
};

/// Every true-objective evaluation of one run, in order.
class RunHistory {
 public:
  void add(HistoryEntry entry);

  const std::vector<HistoryEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  // Lowest f; the earliest such entry on ties. Throws if empty.
  const HistoryEntry& best() const;

  // Best f among the first k entries, for k = 1..size().
  std::vector<double> best_so_far() const;

  // Times the surrogate could not be fitted and a uniform draw was used.
  int surrogate_fallbacks = 0;

 private:
  std::vector<HistoryEntry> entries_;
  std::size_t best_ = 0;
};

// Header eval,perm,f,dv,T,wall_ms; numbers with round-trip precision except
// wall_ms (microsecond resolution).
void write_history_csv(std::ostream& out, const RunHistory& history);
RunHistory read_history_csv(std::istream& in);

/// Budgeted objective for one run.
///
/// Takes permutations in the optimizer's internal representation, maps them
/// to visiting orders (Rank is inverted, Order passes through), evaluates
/// them with evaluate_sequence and appends to the history. Repeated
/// permutations are answered from a cache but still cost one evaluation.
class Evaluator {
 public:
  Evaluator(const Instance& instance, Representation representation, int budget);

  double operator()(const Permutation& internal);

  int used() const noexcept { return static_cast<int>(history_.size()); }
  int remaining() const noexcept { return budget_ - used(); }
  bool exhausted() const noexcept { return remaining() <= 0; }
  bool seen(const Permutation& internal) const;

  const Instance& instance() const noexcept { return instance_; }
  Representation representation() const noexcept { return representation_; }
  RunHistory& history() noexcept { return history_; }
  RunHistory take_history() { return std::move(history_); }

 private:
  const Instance& instance_;
  Representation representation_;
  int budget_;
  RunHistory history_;
  std::map<std::vector<int>, Evaluation> cache_;
  std::chrono::steady_clock::time_point start_;
};

struct GreedyResult {
  Permutation order;
  TimeVector times;
  Evaluation evaluation;
};

/// Nearest-neighbour construction: from Earth at tau0, repeatedly go to the
/// unvisited asteroid whose position at the current epoch is closest to the
/// current body's position (lowest index on ties), optimize that leg, and
/// advance the epoch by its parking and transit times.
GreedyResult greedy_nn(const Instance& instance, const LegOptions& options = {});

// `budget` uniform permutations drawn from Rng(config.seed).
RunHistory random_search(const Instance& instance, const RunConfig& config);

enum class UmmWeights { Geometric, Linear };

struct UmmOptions {
  // Geometric: the k-th best of m evaluations weighs decay^(k-1).
  // Linear: it weighs (m - k + 1).
  UmmWeights weights = UmmWeights::Geometric;
  double decay = 0.5;
};

/// Mallows-model EDA. `init` (internal representation) is evaluated first.
/// Each following iteration centers a Mallows model on the weighted Borda
/// consensus of all evaluated permutations (weights by objective rank, see
/// UmmOptions), sets theta from the linear expected-distance schedule and
/// evaluates one sample, redrawing up to 100 times to avoid repeats.
RunHistory umm(const Instance& instance, const RunConfig& config,
               const std::vector<Permutation>& init, const UmmOptions& options = {});

struct CegoOptions {
  GaOptions ga{};
};

/// Surrogate-model search. `init` (internal representation) is evaluated
/// first; each following iteration fits a Kendall-kernel GP to all
/// evaluations, runs a GA maximizing expected improvement (seeded with the
/// best evaluated permutation) and evaluates its champion, or the best
/// unevaluated member of the final population when the champion was already
/// evaluated, or a mutation of the champion when none is new. A failed fit
/// falls back to a uniform draw.
RunHistory cego(const Instance& instance, const RunConfig& config,
                const std::vector<Permutation>& init, const CegoOptions& options = {});

}  // namespace arp
