#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arp/optimizers.hpp"

namespace arp {

enum class Algorithm { Greedy, RandomSearch, Umm, Cego };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view text);  // greedy|rs|umm|cego

struct ExperimentSpec {
  Algorithm algorithm = Algorithm::RandomSearch;
  Representation representation = Representation::Order;
  int budget = 400;
  int repetitions = 30;
  std::uint64_t base_seed = 0;
  bool greedy_seed = false;
  int init_design_size = 10;
  std::filesystem::path output_dir = "results";
  int jobs = 1;
  UmmOptions umm{};
  CegoOptions cego{};

  // Throws DomainError on inconsistent settings (repetitions < 1, greedy
  // seeding for random search or greedy, budget below the design size).
  void validate() const;

  // "<algo>-<repr>[-greedy]"
  std::string variant() const;
};

/// Initial design of run `seed`: a max-min Kendall design of
/// init_design_size permutations in the spec's representation, drawn from
/// its own stream of the seed. With `greedy_order` the design is seeded
/// with it (converted to the representation) and the greedy member is moved
/// to the last slot, so it is evaluated after the random ones.
std::vector<Permutation> initial_design(const Instance& instance, const ExperimentSpec& spec,
                                        std::uint64_t seed,
                                        const std::optional<Permutation>& greedy_order);

// One repetition of the spec with the given seed. Greedy runs record the
// greedy solution as their single evaluation.
RunHistory run_once(const Instance& instance, const ExperimentSpec& spec, std::uint64_t seed,
                    const std::optional<Permutation>& greedy_order = std::nullopt);

struct RunOutcome {
  int run = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double best_f = 0.0;
  double best_dv = 0.0;
  double best_T = 0.0;
  double wall_s = 0.0;
  std::filesystem::path history_path;
};

/// Runs all repetitions (run r uses seed base_seed + r) on up to spec.jobs
/// worker threads. Writes
///   <output_dir>/<instance>/<variant>/run<r>.csv
/// per run and appends one row per run, in run order, to
///   <output_dir>/summary.csv
/// (header instance,algo,repr,greedy_seed,run,seed,best_f,best_dv,best_T,wall_s).
/// A failing run is reported in its outcome (and as NaN in the summary)
/// without stopping the others.
std::vector<RunOutcome> run_experiment(const Instance& instance, const ExperimentSpec& spec);

inline constexpr std::string_view kSummaryHeader =
    "instance,algo,repr,greedy_seed,run,seed,best_f,best_dv,best_T,wall_s";

}  // namespace arp
