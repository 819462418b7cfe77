#include "arp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "arp/errors.hpp"

namespace arp {

namespace {

std::mutex g_summary_mutex;

void append_summary(const std::filesystem::path& path, const Instance& instance,
                    const ExperimentSpec& spec, const std::vector<RunOutcome>& outcomes) {
  const std::lock_guard<std::mutex> lock(g_summary_mutex);
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (fresh) out << kSummaryHeader << '\n';
  for (const auto& o : outcomes) {
    out << fmt::format("{},{},{},{},{},{},{},{},{},{:.3f}\n", instance.name,
                       to_string(spec.algorithm), to_string(spec.representation),
                       spec.greedy_seed ? 1 : 0, o.run, o.seed, o.best_f, o.best_dv, o.best_T,
                       o.wall_s);
  }
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Greedy:
      return "greedy";
    case Algorithm::RandomSearch:
      return "rs";
    case Algorithm::Umm:
      return "umm";
    case Algorithm::Cego:
      return "cego";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "greedy") return Algorithm::Greedy;
  if (text == "rs") return Algorithm::RandomSearch;
  if (text == "umm") return Algorithm::Umm;
  if (text == "cego") return Algorithm::Cego;
  throw DomainError("unknown algorithm '" + std::string(text) + "' (greedy|rs|umm|cego)");
}

void ExperimentSpec::validate() const {
  if (repetitions < 1) throw DomainError("repetitions must be >= 1");
  if (jobs < 1) throw DomainError("jobs must be >= 1");
  if (greedy_seed &&
      (algorithm == Algorithm::RandomSearch || algorithm == Algorithm::Greedy)) {
    throw DomainError("greedy seeding applies to umm and cego only");
  }
  if (algorithm == Algorithm::Umm || algorithm == Algorithm::Cego) {
    RunConfig{budget, representation, init_design_size, 0, greedy_seed}.validate();
  } else if (algorithm == Algorithm::RandomSearch && budget < 1) {
    throw DomainError("budget must be >= 1");
  }
}

std::string ExperimentSpec::variant() const {
  return fmt::format("{}-{}{}", to_string(algorithm), to_string(representation),
                     greedy_seed ? "-greedy" : "");
}

std::vector<Permutation> initial_design(const Instance& instance, const ExperimentSpec& spec,
                                        std::uint64_t seed,
                                        const std::optional<Permutation>& greedy_order) {
  Rng rng(derive_seed(seed, 0));
  std::vector<Permutation> seeds;
  if (greedy_order) seeds.push_back(from_order(*greedy_order, spec.representation));
  std::vector<Permutation> design =
      maxmin_design(instance.n, spec.init_design_size, rng, seeds);
  if (greedy_order) std::rotate(design.begin(), design.begin() + 1, design.end());
  return design;
}

RunHistory run_once(const Instance& instance, const ExperimentSpec& spec, std::uint64_t seed,
                    const std::optional<Permutation>& greedy_order) {
  const RunConfig config{spec.budget, spec.representation, spec.init_design_size, seed,
                         spec.greedy_seed};
  switch (spec.algorithm) {
    case Algorithm::Greedy: {
      const Permutation order = greedy_order ? *greedy_order : greedy_nn(instance).order;
      Evaluator evaluate(instance, Representation::Order, 1);
      evaluate(order);
      return evaluate.take_history();
    }
    case Algorithm::RandomSearch:
      return random_search(instance, config);
    case Algorithm::Umm:
      return umm(instance, config,
                 initial_design(instance, spec, seed, spec.greedy_seed ? greedy_order : std::nullopt),
                 spec.umm);
    case Algorithm::Cego:
      return cego(instance, config,
                  initial_design(instance, spec, seed, spec.greedy_seed ? greedy_order : std::nullopt),
                  spec.cego);
  }
  throw DomainError("unknown algorithm");
}

std::vector<RunOutcome> run_experiment(const Instance& instance, const ExperimentSpec& spec) {
  spec.validate();
  const std::filesystem::path dir = spec.output_dir / instance.name / spec.variant();
  std::filesystem::create_directories(dir);

  // The greedy solution is deterministic; compute it once for all runs.
  std::optional<Permutation> greedy_order;
  if (spec.greedy_seed || spec.algorithm == Algorithm::Greedy) {
    greedy_order = greedy_nn(instance).order;
  }

  std::vector<RunOutcome> outcomes(static_cast<std::size_t>(spec.repetitions));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int r = next++; r < spec.repetitions; r = next++) {
      RunOutcome& o = outcomes[static_cast<std::size_t>(r)];
      o.run = r;
      o.seed = spec.base_seed + static_cast<std::uint64_t>(r);
      o.history_path = dir / fmt::format("run{}.csv", r);
      const auto start = std::chrono::steady_clock::now();
      try {
        const RunHistory history = run_once(instance, spec, o.seed, greedy_order);
        o.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ofstream out(o.history_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + o.history_path.string());
        write_history_csv(out, history);
        const HistoryEntry& best = history.best();
        o.best_f = best.f;
        o.best_dv = best.dv;
        o.best_T = best.T;
        o.ok = true;
      } catch (const std::exception& e) {
        o.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.ok = false;
        o.error = e.what();
        o.best_f = o.best_dv = o.best_T = std::numeric_limits<double>::quiet_NaN();
      }
    }
  };

  const int threads = std::min(spec.jobs, spec.repetitions);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  append_summary(spec.output_dir / "summary.csv", instance, spec, outcomes);
  return outcomes;
}

}  // namespace arp
