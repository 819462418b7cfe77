#include <algorithm>
#include <map>

#include "arp/errors.hpp"
#include "arp/gaussian_process.hpp"
#include "arp/optimizers.hpp"

namespace arp {

namespace {

constexpr int kNoveltyTries = 1000;

Permutation unseen_uniform(int n, const Evaluator& evaluate, Rng& rng) {
  Permutation p = sample_uniform(n, rng);
  for (int r = 0; r < kNoveltyTries && evaluate.seen(p); ++r) p = sample_uniform(n, rng);
  return p;
}

}  // namespace

RunHistory cego(const Instance& instance, const RunConfig& config,
                const std::vector<Permutation>& init, const CegoOptions& options) {
  config.validate();
  if (init.empty()) throw DomainError("cego: empty initial design");
  Evaluator evaluate(instance, config.representation, config.budget);
  SurrogateState state;
  for (const auto& p : init) {
    if (evaluate.exhausted()) break;
    state.f.push_back(evaluate(p));
    state.evaluated.push_back(p);
  }

  const int n = instance.n;
  Rng rng(derive_seed(config.seed, 2));
  while (!evaluate.exhausted()) {
    const auto best_it = std::min_element(state.f.begin(), state.f.end());
    const double best_f = *best_it;
    const Permutation& best_p = state.evaluated[static_cast<std::size_t>(best_it - state.f.begin())];

    PermutationGp gp;
    try {
      gp = gp_fit(state);
    } catch (const DomainError&) {
      ++evaluate.history().surrogate_fallbacks;
      Permutation p = unseen_uniform(n, evaluate, rng);
      state.f.push_back(evaluate(p));
      state.evaluated.push_back(std::move(p));
      continue;
    }

    // The GA revisits individuals often; each distinct one is predicted once.
    std::map<std::vector<int>, double> ei_cache;
    const BatchFitness fitness = [&](std::span<const Permutation> batch) {
      std::vector<double> out(batch.size());
      std::vector<Permutation> fresh;
      std::vector<std::size_t> slots;
      for (std::size_t k = 0; k < batch.size(); ++k) {
        const auto hit = ei_cache.find(batch[k].values());
        if (hit != ei_cache.end()) {
          out[k] = hit->second;
        } else {
          fresh.push_back(batch[k]);
          slots.push_back(k);
        }
      }
      if (!fresh.empty()) {
        const std::vector<GpPrediction> pred = gp.predict(fresh);
        for (std::size_t j = 0; j < fresh.size(); ++j) {
          const double ei = expected_improvement(pred[j].mean, pred[j].sd, best_f);
          ei_cache.emplace(fresh[j].values(), ei);
          out[slots[j]] = ei;
        }
        // Duplicates inside one batch.
        for (std::size_t k = 0; k < batch.size(); ++k) out[k] = ei_cache.at(batch[k].values());
      }
      return out;
    };
    const std::vector<Permutation> seeds{best_p};
    const GaResult ga = genetic_maximize(n, fitness, seeds, rng, options.ga);

    Permutation candidate = ga.champion;
    if (evaluate.seen(candidate)) {
      std::optional<std::size_t> pick;
      for (std::size_t k = 0; k < ga.population.size(); ++k) {
        if (evaluate.seen(ga.population[k])) continue;
        if (!pick || ga.fitness[k] > ga.fitness[*pick]) pick = k;
      }
      if (pick) {
        candidate = ga.population[*pick];
      } else {
        Permutation mutant = ga.champion;
        for (int r = 0; r < kNoveltyTries && evaluate.seen(mutant); ++r) {
          mutant = swap_mutation(mutant, 1.0, rng);
        }
        candidate = std::move(mutant);
      }
    }
    state.f.push_back(evaluate(candidate));
    state.evaluated.push_back(std::move(candidate));
  }
  return evaluate.take_history();
}

}  // namespace arp
