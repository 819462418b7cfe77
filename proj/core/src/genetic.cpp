#include "arp/genetic.hpp"

#include <algorithm>

#include "arp/errors.hpp"

namespace arp {

Permutation cycle_crossover(const Permutation& p1, const Permutation& p2, Rng& rng) {
  if (p1.size() != p2.size()) throw DomainError("cycle_crossover: length mismatch");
  const auto n = static_cast<std::size_t>(p1.size());
  std::vector<int> where1(n);
  for (std::size_t i = 0; i < n; ++i) where1[static_cast<std::size_t>(p1[static_cast<int>(i)])] = static_cast<int>(i);

  std::vector<int> child(n, -1);
  bool from_first = rng.bernoulli(0.5);
  for (std::size_t start = 0; start < n; ++start) {
    if (child[start] != -1) continue;
    const Permutation& donor = from_first ? p1 : p2;
    std::size_t pos = start;
    do {
      child[pos] = donor[static_cast<int>(pos)];
      pos = static_cast<std::size_t>(where1[static_cast<std::size_t>(p2[static_cast<int>(pos)])]);
    } while (pos != start);
    from_first = !from_first;
  }
  return Permutation(std::move(child));
}

Permutation swap_mutation(const Permutation& p, double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw DomainError("swap_mutation: rate outside [0, 1]");
  Permutation out = p;
  const int n = p.size();
  if (n < 2 || !rng.bernoulli(rate)) return out;
  const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
  if (j >= i) ++j;
  out.swap_positions(i, j);
  return out;
}

GaResult genetic_maximize(int n, const BatchFitness& fitness, std::span<const Permutation> seeds,
                          Rng& rng, const GaOptions& options) {
  if (n < 1) throw DomainError("genetic_maximize: n must be >= 1");
  if (options.population < 2) throw DomainError("genetic_maximize: population must be >= 2");
  const double mutation = options.mutation_rate < 0.0 ? 1.0 / n : options.mutation_rate;
  const auto pop_size = static_cast<std::size_t>(options.population);

  GaResult result;
  std::vector<Permutation> pop;
  pop.reserve(pop_size);
  for (const auto& s : seeds) {
    if (pop.size() == pop_size) break;
    if (s.size() != n) throw DomainError("genetic_maximize: seed length mismatch");
    pop.push_back(s);
  }
  while (pop.size() < pop_size) pop.push_back(sample_uniform(n, rng));
  std::vector<double> fit = fitness(pop);
  result.evaluations = static_cast<int>(pop.size());

  auto best_index = [](const std::vector<double>& f) {
    return static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
  };
  std::size_t b = best_index(fit);
  result.champion = pop[b];
  result.champion_fitness = fit[b];

  auto tournament = [&]() -> const Permutation& {
    const auto a = static_cast<std::size_t>(rng.below(pop_size));
    const auto c = static_cast<std::size_t>(rng.below(pop_size));
    const bool a_fitter = fit[a] >= fit[c];
    const bool pick_fitter = rng.bernoulli(options.tournament_win);
    return pop[(a_fitter == pick_fitter) ? a : c];
  };

  std::vector<Permutation> children;
  children.reserve(pop_size);
  while (result.evaluations + options.population - 1 <= options.evaluations) {
    children.clear();
    for (std::size_t k = 1; k < pop_size; ++k) {
      const Permutation& mother = tournament();
      const Permutation& father = tournament();
      Permutation child = rng.bernoulli(options.crossover_rate)
                              ? cycle_crossover(mother, father, rng)
                              : mother;
      children.push_back(swap_mutation(child, mutation, rng));
    }
    std::vector<double> child_fit = fitness(children);
    result.evaluations += static_cast<int>(children.size());

    b = best_index(fit);
    std::vector<Permutation> next{pop[b]};
    std::vector<double> next_fit{fit[b]};
    for (std::size_t k = 0; k < children.size(); ++k) {
      if (child_fit[k] > result.champion_fitness) {
        result.champion = children[k];
        result.champion_fitness = child_fit[k];
      }
      next.push_back(std::move(children[k]));
      next_fit.push_back(child_fit[k]);
    }
    pop = std::move(next);
    fit = std::move(next_fit);
  }
  result.population = std::move(pop);
  result.fitness = std::move(fit);
  return result;
}

}  // namespace arp
