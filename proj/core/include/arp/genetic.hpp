#pragma once

#include <functional>
#include <span>
#include <vector>

#include "arp/permutation.hpp"
#include "arp/random.hpp"

namespace arp {

// Cycle crossover. Cycles of positions are traced between p1 and p2 and
// copied alternately from each parent; a coin flip picks the parent of the
// first cycle (the one through position 0). Throws DomainError on length
// mismatch.
Permutation cycle_crossover(const Permutation& p1, const Permutation& p2, Rng& rng);

// With probability `rate` exchanges two distinct uniformly chosen positions.
Permutation swap_mutation(const Permutation& p, double rate, Rng& rng);

struct GaOptions {
  int population = 20;
  int evaluations = 10000;  // fitness evaluations, including the initial population
  double tournament_win = 0.9;
  double crossover_rate = 0.5;
  double mutation_rate = -1.0;  // negative means 1/n
};

// Fitness of a batch of individuals; larger is better.
using BatchFitness = std::function<std::vector<double>(std::span<const Permutation>)>;

struct GaResult {
  Permutation champion;  // best individual ever seen (first found on ties)
  double champion_fitness = 0.0;
  std::vector<Permutation> population;  // final generation
  std::vector<double> fitness;
  int evaluations = 0;
};

/// Generational GA over S_n with elitism: each generation keeps the best
/// individual and breeds population - 1 children by binary tournament
/// (the fitter contestant wins with probability tournament_win), cycle
/// crossover with probability crossover_rate, then swap mutation. The
/// initial population is `seeds` followed by uniform draws.
GaResult genetic_maximize(int n, const BatchFitness& fitness, std::span<const Permutation> seeds,
                          Rng& rng, const GaOptions& options = {});

}  // namespace arp
