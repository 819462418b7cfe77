#include "arp/errors.hpp"
#include "arp/optimizers.hpp"

namespace arp {

RunHistory random_search(const Instance& instance, const RunConfig& config) {
  if (config.budget < 1) throw DomainError("budget must be >= 1");
  Evaluator evaluate(instance, config.representation, config.budget);
  Rng rng(config.seed);
  while (!evaluate.exhausted()) evaluate(sample_uniform(instance.n, rng));
  return evaluate.take_history();
}

}  // namespace arp
