#include <limits>

#include <fmt/format.h>

#include "arp/errors.hpp"
#include "arp/optimizers.hpp"

namespace arp {

GreedyResult greedy_nn(const Instance& instance, const LegOptions& options) {
  const int n = instance.n;
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  TimeVector t;
  t.reserve(2 * static_cast<std::size_t>(n));

  const OrbitalElements* current = &instance.earth;
  double tau = instance.tau0;
  for (int step = 0; step < n; ++step) {
    const Vec3 here = elements_to_state(*current, instance.mu, tau).r;
    int next = -1;
    double nearest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (visited[static_cast<std::size_t>(j)]) continue;
      const double d =
          (elements_to_state(instance.asteroids[static_cast<std::size_t>(j)], instance.mu, tau).r -
           here)
              .norm();
      if (d < nearest) {
        nearest = d;
        next = j;
      }
    }
    const OrbitalElements& target = instance.asteroids[static_cast<std::size_t>(next)];
    LegResult leg;
    try {
      leg = optimize_leg(*current, target, tau, instance.mu, options);
    } catch (const EvaluationError& e) {
      throw EvaluationError(fmt::format("greedy leg {}: {}", step, e.what()), step);
    }
    visited[static_cast<std::size_t>(next)] = 1;
    order.push_back(next);
    t.push_back(leg.t_park);
    t.push_back(leg.t_transit);
    tau = (tau + leg.t_park) + leg.t_transit;
    current = &target;
  }

  GreedyResult result;
  result.order = Permutation(std::move(order));
  result.times = std::move(t);
  result.evaluation = evaluate_full(instance, result.order, result.times);
  return result;
}

}  // namespace arp
