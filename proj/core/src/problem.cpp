#include "arp/problem.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "arp/errors.hpp"
#include "arp/lambert.hpp"
#include "arp/random.hpp"

namespace arp {

namespace {

void check_order(const Instance& instance, const Permutation& order) {
  if (order.size() != instance.n) {
    throw DomainError(fmt::format("permutation of length {} for instance of size {}",
                                  order.size(), instance.n));
  }
}

const OrbitalElements& body_before(const Instance& instance, const Permutation& order, int leg) {
  return leg == 0 ? instance.earth
                  : instance.asteroids[static_cast<std::size_t>(order[leg - 1])];
}

}  // namespace

void Instance::validate() const {
  if (n < 1) throw ValidationError("instance size must be >= 1", 0);
  if (asteroids.size() != static_cast<std::size_t>(n) ||
      asteroid_ids.size() != static_cast<std::size_t>(n)) {
    throw ValidationError(fmt::format("instance declares n = {} but lists {} asteroids", n,
                                      asteroids.size()),
                          0);
  }
  if (!std::isfinite(tau0)) throw ValidationError("tau0 must be finite", 0);
  try {
    earth.validate();
    for (const auto& a : asteroids) a.validate();
  } catch (const DomainError& e) {
    throw ValidationError(e.what(), 0);
  }
}

std::string instance_name(int n, std::uint64_t seed) { return fmt::format("{}_{}", n, seed); }

Instance generate_instance(const AsteroidCatalog& catalog, int n, std::uint64_t seed,
                           double tau0) {
  std::vector<const CatalogRecord*> pool = catalog.asteroids();
  if (n < 1 || static_cast<std::size_t>(n) > pool.size()) {
    throw DomainError(fmt::format("instance size {} outside [1, {}]", n, pool.size()));
  }
  Rng rng(seed);
  const std::size_t m = pool.size();
  for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k) {
    const std::size_t j = k + static_cast<std::size_t>(rng.below(m - k));
    std::swap(pool[k], pool[j]);
  }

  Instance inst;
  inst.n = n;
  inst.seed = seed;
  inst.name = instance_name(n, seed);
  inst.tau0 = tau0;
  inst.earth = catalog.earth();
  for (int k = 0; k < n; ++k) {
    inst.asteroid_ids.push_back(pool[static_cast<std::size_t>(k)]->id);
    inst.asteroids.push_back(pool[static_cast<std::size_t>(k)]->elements);
  }
  return inst;
}

void validate_times(const TimeVector& t, int n) {
  if (t.size() != 2 * static_cast<std::size_t>(n)) {
    throw DomainError(fmt::format("time vector has {} entries, expected {}", t.size(), 2 * n));
  }
  for (std::size_t k = 0; k < t.size(); k += 2) {
    if (!(t[k] >= kParkMin && t[k] <= kParkMax)) {
      throw DomainError(fmt::format("parking time t[{}] = {} outside [{}, {}]", k, t[k],
                                    kParkMin, kParkMax));
    }
    if (!(t[k + 1] >= kTransitMin && t[k + 1] <= kTransitMax)) {
      throw DomainError(fmt::format("transit time t[{}] = {} outside [{}, {}]", k + 1, t[k + 1],
                                    kTransitMin, kTransitMax));
    }
  }
}

Evaluation evaluate_full(const Instance& instance, const Permutation& order, const TimeVector& t) {
  check_order(instance, order);
  validate_times(t, instance.n);

  Evaluation ev;
  ev.per_leg.reserve(static_cast<std::size_t>(instance.n));
  double tau = instance.tau0;
  for (int leg = 0; leg < instance.n; ++leg) {
    const double park = t[2 * static_cast<std::size_t>(leg)];
    const double transit = t[2 * static_cast<std::size_t>(leg) + 1];
    const double depart = tau + park;
    ImpulsePair pair;
    try {
      pair = transfer_impulses(body_before(instance, order, leg),
                               instance.asteroids[static_cast<std::size_t>(order[leg])], depart,
                               transit, instance.mu);
    } catch (const std::exception& e) {
      throw EvaluationError(fmt::format("leg {}: {}", leg, e.what()), leg);
    }
    LegCost cost{pair.dv1.norm(), pair.dv2.norm(), park, transit};
    ev.dv += cost.dv_out + cost.dv_in;
    ev.T += park + transit;
    ev.per_leg.push_back(cost);
    tau = depart + transit;
  }
  ev.f = scalarize(ev.dv, ev.T);
  return ev;
}

std::pair<Evaluation, TimeVector> evaluate_sequence(const Instance& instance,
                                                    const Permutation& order,
                                                    const LegOptions& options) {
  check_order(instance, order);
  TimeVector t(2 * static_cast<std::size_t>(instance.n));
  double tau = instance.tau0;
  for (int leg = 0; leg < instance.n; ++leg) {
    LegResult r;
    try {
      r = optimize_leg(body_before(instance, order, leg),
                       instance.asteroids[static_cast<std::size_t>(order[leg])], tau, instance.mu,
                       options);
    } catch (const EvaluationError& e) {
      throw EvaluationError(fmt::format("leg {}: {}", leg, e.what()), leg);
    }
    t[2 * static_cast<std::size_t>(leg)] = r.t_park;
    t[2 * static_cast<std::size_t>(leg) + 1] = r.t_transit;
    tau = (tau + r.t_park) + r.t_transit;
  }
  Evaluation ev = evaluate_full(instance, order, t);
  return {std::move(ev), std::move(t)};
}

}  // namespace arp
