#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "arp/catalog.hpp"
#include "arp/inner_solver.hpp"
#include "arp/orbits.hpp"
#include "arp/permutation.hpp"

namespace arp {

inline constexpr double kDefaultTau0 = 59396.0;

/// An asteroid routing instance: Earth, n asteroids, start epoch and mu.
///
/// Asteroid k (0-based) of the instance is catalog record asteroid_ids[k].
/// A visiting order is a permutation of 0..n-1 over these indices.
struct Instance {
  int n = 0;
  std::uint64_t seed = 0;
  std::string name;
  double tau0 = kDefaultTau0;
  GravParam mu{};
  OrbitalElements earth;
  std::vector<int> asteroid_ids;
  std::vector<OrbitalElements> asteroids;

  // Throws ValidationError when sizes disagree or elements are invalid.
  void validate() const;
};

std::string instance_name(int n, std::uint64_t seed);

// Chooses n non-Earth records with a partial Fisher-Yates shuffle of the
// catalog's asteroid list driven by Rng(seed). Throws DomainError unless
// 1 <= n <= number of asteroids.
Instance generate_instance(const AsteroidCatalog& catalog, int n, std::uint64_t seed,
                           double tau0 = kDefaultTau0);

// JSON with fields n, seed, tau0, mu, name, earth and asteroids. Elements are
// written in km and radians so that reading back is exact.
void write_instance(std::ostream& out, const Instance& instance);
void save_instance(const std::filesystem::path& path, const Instance& instance);
Instance read_instance(std::istream& in);
Instance load_instance(const std::filesystem::path& path);

// Parking and transit times: t[2k] parks before leg k, t[2k+1] is its transit.
using TimeVector = std::vector<double>;

// Throws DomainError unless t has 2n entries inside the leg bounds.
void validate_times(const TimeVector& t, int n);

struct LegCost {
  double dv_out = 0.0;  // departure impulse magnitude, km/s
  double dv_in = 0.0;   // arrival impulse magnitude, km/s
  double t_park = 0.0;
  double t_transit = 0.0;
};

struct Evaluation {
  double dv = 0.0;  // km/s
  double T = 0.0;   // days
  double f = 0.0;
  std::vector<LegCost> per_leg;
};

// f = dv + (2 km/s / 30 days) T.
inline double scalarize(double dv, double T) { return dv + kTimeWeight * T; }

/// Cost of flying `order` with fixed times t.
///
/// Leg k departs the previous body (Earth for k = 0) at
/// depart = tau + t[2k] and arrives at depart + t[2k+1], which becomes the
/// next tau. Throws EvaluationError naming the failing leg.
Evaluation evaluate_full(const Instance& instance, const Permutation& order, const TimeVector& t);

/// Cost of `order` with times chosen by optimize_leg leg by leg. The returned
/// evaluation equals evaluate_full(instance, order, times) exactly.
std::pair<Evaluation, TimeVector> evaluate_sequence(const Instance& instance,
                                                    const Permutation& order,
                                                    const LegOptions& options = {});

}  // namespace arp
