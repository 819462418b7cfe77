#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "arp/orbits.hpp"
#include "arp/problem.hpp"

namespace arp::testing {

inline OrbitalElements circular(double a_au, double M0 = 0.0, double i = 0.0,
                                double epoch = kDefaultTau0) {
  OrbitalElements el;
  el.a = a_au * kAuKm;
  el.M0 = M0;
  el.i = i;
  el.epoch = epoch;
  return el;
}

// Earth-like start orbit and asteroid orbits given directly.
inline Instance make_instance(const std::vector<OrbitalElements>& asteroids,
                              const OrbitalElements& earth = circular(1.0),
                              std::string name = "fixture") {
  Instance inst;
  inst.n = static_cast<int>(asteroids.size());
  inst.name = std::move(name);
  inst.tau0 = kDefaultTau0;
  inst.earth = earth;
  inst.asteroids = asteroids;
  for (int k = 0; k < inst.n; ++k) inst.asteroid_ids.push_back(k + 1);
  return inst;
}

// Instance drawn from the built-in synthetic catalog.
inline Instance synthetic_instance(int n, std::uint64_t seed) {
  static const AsteroidCatalog catalog = synthetic_catalog();
  return generate_instance(catalog, n, seed);
}

// Exhaustive grid over one leg's (parking, transit) box.
struct GridOptimum {
  double f = 0.0;
  double park = 0.0;
  double transit = 0.0;
};

inline GridOptimum grid_leg(const OrbitalElements& from, const OrbitalElements& to, double tau,
                            double step, const GravParam& mu = GravParam()) {
  GridOptimum best{INFINITY, 0.0, 0.0};
  const int np = static_cast<int>(std::round((kParkMax - kParkMin) / step));
  const int nt = static_cast<int>(std::round((kTransitMax - kTransitMin) / step));
  for (int a = 0; a <= np; ++a) {
    for (int b = 0; b <= nt; ++b) {
      const Vec2 x(kParkMin + a * step, kTransitMin + b * step);
      double f = INFINITY;
      try {
        f = leg_cost(from, to, tau, x, mu);
      } catch (const std::exception&) {
        continue;
      }
      if (f < best.f) best = {f, x[0], x[1]};
    }
  }
  return best;
}

}  // namespace arp::testing
