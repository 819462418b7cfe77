#pragma once

#include "arp/orbits.hpp"

namespace arp {

struct LambertSolution {
  Vec3 v1 = Vec3::Zero();  // departure velocity, km/s
  Vec3 v2 = Vec3::Zero();  // arrival velocity, km/s
  int iterations = 0;
  bool converged = false;
};

struct ImpulsePair {
  Vec3 dv1 = Vec3::Zero();
  Vec3 dv2 = Vec3::Zero();

  double total() const { return dv1.norm() + dv2.norm(); }
};

/// Zero-revolution prograde Lambert arc from r1 to r2 in `tof` days.
///
/// The time-of-flight equation is written in the Lancaster-Blanchard
/// variable x and solved with third-order Householder steps (relative
/// tolerance 1e-11 on the non-dimensional time, at most 60 iterations).
/// The transfer plane is oriented so the angular momentum has a positive
/// z component; when r1 and r2 are within 1e-6 rad of anti-parallel the plane
/// normal is taken from the ecliptic pole instead.
///
/// Throws DomainError for tof <= 0 or zero radii, SingularGeometryError when
/// no transfer plane can be defined, ConvergenceError past the iteration cap.
LambertSolution lambert(const Vec3& r1, const Vec3& r2, double tof,
                        const GravParam& mu);

// Rendezvous impulses of a transfer leaving orbit `from` at epoch `tau` and
// arriving on orbit `to` after `transit` days.
ImpulsePair transfer_impulses(const OrbitalElements& from, const OrbitalElements& to,
                              double tau, double transit, const GravParam& mu);

}  // namespace arp
