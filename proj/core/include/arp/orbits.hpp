#pragma once

#include <Eigen/Core>

namespace arp {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kAuKm = 1.495978707e8;
// Heliocentric gravitational parameter, km^3/s^2.
inline constexpr double kMuSun = 1.32712440018e11;

// Gravitational parameter mu in km^3/s^2.
class GravParam {
 public:
  explicit GravParam(double mu = kMuSun);
  double value() const noexcept { return mu_; }

 private:
  double mu_;
};

/// Keplerian elements at a reference epoch.
///
/// Lengths in km, angles in radians reduced to [0, 2*pi), epoch in MJD days.
/// Only elliptic orbits (0 <= e < 1) are representable.
struct OrbitalElements {
  double a = 0.0;
  double e = 0.0;
  double i = 0.0;
  double raan = 0.0;
  double argp = 0.0;
  double M0 = 0.0;
  double epoch = 0.0;

  // Throws DomainError unless a > 0, 0 <= e < 1 and all values are finite.
  void validate() const;
};

struct StateVector {
  Vec3 r = Vec3::Zero();  // km
  Vec3 v = Vec3::Zero();  // km/s
  double epoch = 0.0;     // MJD days
};

// Reduce an angle to [0, 2*pi).
double wrap_two_pi(double angle);

// Solves E - e sin E = M for the eccentric anomaly on the same 2*pi branch as M.
// Newton from M (from +-pi when e > 0.8) with bisection fallback; the residual
// is driven below 1e-13, then one more Newton step is taken. Throws DomainError
// for e outside [0, 1).
double solve_kepler(double mean_anomaly, double e);

double true_from_eccentric(double E, double e);
double eccentric_from_true(double nu, double e);

// Position and velocity at `at` (days, either side of el.epoch).
StateVector elements_to_state(const OrbitalElements& el, const GravParam& mu,
                              double at);

// Inverse of elements_to_state. The returned epoch equals sv.epoch.
// Circular orbits (e < 1e-11) get argp = 0 with the anomaly measured from the
// ascending node; equatorial orbits (i < 1e-11) get raan = 0.
// Throws DomainError for parabolic or hyperbolic states.
OrbitalElements state_to_elements(const StateVector& sv, const GravParam& mu);

// Orbital period in days.
double period(const OrbitalElements& el, const GravParam& mu);

// v^2/2 - mu/r in km^2/s^2.
double specific_energy(const StateVector& sv, const GravParam& mu);

// Two-body propagation of an arbitrary conic state by dt days, via the
// universal-variable Kepler equation. Used for Lambert arcs, which may be
// hyperbolic.
StateVector propagate(const StateVector& sv, const GravParam& mu, double dt);

}  // namespace arp
