#include "arp/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Geometry>

#include "arp/errors.hpp"

namespace arp {

namespace {

constexpr double kKeplerTol = 1e-13;
constexpr int kNewtonIterations = 50;
constexpr double kDegenerate = 1e-11;

// Stumpff functions C(z) and S(z); power series on |z| < 1 where the closed
// forms lose digits.
template <typename Real>
void stumpff(Real z, Real& c, Real& s) {
  if (std::abs(z) < 1.0) {
    Real term_c = 0.5;
    Real term_s = Real(1) / 6;
    c = term_c;
    s = term_s;
    for (int k = 1; k < 14; ++k) {
      term_c *= -z / ((2 * k + 1) * (2 * k + 2));
      term_s *= -z / ((2 * k + 2) * (2 * k + 3));
      c += term_c;
      s += term_s;
    }
    return;
  }
  if (z > 0) {
    const Real sz = std::sqrt(z);
    const Real half = std::sin(sz / 2);
    c = 2 * half * half / z;
    s = (sz - std::sin(sz)) / (z * sz);
  } else {
    const Real sz = std::sqrt(-z);
    c = (std::cosh(sz) - 1) / (-z);
    s = (std::sinh(sz) - sz) / (-z * sz);
  }
}

}  // namespace

GravParam::GravParam(double mu) : mu_(mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError("gravitational parameter must be positive and finite");
  }
}

void OrbitalElements::validate() const {
  if (!std::isfinite(a) || !std::isfinite(e) || !std::isfinite(i) ||
      !std::isfinite(raan) || !std::isfinite(argp) || !std::isfinite(M0) ||
      !std::isfinite(epoch)) {
    throw DomainError("orbital elements must be finite");
  }
  if (!(a > 0.0)) throw DomainError("semi-major axis must be positive");
  if (!(e >= 0.0 && e < 1.0)) {
    throw DomainError("eccentricity " + std::to_string(e) +
                      " outside [0, 1); only elliptic orbits are supported");
  }
}

double wrap_two_pi(double angle) {
  double w = std::fmod(angle, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

double solve_kepler(double mean_anomaly, double e) {
  if (!(e >= 0.0 && e < 1.0)) {
    throw DomainError("solve_kepler: eccentricity outside [0, 1)");
  }
  if (!std::isfinite(mean_anomaly)) {
    throw DomainError("solve_kepler: mean anomaly must be finite");
  }
  if (e == 0.0) return mean_anomaly;

  const double branch = std::round(mean_anomaly / kTwoPi) * kTwoPi;
  const double m = mean_anomaly - branch;  // [-pi, pi]
  auto residual = [&](double E) { return E - e * std::sin(E) - m; };

  double E = (e > 0.8 && m != 0.0) ? std::copysign(kPi, m) : m;
  for (int it = 0; it < kNewtonIterations; ++it) {
    const double f = residual(E);
    const double step = f / (1.0 - e * std::cos(E));
    // One last step after the tolerance is met brings E to full precision.
    if (std::abs(f) < kKeplerTol) return branch + (E - step);
    E -= step;
  }
  if (std::abs(residual(E)) < kKeplerTol) return branch + E;

  // The residual is monotone in E and changes sign on [-pi, pi].
  double lo = -kPi;
  double hi = kPi;
  E = m;
  for (int it = 0; it < 200; ++it) {
    E = 0.5 * (lo + hi);
    const double f = residual(E);
    if (std::abs(f) < kKeplerTol || hi - lo < 1e-15) break;
    if (f > 0.0) {
      hi = E;
    } else {
      lo = E;
    }
  }
  return branch + E;
}

double true_from_eccentric(double E, double e) {
  return std::atan2(std::sqrt(1.0 - e * e) * std::sin(E), std::cos(E) - e);
}

double eccentric_from_true(double nu, double e) {
  return std::atan2(std::sqrt(1.0 - e * e) * std::sin(nu), e + std::cos(nu));
}

StateVector elements_to_state(const OrbitalElements& el, const GravParam& mu,
                              double at) {
  el.validate();
  const double gm = mu.value();
  const double mean_motion = std::sqrt(gm / (el.a * el.a * el.a));
  const double dt = (at - el.epoch) * kSecondsPerDay;
  const double M = el.M0 + std::fmod(mean_motion * dt, kTwoPi);
  const double E = solve_kepler(M, el.e);

  const double cos_e = std::cos(E);
  const double sin_e = std::sin(E);
  const double b = std::sqrt(1.0 - el.e * el.e);
  const double radius = el.a * (1.0 - el.e * cos_e);

  const double xp = el.a * (cos_e - el.e);
  const double yp = el.a * b * sin_e;
  const double vscale = std::sqrt(gm * el.a) / radius;
  const double vxp = -vscale * sin_e;
  const double vyp = vscale * b * cos_e;

  const double co = std::cos(el.raan), so = std::sin(el.raan);
  const double cw = std::cos(el.argp), sw = std::sin(el.argp);
  const double ci = std::cos(el.i), si = std::sin(el.i);
  const Vec3 p(co * cw - so * sw * ci, so * cw + co * sw * ci, sw * si);
  const Vec3 q(-co * sw - so * cw * ci, -so * sw + co * cw * ci, cw * si);

  StateVector sv;
  sv.r = xp * p + yp * q;
  sv.v = vxp * p + vyp * q;
  sv.epoch = at;
  return sv;
}

OrbitalElements state_to_elements(const StateVector& sv, const GravParam& mu) {
  const double gm = mu.value();
  const Vec3& r = sv.r;
  const Vec3& v = sv.v;
  const double rn = r.norm();
  if (!(rn > 0.0)) throw DomainError("state_to_elements: zero position");

  const double energy = 0.5 * v.squaredNorm() - gm / rn;
  if (!(energy < 0.0)) {
    throw DomainError("state_to_elements: state is not elliptic");
  }

  const Vec3 h = r.cross(v);
  const double hn = h.norm();
  const Vec3 ecc = ((v.squaredNorm() - gm / rn) * r - r.dot(v) * v) / gm;

  OrbitalElements el;
  el.epoch = sv.epoch;
  el.a = -gm / (2.0 * energy);
  el.e = ecc.norm();
  if (!(el.e < 1.0)) {
    throw DomainError("state_to_elements: eccentricity >= 1");
  }

  const double hxy = std::hypot(h.x(), h.y());
  el.i = std::atan2(hxy, h.z());
  const bool equatorial = el.i < kDegenerate || kPi - el.i < kDegenerate;
  const bool circular = el.e < kDegenerate;

  el.raan = equatorial ? 0.0 : wrap_two_pi(std::atan2(h.x(), -h.y()));
  const Vec3 node(std::cos(el.raan), std::sin(el.raan), 0.0);
  const Vec3 normal = h / hn;
  const Vec3 in_plane = normal.cross(node);

  el.argp = circular ? 0.0 : wrap_two_pi(std::atan2(ecc.dot(in_plane), ecc.dot(node)));
  const double latitude = std::atan2(r.dot(in_plane), r.dot(node));
  const double nu = latitude - el.argp;
  const double E = eccentric_from_true(nu, el.e);
  el.M0 = wrap_two_pi(E - el.e * std::sin(E));
  return el;
}

double period(const OrbitalElements& el, const GravParam& mu) {
  return kTwoPi * std::sqrt(el.a * el.a * el.a / mu.value()) / kSecondsPerDay;
}

double specific_energy(const StateVector& sv, const GravParam& mu) {
  return 0.5 * sv.v.squaredNorm() - mu.value() / sv.r.norm();
}

StateVector propagate(const StateVector& sv, const GravParam& mu, double dt) {
  // Extended precision: f and g cancel heavily on fast hyperbolic arcs.
  using Real = long double;
  const Real gm = mu.value();
  const Real sqrt_mu = std::sqrt(gm);
  const Real r0[3] = {sv.r.x(), sv.r.y(), sv.r.z()};
  const Real v0[3] = {sv.v.x(), sv.v.y(), sv.v.z()};
  const Real r0n = std::sqrt(r0[0] * r0[0] + r0[1] * r0[1] + r0[2] * r0[2]);
  const Real rv = r0[0] * v0[0] + r0[1] * v0[1] + r0[2] * v0[2];
  const Real v0sq = v0[0] * v0[0] + v0[1] * v0[1] + v0[2] * v0[2];
  const Real alpha = 2.0L / r0n - v0sq / gm;  // 1/a

  Real seconds = static_cast<Real>(dt) * kSecondsPerDay;
  if (alpha > 0.0L) {
    const Real orbit_period = 2.0L * static_cast<Real>(kPi) / (std::sqrt(gm * alpha) * alpha);
    seconds = std::fmod(seconds, orbit_period);
  }
  if (seconds == 0.0L) {
    StateVector out = sv;
    out.epoch = sv.epoch + dt;
    return out;
  }

  const Real k1 = rv / sqrt_mu;
  const Real k2 = 1.0L - alpha * r0n;
  // Universal Kepler equation F(chi) = sqrt(mu) * t; F' = r > 0, so F is
  // strictly increasing and a sign-change bracket always exists.
  auto kepler = [&](Real x, Real& derivative) {
    Real c, s;
    const Real z = alpha * x * x;
    stumpff(z, c, s);
    const Real x2 = x * x;
    derivative = k1 * x * (1.0L - z * s) + k2 * x2 * c + r0n;
    return k1 * x2 * c + k2 * x2 * x * s + r0n * x - sqrt_mu * seconds;
  };

  Real lo, hi;
  Real slope;
  if (alpha > 0.0L) {
    const Real span = 2.0L * static_cast<Real>(kPi) / std::sqrt(alpha);
    lo = seconds > 0.0L ? 0.0L : -span;
    hi = seconds > 0.0L ? span : 0.0L;
  } else {
    const Real step = sqrt_mu * std::abs(seconds) / r0n;
    lo = seconds > 0.0L ? 0.0L : -step;
    hi = seconds > 0.0L ? step : 0.0L;
    while (seconds > 0.0L && kepler(hi, slope) < 0.0L) {
      lo = hi;
      hi *= 2.0L;
    }
    while (seconds < 0.0L && kepler(lo, slope) > 0.0L) {
      hi = lo;
      lo *= 2.0L;
    }
  }

  const Real eps = 4.0L * std::numeric_limits<Real>::epsilon();
  Real chi = alpha > 0.0L ? std::clamp(sqrt_mu * alpha * seconds, lo, hi) : 0.5L * (lo + hi);
  for (int it = 0; it < 300; ++it) {
    const Real f = kepler(chi, slope);
    if (f == 0.0L) break;
    if (f < 0.0L) {
      lo = chi;
    } else {
      hi = chi;
    }
    Real next = chi - f / slope;
    if (!(next > lo && next < hi)) next = 0.5L * (lo + hi);
    const Real change = std::abs(next - chi);
    chi = next;
    if (change <= eps * std::max(Real(1), std::abs(chi)) || hi - lo <= eps * std::abs(chi)) break;
  }

  Real c, s;
  stumpff(alpha * chi * chi, c, s);
  const Real chi2 = chi * chi;
  const Real f = 1.0L - chi2 / r0n * c;
  const Real g = seconds - chi2 * chi * s / sqrt_mu;
  Real r[3];
  for (int k = 0; k < 3; ++k) r[k] = f * r0[k] + g * v0[k];
  const Real rn = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  const Real fdot = sqrt_mu / (rn * r0n) * (alpha * chi2 * chi * s - chi);
  const Real gdot = 1.0L - chi2 / rn * c;

  StateVector out;
  for (int k = 0; k < 3; ++k) {
    out.r[k] = static_cast<double>(r[k]);
    out.v[k] = static_cast<double>(fdot * r0[k] + gdot * v0[k]);
  }
  out.epoch = sv.epoch + dt;
  return out;
}

}  // namespace arp
