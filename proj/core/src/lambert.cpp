#include "arp/lambert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Geometry>

#include "arp/errors.hpp"

namespace arp {

namespace {

constexpr double kTimeTol = 1e-11;
constexpr int kMaxIterations = 60;
constexpr double kAntiParallelTol = 1e-6;

// 2F1(3, 1; 5/2; z), used by Battin's series near the parabola.
double hypergeometric(double z) {
  double sum = 1.0;
  double term = 1.0;
  for (int j = 0; j < 1000; ++j) {
    term *= (3.0 + j) * (1.0 + j) / (2.5 + j) * z / (j + 1.0);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
  }
  return sum;
}

// Non-dimensional time of flight as a function of x for a fixed lambda.
class TimeOfFlight {
 public:
  explicit TimeOfFlight(double lambda) : lambda_(lambda) {}

  double operator()(double x) const {
    const double dist = std::abs(x - 1.0);
    if (dist < 0.2 && dist > 0.01) return lagrange(x);

    const double k = lambda_ * lambda_;
    const double e = x * x - 1.0;
    const double rho = std::abs(e);
    const double z = std::sqrt(1.0 + k * e);
    if (dist <= 0.01) {
      const double eta = z - lambda_ * x;
      const double s1 = 0.5 * (1.0 - lambda_ - x * eta);
      const double q = 4.0 / 3.0 * hypergeometric(s1);
      return (eta * eta * eta * q + 4.0 * lambda_ * eta) / 2.0;
    }
    const double y = std::sqrt(rho);
    const double g = x * z - lambda_ * e;
    double d;
    if (e < 0.0) {
      d = std::acos(std::clamp(g, -1.0, 1.0));
    } else {
      const double f = y * (z - lambda_ * x);
      d = std::log(f + g);
    }
    return (x - lambda_ * z - d / y) / e;
  }

  // First three derivatives of T(x), given T at x.
  void derivatives(double x, double t, double& d1, double& d2, double& d3) const {
    const double l2 = lambda_ * lambda_;
    const double l3 = l2 * lambda_;
    const double umx2 = 1.0 - x * x;
    const double y = std::sqrt(1.0 - l2 * umx2);
    const double y2 = y * y;
    const double y3 = y2 * y;
    d1 = 1.0 / umx2 * (3.0 * t * x - 2.0 + 2.0 * l3 * x / y);
    d2 = 1.0 / umx2 * (3.0 * t + 5.0 * x * d1 + 2.0 * (1.0 - l2) * l3 / y3);
    d3 = 1.0 / umx2 *
         (7.0 * x * d2 + 8.0 * d1 - 6.0 * (1.0 - l2) * l2 * l3 * x / y3 / y2);
  }

 private:
  double lagrange(double x) const {
    const double a = 1.0 / (1.0 - x * x);
    if (a > 0.0) {
      const double alpha = 2.0 * std::acos(x);
      double beta = 2.0 * std::asin(std::sqrt(lambda_ * lambda_ / a));
      if (lambda_ < 0.0) beta = -beta;
      return a * std::sqrt(a) * ((alpha - std::sin(alpha)) - (beta - std::sin(beta))) / 2.0;
    }
    const double alpha = 2.0 * std::acosh(x);
    double beta = 2.0 * std::asinh(std::sqrt(-lambda_ * lambda_ / a));
    if (lambda_ < 0.0) beta = -beta;
    return -a * std::sqrt(-a) * ((beta - std::sinh(beta)) - (alpha - std::sinh(alpha))) / 2.0;
  }

  double lambda_;
};

}  // namespace

LambertSolution lambert(const Vec3& r1, const Vec3& r2, double tof, const GravParam& mu) {
  if (!(tof > 0.0) || !std::isfinite(tof)) {
    throw DomainError("lambert: time of flight must be positive");
  }
  const double r1n = r1.norm();
  const double r2n = r2.norm();
  if (!(r1n > 0.0) || !(r2n > 0.0)) {
    throw DomainError("lambert: position vectors must be non-zero");
  }

  const double gm = mu.value();
  const Vec3 chord = r2 - r1;
  const double cn = chord.norm();
  const double s = 0.5 * (r1n + r2n + cn);
  const Vec3 ir1 = r1 / r1n;
  const Vec3 ir2 = r2 / r2n;
  const Vec3 cross = ir1.cross(ir2);
  const double angle = std::atan2(cross.norm(), ir1.dot(ir2));

  double lambda = std::sqrt(std::max(0.0, 1.0 - cn / s));
  Vec3 it1, it2;
  if (kPi - angle < kAntiParallelTol) {
    const Vec3 pole(0.0, 0.0, 1.0);
    Vec3 ih = pole - pole.dot(ir1) * ir1;
    if (ih.norm() < 1e-12) {
      throw SingularGeometryError(
          "lambert: anti-parallel radii along the ecliptic pole; transfer plane undefined");
    }
    ih.normalize();
    if (ih.dot(cross) < 0.0) lambda = -lambda;
    it1 = ih.cross(ir1).normalized();
    it2 = ih.cross(ir2).normalized();
  } else {
    if (cross.norm() < 1e-14 || cn == 0.0) {
      throw SingularGeometryError("lambert: parallel radii; transfer plane undefined");
    }
    const Vec3 ih = cross.normalized();
    if (ih.z() < 0.0) {
      lambda = -lambda;
      it1 = ir1.cross(ih).normalized();
      it2 = ir2.cross(ih).normalized();
    } else {
      it1 = ih.cross(ir1).normalized();
      it2 = ih.cross(ir2).normalized();
    }
  }

  const double target = std::sqrt(2.0 * gm / (s * s * s)) * tof * kSecondsPerDay;
  const TimeOfFlight time_of_flight(lambda);

  const double l2 = lambda * lambda;
  const double t00 = std::acos(lambda) + lambda * std::sqrt(1.0 - l2);
  const double t1 = 2.0 / 3.0 * (1.0 - l2 * lambda);
  double x;
  if (target >= t00) {
    x = std::pow(t00 / target, 2.0 / 3.0) - 1.0;
  } else if (target < t1) {
    x = 2.5 * t1 / target * (t1 - target) / (1.0 - l2 * l2 * lambda) + 1.0;
  } else {
    x = std::pow(t00 / target, std::log(2.0) / std::log(t00 / t1)) - 1.0;
  }

  LambertSolution sol;
  double residual = 0.0;
  for (int it = 0; it <= kMaxIterations; ++it) {
    const double t = time_of_flight(x);
    residual = t - target;
    if (std::abs(residual) <= kTimeTol * target) {
      sol.converged = true;
      sol.iterations = it;
      break;
    }
    if (it == kMaxIterations) break;
    double d1, d2, d3;
    time_of_flight.derivatives(x, t, d1, d2, d3);
    const double d1sq = d1 * d1;
    double next = x - residual * (d1sq - residual * d2 / 2.0) /
                          (d1 * (d1sq - residual * d2) + d3 * residual * residual / 6.0);
    if (!std::isfinite(next)) break;
    if (next <= -1.0) next = 0.5 * (x - 1.0);
    x = next;
  }
  if (!sol.converged) {
    std::ostringstream msg;
    msg << "lambert: no convergence after " << kMaxIterations
        << " iterations (tof=" << tof << " d, lambda=" << lambda
        << ", x=" << x << ", relative residual=" << residual / target << ")";
    throw ConvergenceError(msg.str(), kMaxIterations, residual / target);
  }

  const double y = std::sqrt(1.0 - l2 * (1.0 - x * x));
  const double gamma = std::sqrt(gm * s / 2.0);
  const double rho = (r1n - r2n) / cn;
  const double sigma = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  const double vr1 = gamma * ((lambda * y - x) - rho * (lambda * y + x)) / r1n;
  const double vr2 = -gamma * ((lambda * y - x) + rho * (lambda * y + x)) / r2n;
  const double vt = gamma * sigma * (y + lambda * x);
  sol.v1 = vr1 * ir1 + (vt / r1n) * it1;
  sol.v2 = vr2 * ir2 + (vt / r2n) * it2;
  return sol;
}

ImpulsePair transfer_impulses(const OrbitalElements& from, const OrbitalElements& to,
                              double tau, double transit, const GravParam& mu) {
  const StateVector departure = elements_to_state(from, mu, tau);
  const StateVector arrival = elements_to_state(to, mu, tau + transit);
  const LambertSolution arc = lambert(departure.r, arrival.r, transit, mu);
  ImpulsePair pair;
  pair.dv1 = arc.v1 - departure.v;
  pair.dv2 = arrival.v - arc.v2;
  return pair;
}

}  // namespace arp
