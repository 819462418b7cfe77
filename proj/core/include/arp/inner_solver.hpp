#pragma once

#include <functional>

#include <Eigen/Core>

#include "arp/orbits.hpp"

namespace arp {

using Vec2 = Eigen::Vector2d;

// Parking and transit time bounds, days.
inline constexpr double kParkMin = 0.0;
inline constexpr double kParkMax = 730.0;
inline constexpr double kTransitMin = 1.0;
inline constexpr double kTransitMax = 730.0;

// Objective weight on elapsed time: 2 km/s per 30 days.
inline constexpr double kTimeWeight = 2.0 / 30.0;

inline constexpr double kDefaultFdStep = 1.49e-08;

struct Box2 {
  Vec2 lower;
  Vec2 upper;

  Vec2 project(const Vec2& x) const { return x.cwiseMax(lower).cwiseMin(upper); }
  bool contains(const Vec2& x) const {
    return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
  }
};

inline Box2 leg_box() { return Box2{Vec2(kParkMin, kTransitMin), Vec2(kParkMax, kTransitMax)}; }

using Objective2 = std::function<double(const Vec2&)>;

// Two-point forward differences with absolute step h. With a box, a
// coordinate whose forward point would leave the box is differenced
// backwards instead.
Vec2 fd_gradient(const Objective2& g, const Vec2& x, double h = kDefaultFdStep,
                 const Box2* box = nullptr);

struct SqpOptions {
  int max_iterations = 1000;
  // Stop once either the step norm or the objective decrease falls below this.
  double tolerance = 1e-8;
  double fd_step = kDefaultFdStep;
};

struct SqpResult {
  Vec2 x = Vec2::Zero();
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Bounded sequential quadratic programming for two variables.
///
/// Each iteration solves the box-constrained quadratic model
/// min g.d + d'Bd/2 over lower <= x + d <= upper exactly (active-set
/// enumeration), backtracks along d until the Armijo condition holds, and
/// refreshes B with a damped BFGS update. Iterates never leave the box.
/// Non-finite objective values are treated as infeasible and rejected by the
/// line search. Throws DomainError if the objective is not finite at `start`.
SqpResult minimize_box(const Objective2& objective, const Vec2& start, const Box2& box,
                       const SqpOptions& options = {});

struct LegResult {
  double t_park = 0.0;
  double t_transit = 0.0;
  double dv_leg = 0.0;  // |dv1| + |dv2|, km/s
  double f_leg = 0.0;   // dv_leg + kTimeWeight * (t_park + t_transit)
  int iterations = 0;
  bool converged = false;
};

// Leg objective at (parking, transit): departure at tau + parking.
double leg_cost(const OrbitalElements& from, const OrbitalElements& to, double tau,
                const Vec2& times, const GravParam& mu);

struct LegOptions {
  Vec2 start{0.0, 30.0};
  SqpOptions sqp{};
};

/// Optimizes parking and transit time of one leg from orbit `from` (spacecraft
/// on it at epoch `tau`) to orbit `to`, starting from (0, 30) days.
/// Deterministic. Throws EvaluationError (leg 0) when the start point cannot
/// be evaluated.
LegResult optimize_leg(const OrbitalElements& from, const OrbitalElements& to, double tau,
                       const GravParam& mu, const LegOptions& options = {});

}  // namespace arp
