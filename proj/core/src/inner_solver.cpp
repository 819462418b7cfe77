#include "arp/inner_solver.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "arp/errors.hpp"
#include "arp/lambert.hpp"

namespace arp {

namespace {

using Mat2 = Eigen::Matrix2d;

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 40;

// Exact minimizer of g.d + d'Bd/2 over lo <= d <= hi for positive definite B.
// Every variable is free, at its lower bound or at its upper bound; the
// optimum is the best feasible stationary point among the nine patterns.
Vec2 solve_box_qp(const Mat2& B, const Vec2& g, const Vec2& lo, const Vec2& hi) {
  auto model = [&](const Vec2& d) { return g.dot(d) + 0.5 * d.dot(B * d); };
  constexpr double kSlack = 1e-12;

  Vec2 best = Vec2::Zero();
  double best_value = 0.0;  // d = 0 is always feasible
  for (int s0 = 0; s0 < 3; ++s0) {
    for (int s1 = 0; s1 < 3; ++s1) {
      const int state[2] = {s0, s1};  // 0 free, 1 lower, 2 upper
      Vec2 d = Vec2::Zero();
      for (int k = 0; k < 2; ++k) {
        if (state[k] == 1) d[k] = lo[k];
        if (state[k] == 2) d[k] = hi[k];
      }
      if (state[0] == 0 && state[1] == 0) {
        d = B.ldlt().solve(-g);
      } else if (state[0] == 0) {
        d[0] = -(g[0] + B(0, 1) * d[1]) / B(0, 0);
      } else if (state[1] == 0) {
        d[1] = -(g[1] + B(1, 0) * d[0]) / B(1, 1);
      }
      if (!d.allFinite()) continue;
      if ((d.array() < lo.array() - kSlack).any() || (d.array() > hi.array() + kSlack).any()) {
        continue;
      }
      d = d.cwiseMax(lo).cwiseMin(hi);
      const double value = model(d);
      if (value < best_value) {
        best_value = value;
        best = d;
      }
    }
  }
  return best;
}

double safe_eval(const Objective2& objective, const Vec2& x) {
  try {
    const double v = objective(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  } catch (const std::exception&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

Vec2 fd_gradient(const Objective2& g, const Vec2& x, double h, const Box2* box) {
  const double g0 = g(x);
  Vec2 grad;
  for (int k = 0; k < 2; ++k) {
    Vec2 probe = x;
    double step = h;
    if (box != nullptr && x[k] + h > box->upper[k]) step = -h;
    probe[k] += step;
    grad[k] = (g(probe) - g0) / step;
  }
  return grad;
}

SqpResult minimize_box(const Objective2& objective, const Vec2& start, const Box2& box,
                       const SqpOptions& options) {
  SqpResult result;
  int evaluations = 0;
  auto eval = [&](const Vec2& x) {
    ++evaluations;
    return safe_eval(objective, x);
  };
  auto gradient = [&](const Vec2& x, double fx) {
    Vec2 grad;
    for (int k = 0; k < 2; ++k) {
      Vec2 probe = x;
      double step = options.fd_step;
      if (x[k] + step > box.upper[k]) step = -step;
      probe[k] += step;
      double fp = eval(probe);
      if (!std::isfinite(fp)) {
        step = -step;
        probe = x;
        probe[k] += step;
        fp = eval(probe);
      }
      grad[k] = (fp - fx) / step;
    }
    return grad;
  };

  Vec2 x = box.project(start);
  double f = eval(x);
  if (!std::isfinite(f)) {
    throw DomainError("minimize_box: objective not finite at the start point");
  }
  Vec2 g = gradient(x, f);
  Mat2 B = Mat2::Identity();
  bool fresh_hessian = true;

  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (!g.allFinite()) break;
    const Vec2 d = solve_box_qp(B, g, box.lower - x, box.upper - x);
    if (d.norm() < options.tolerance) {
      result.converged = true;
      break;
    }
    const double slope = g.dot(d);
    if (!(slope < 0.0)) {
      if (fresh_hessian) {
        result.converged = true;
        break;
      }
      B.setIdentity();
      fresh_hessian = true;
      continue;
    }

    double alpha = 1.0;
    bool accepted = false;
    Vec2 x_new = x;
    double f_new = f;
    for (int ls = 0; ls < kMaxBacktracks; ++ls) {
      x_new = box.project(x + alpha * d);
      f_new = eval(x_new);
      if (std::isfinite(f_new) && f_new <= f + kArmijo * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      if (fresh_hessian) break;
      B.setIdentity();
      fresh_hessian = true;
      continue;
    }

    const Vec2 g_new = gradient(x_new, f_new);
    const Vec2 s = x_new - x;
    Vec2 y = g_new - g;
    const Vec2 Bs = B * s;
    const double sBs = s.dot(Bs);
    double sy = s.dot(y);
    if (sBs > 0.0 && y.allFinite()) {
      // Powell damping keeps B positive definite.
      if (sy < 0.2 * sBs) {
        const double theta = 0.8 * sBs / (sBs - sy);
        y = theta * y + (1.0 - theta) * Bs;
        sy = s.dot(y);
      }
      if (sy > 0.0) {
        B += y * y.transpose() / sy - Bs * Bs.transpose() / sBs;
        fresh_hessian = false;
      }
    }

    const double decrease = f - f_new;
    x = x_new;
    f = f_new;
    g = g_new;
    if (std::abs(decrease) < options.tolerance || s.norm() < options.tolerance) {
      result.converged = true;
      ++it;
      break;
    }
  }

  result.x = x;
  result.f = f;
  result.iterations = it;
  result.evaluations = evaluations;
  return result;
}

double leg_cost(const OrbitalElements& from, const OrbitalElements& to, double tau,
                const Vec2& times, const GravParam& mu) {
  const ImpulsePair pair = transfer_impulses(from, to, tau + times[0], times[1], mu);
  return pair.total() + kTimeWeight * (times[0] + times[1]);
}

LegResult optimize_leg(const OrbitalElements& from, const OrbitalElements& to, double tau,
                       const GravParam& mu, const LegOptions& options) {
  const Objective2 objective = [&](const Vec2& t) { return leg_cost(from, to, tau, t, mu); };
  const Box2 box = leg_box();

  SqpResult sqp;
  try {
    sqp = minimize_box(objective, options.start, box, options.sqp);
  } catch (const DomainError& e) {
    throw EvaluationError(std::string("leg start point not evaluable: ") + e.what(), 0);
  }

  LegResult leg;
  leg.t_park = sqp.x[0];
  leg.t_transit = sqp.x[1];
  leg.f_leg = sqp.f;
  leg.dv_leg = sqp.f - kTimeWeight * (sqp.x[0] + sqp.x[1]);
  leg.iterations = sqp.iterations;
  leg.converged = sqp.converged;
  return leg;
}

}  // namespace arp
