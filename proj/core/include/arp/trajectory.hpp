#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "arp/problem.hpp"

namespace arp {

enum class ArcKind { Park, Transfer };

struct TrajectoryArc {
  ArcKind kind = ArcKind::Park;
  int body = 0;  // catalog id: the body parked on, or the transfer's target
  double t_start = 0.0;
  double t_end = 0.0;
  std::vector<Vec3> positions;   // km, heliocentric
  std::vector<Vec3> velocities;  // km/s, same epochs
};

struct Impulse {
  double epoch = 0.0;
  double dv = 0.0;  // km/s
};

struct Trajectory {
  std::string instance;
  std::vector<int> order;  // catalog ids in visiting order
  Evaluation evaluation;
  std::vector<TrajectoryArc> arcs;  // park, transfer, park, transfer, ...
  std::vector<Impulse> impulses;
};

/// Samples every parking and transfer arc of `order` flown with times t at
/// `samples` evenly spaced epochs (endpoints included). Parking arcs follow
/// the body's orbit; transfer arcs propagate the Lambert departure state.
Trajectory build_trajectory(const Instance& instance, const Permutation& order,
                            const TimeVector& t, int samples = 64);

// {legs: [{kind, body, t_start_mjd, t_end_mjd, samples, velocities}],
//  impulses: [{epoch_mjd, dv_kms}], instance, order, f, dv, T}
void write_trajectory_json(std::ostream& out, const Trajectory& trajectory);

}  // namespace arp
