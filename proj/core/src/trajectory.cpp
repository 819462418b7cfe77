#include "arp/trajectory.hpp"

#include <ostream>

#include <nlohmann/json.hpp>

#include "arp/errors.hpp"
#include "arp/lambert.hpp"

namespace arp {

namespace {

std::vector<double> sample_epochs(double t0, double t1, int samples) {
  std::vector<double> out(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    out[static_cast<std::size_t>(k)] =
        k == samples - 1 ? t1 : t0 + (t1 - t0) * static_cast<double>(k) / (samples - 1);
  }
  return out;
}

}  // namespace

Trajectory build_trajectory(const Instance& instance, const Permutation& order,
                            const TimeVector& t, int samples) {
  if (samples < 2) throw DomainError("build_trajectory: need at least two samples per arc");
  Trajectory traj;
  traj.instance = instance.name;
  traj.evaluation = evaluate_full(instance, order, t);

  const OrbitalElements* body = &instance.earth;
  int body_id = 0;
  double tau = instance.tau0;
  for (int leg = 0; leg < instance.n; ++leg) {
    const auto k = static_cast<std::size_t>(order[leg]);
    const OrbitalElements& target = instance.asteroids[k];
    const int target_id = instance.asteroid_ids[k];
    traj.order.push_back(target_id);
    const double park = t[2 * static_cast<std::size_t>(leg)];
    const double transit = t[2 * static_cast<std::size_t>(leg) + 1];
    const double depart = tau + park;
    const double arrive = depart + transit;

    TrajectoryArc parking{ArcKind::Park, body_id, tau, depart, {}, {}};
    for (double e : sample_epochs(tau, depart, samples)) {
      const StateVector sv = elements_to_state(*body, instance.mu, e);
      parking.positions.push_back(sv.r);
      parking.velocities.push_back(sv.v);
    }
    traj.arcs.push_back(std::move(parking));

    const StateVector from = elements_to_state(*body, instance.mu, depart);
    const StateVector to = elements_to_state(target, instance.mu, arrive);
    const LambertSolution sol = lambert(from.r, to.r, transit, instance.mu);
    const StateVector start{from.r, sol.v1, depart};
    TrajectoryArc transfer{ArcKind::Transfer, target_id, depart, arrive, {}, {}};
    for (double e : sample_epochs(depart, arrive, samples)) {
      const StateVector sv = propagate(start, instance.mu, e - depart);
      transfer.positions.push_back(sv.r);
      transfer.velocities.push_back(sv.v);
    }
    traj.arcs.push_back(std::move(transfer));

    traj.impulses.push_back({depart, (sol.v1 - from.v).norm()});
    traj.impulses.push_back({arrive, (to.v - sol.v2).norm()});

    body = &target;
    body_id = target_id;
    tau = arrive;
  }
  return traj;
}

void write_trajectory_json(std::ostream& out, const Trajectory& trajectory) {
  using nlohmann::json;
  auto triples = [](const std::vector<Vec3>& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back({p.x(), p.y(), p.z()});
    return a;
  };
  json legs = json::array();
  for (const auto& arc : trajectory.arcs) {
    legs.push_back({{"kind", arc.kind == ArcKind::Park ? "park" : "transfer"},
                    {"body", arc.body},
                    {"t_start_mjd", arc.t_start},
                    {"t_end_mjd", arc.t_end},
                    {"samples", triples(arc.positions)},
                    {"velocities", triples(arc.velocities)}});
  }
  json impulses = json::array();
  for (const auto& imp : trajectory.impulses) {
    impulses.push_back({{"epoch_mjd", imp.epoch}, {"dv_kms", imp.dv}});
  }
  json j;
  j["instance"] = trajectory.instance;
  j["order"] = trajectory.order;
  j["f"] = trajectory.evaluation.f;
  j["dv"] = trajectory.evaluation.dv;
  j["T"] = trajectory.evaluation.T;
  j["legs"] = std::move(legs);
  j["impulses"] = std::move(impulses);
  out << j.dump() << '\n';
}

}  // namespace arp
