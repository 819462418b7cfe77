#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "arp/errors.hpp"
#include "arp/problem.hpp"

namespace arp {

namespace {

using nlohmann::json;

json elements_json(const OrbitalElements& el, int id) {
  return json{{"id", id},           {"epoch_mjd", el.epoch}, {"a_km", el.a},
              {"e", el.e},          {"i_rad", el.i},         {"raan_rad", el.raan},
              {"argp_rad", el.argp}, {"M0_rad", el.M0}};
}

OrbitalElements elements_from(const json& j) {
  OrbitalElements el;
  el.epoch = j.at("epoch_mjd").get<double>();
  el.a = j.at("a_km").get<double>();
  el.e = j.at("e").get<double>();
  el.i = j.at("i_rad").get<double>();
  el.raan = j.at("raan_rad").get<double>();
  el.argp = j.at("argp_rad").get<double>();
  el.M0 = j.at("M0_rad").get<double>();
  return el;
}

}  // namespace

void write_instance(std::ostream& out, const Instance& instance) {
  json asteroids = json::array();
  for (std::size_t k = 0; k < instance.asteroids.size(); ++k) {
    asteroids.push_back(elements_json(instance.asteroids[k], instance.asteroid_ids[k]));
  }
  json j;
  j["name"] = instance.name;
  j["n"] = instance.n;
  j["seed"] = instance.seed;
  j["tau0"] = instance.tau0;
  j["mu"] = instance.mu.value();
  j["earth"] = elements_json(instance.earth, 0);
  j["asteroids"] = std::move(asteroids);
  out << j.dump(2) << '\n';
}

void save_instance(const std::filesystem::path& path, const Instance& instance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_instance(out, instance);
}

Instance read_instance(std::istream& in) {
  Instance inst;
  try {
    const json j = json::parse(in);
    inst.name = j.at("name").get<std::string>();
    inst.n = j.at("n").get<int>();
    inst.seed = j.at("seed").get<std::uint64_t>();
    inst.tau0 = j.value("tau0", kDefaultTau0);
    inst.mu = GravParam(j.value("mu", kMuSun));
    inst.earth = elements_from(j.at("earth"));
    for (const auto& a : j.at("asteroids")) {
      inst.asteroid_ids.push_back(a.at("id").get<int>());
      inst.asteroids.push_back(elements_from(a));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance JSON: ") + e.what(), 0);
  } catch (const DomainError& e) {
    throw ValidationError(std::string("instance JSON: ") + e.what(), 0);
  }
  inst.validate();
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance " + path.string(), 0);
  return read_instance(in);
}

}  // namespace arp
