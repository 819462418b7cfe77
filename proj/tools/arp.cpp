// Command line front end: instance generation, evaluation, greedy baseline,
// experiment runs and trajectory export.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "arp/catalog.hpp"
#include "arp/errors.hpp"
#include "arp/experiment.hpp"
#include "arp/optimizers.hpp"
#include "arp/problem.hpp"
#include "arp/trajectory.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

arp::TimeVector parse_times(const std::string& text) {
  arp::TimeVector t;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    try {
      std::size_t used = 0;
      t.push_back(std::stod(token, &used));
    } catch (const std::exception&) {
      throw UsageError("cannot parse time '" + token + "'");
    }
  }
  return t;
}

arp::Permutation parse_order(const std::string& text, const arp::Instance& inst,
                             arp::Representation repr) {
  arp::Permutation p;
  try {
    p = arp::parse_permutation(text);
  } catch (const arp::DomainError& e) {
    throw UsageError(e.what());
  }
  if (p.size() != inst.n) {
    throw UsageError(fmt::format("permutation has {} entries, instance {} has n = {}", p.size(),
                                 inst.name, inst.n));
  }
  return arp::to_order(p, repr);
}

void print_evaluation(const arp::Evaluation& ev, const arp::Permutation& order,
                      const arp::TimeVector& t) {
  fmt::print("order {}\n", arp::format_permutation(order));
  fmt::print("dv {:.6f} km/s\nT {:.6f} days\nf {:.6f}\n", ev.dv, ev.T, ev.f);
  for (std::size_t k = 0; k < ev.per_leg.size(); ++k) {
    const auto& leg = ev.per_leg[k];
    fmt::print("leg {:>2}: park {:9.4f} d  transit {:9.4f} d  dv {:8.4f} + {:8.4f} km/s\n", k,
               leg.t_park, leg.t_transit, leg.dv_out, leg.dv_in);
  }
  std::string times;
  for (std::size_t k = 0; k < t.size(); ++k) times += fmt::format("{}{}", k ? "," : "", t[k]);
  fmt::print("times {}\n", times);
}

void write_trajectory(const fs::path& path, const arp::Instance& inst, const arp::Permutation& order,
                      const arp::TimeVector& t, int samples) {
  const arp::Trajectory traj = arp::build_trajectory(inst, order, t, samples);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  arp::write_trajectory_json(out, traj);
  fmt::print("trajectory written to {}\n", path.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asteroid routing benchmark: instances, evaluation and optimizer runs"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Draw an instance from a catalog");
  std::string gen_catalog;
  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  double gen_tau0 = arp::kDefaultTau0;
  std::string gen_out = ".";
  gen->add_option("--catalog", gen_catalog, "Catalog CSV (default: built-in synthetic catalog)");
  gen->add_option("-n,--size", gen_n, "Number of asteroids")->required();
  gen->add_option("--seed", gen_seed, "Instance seed")->required();
  gen->add_option("--tau0", gen_tau0, "Start epoch, MJD")->capture_default_str();
  gen->add_option("-o,--out", gen_out, "Output directory, or a .json file path")
      ->capture_default_str();

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Optimize the times of one visiting order");
  std::string ev_instance, ev_perm, ev_traj;
  std::string ev_repr = "order";
  int ev_samples = 64;
  eval->add_option("-i,--instance", ev_instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("-p,--perm", ev_perm, "Permutation, e.g. 2-0-1")->required();
  eval->add_option("--repr", ev_repr, "How --perm is given: order|rank")->capture_default_str();
  eval->add_option("-t,--trajectory", ev_traj, "Trajectory JSON output (default <instance>_traj.json)");
  eval->add_option("--samples", ev_samples, "Samples per arc")->capture_default_str();

  // greedy
  auto* greedy = app.add_subcommand("greedy", "Greedy nearest-neighbour solution");
  std::string gr_instance, gr_traj;
  greedy->add_option("-i,--instance", gr_instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  greedy->add_option("-t,--trajectory", gr_traj, "Also write the trajectory JSON here");

  // run
  auto* run = app.add_subcommand("run", "Repeated optimizer runs with history and summary CSVs");
  std::string run_instance, run_algo = "rs", run_repr = "order", run_out = "results";
  arp::ExperimentSpec spec;
  double umm_decay = spec.umm.decay;
  bool umm_linear = false;
  run->add_option("-i,--instance", run_instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  run->add_option("-a,--algo", run_algo, "greedy|rs|umm|cego")->capture_default_str();
  run->add_option("-r,--repr", run_repr, "order|rank")->capture_default_str();
  run->add_option("-b,--budget", spec.budget, "Objective evaluations per run")->capture_default_str();
  run->add_option("--reps", spec.repetitions, "Repetitions")->capture_default_str();
  run->add_option("--seed", spec.base_seed, "Base seed; run r uses seed + r")->capture_default_str();
  run->add_flag("--greedy-seed", spec.greedy_seed, "Seed the initial design with the greedy solution");
  run->add_option("--init-size", spec.init_design_size, "Initial design size")->capture_default_str();
  run->add_option("-o,--out", run_out, "Output directory")->capture_default_str();
  run->add_option("-j,--jobs", spec.jobs, "Worker threads")->capture_default_str();
  run->add_option("--umm-decay", umm_decay, "UMM geometric rank-weight decay")->capture_default_str();
  run->add_flag("--umm-linear", umm_linear, "UMM linear rank weights (m - k + 1)");

  // export-trajectory
  auto* exp = app.add_subcommand("export-trajectory", "Sampled trajectory JSON of a solution");
  std::string ex_instance, ex_perm, ex_times, ex_out = "trajectory.json", ex_repr = "order";
  int ex_samples = 64;
  exp->add_option("-i,--instance", ex_instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  exp->add_option("-p,--perm", ex_perm, "Permutation")->required();
  exp->add_option("--repr", ex_repr, "How --perm is given: order|rank")->capture_default_str();
  exp->add_option("--times", ex_times,
                  "Comma-separated 2n parking/transit times (default: optimize them)");
  exp->add_option("-o,--out", ex_out, "Output file")->capture_default_str();
  exp->add_option("--samples", ex_samples, "Samples per arc")->capture_default_str();

  // synth-catalog
  auto* synth = app.add_subcommand("synth-catalog", "Write the synthetic catalog as CSV");
  arp::SyntheticCatalogOptions synth_opts;
  std::string synth_out = "catalog.csv";
  synth->add_option("--count", synth_opts.count, "Asteroids")->capture_default_str();
  synth->add_option("--seed", synth_opts.seed, "Seed")->capture_default_str();
  synth->add_option("-o,--out", synth_out, "Output CSV")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; every command line error is a usage error.
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  try {
    if (*gen) {
      if (gen_n < 1) throw UsageError("--size must be >= 1");
      const arp::AsteroidCatalog catalog =
          gen_catalog.empty() ? arp::synthetic_catalog() : arp::load_catalog(gen_catalog);
      const arp::Instance inst = arp::generate_instance(catalog, gen_n, gen_seed, gen_tau0);
      fs::path path = gen_out;
      if (path.extension() != ".json") path /= inst.name + ".json";
      if (path.has_parent_path()) fs::create_directories(path.parent_path());
      arp::save_instance(path, inst);
      fmt::print("{} ({} of {} catalog records from {})\n", path.string(), inst.n, catalog.size(),
                 catalog.source());
    } else if (*eval) {
      const arp::Instance inst = arp::load_instance(ev_instance);
      const arp::Permutation order =
          parse_order(ev_perm, inst, arp::parse_representation(ev_repr));
      const auto [ev, t] = arp::evaluate_sequence(inst, order);
      print_evaluation(ev, order, t);
      write_trajectory(ev_traj.empty() ? fs::path(inst.name + "_traj.json") : fs::path(ev_traj),
                       inst, order, t, ev_samples);
    } else if (*greedy) {
      const arp::Instance inst = arp::load_instance(gr_instance);
      const arp::GreedyResult g = arp::greedy_nn(inst);
      print_evaluation(g.evaluation, g.order, g.times);
      if (!gr_traj.empty()) write_trajectory(gr_traj, inst, g.order, g.times, 64);
    } else if (*run) {
      const arp::Instance inst = arp::load_instance(run_instance);
      spec.algorithm = arp::parse_algorithm(run_algo);
      spec.representation = arp::parse_representation(run_repr);
      spec.output_dir = run_out;
      spec.umm.decay = umm_decay;
      if (umm_linear) spec.umm.weights = arp::UmmWeights::Linear;
      try {
        spec.validate();
      } catch (const arp::DomainError& e) {
        throw UsageError(e.what());
      }
      const auto outcomes = arp::run_experiment(inst, spec);
      int failed = 0;
      for (const auto& o : outcomes) {
        if (o.ok) {
          fmt::print("run {:>3} seed {:>6}  best f {:.4f}  ({:.2f} s)  {}\n", o.run, o.seed, o.best_f,
                     o.wall_s, o.history_path.string());
        } else {
          ++failed;
          fmt::print(stderr, "run {} seed {} failed: {}\n", o.run, o.seed, o.error);
        }
      }
      if (failed > 0) return 1;
    } else if (*exp) {
      const arp::Instance inst = arp::load_instance(ex_instance);
      const arp::Permutation order =
          parse_order(ex_perm, inst, arp::parse_representation(ex_repr));
      arp::TimeVector t;
      if (ex_times.empty()) {
        t = arp::evaluate_sequence(inst, order).second;
      } else {
        t = parse_times(ex_times);
        try {
          arp::validate_times(t, inst.n);
        } catch (const arp::DomainError& e) {
          throw UsageError(e.what());
        }
      }
      write_trajectory(ex_out, inst, order, t, ex_samples);
    } else if (*synth) {
      const arp::AsteroidCatalog catalog = arp::synthetic_catalog(synth_opts);
      std::ofstream out(synth_out, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + synth_out);
      arp::write_catalog(out, catalog);
      fmt::print("{} records written to {}\n", catalog.size(), synth_out);
    }
  } catch (const UsageError& e) {
    fmt::print(stderr, "usage error: {}\n", e.what());
    return kUsageError;
  } catch (const arp::DomainError& e) {
    fmt::print(stderr, "usage error: {}\n", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
