// Command-line front end: tessellation, chain solves, mobility simulation and
// the batch experiments, all file-based and reproducible from a single seed.
//
// Exit codes: 0 ok, 1 usage, 2 bad input, 3 degenerate input.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ltd/chain.hpp"
#include "ltd/errors.hpp"
#include "ltd/experiments.hpp"
#include "ltd/geometry.hpp"
#include "ltd/mobility.hpp"
#include "ltd/parallel.hpp"
#include "ltd/scenario_io.hpp"
#include "ltd/tessellation.hpp"
#include "ltd/tile_measure.hpp"

namespace {

using namespace ltd;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// --- tessellate -------------------------------------------------------------

struct TessellateOptions {
  std::string scenario_path;
  std::vector<std::string> random_spec;  // n radius seed
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  int jobs = 0;
  int neighbour_cap = kDefaultNeighbourCap;
  std::string out_path;
};

Scenario make_scenario(const TessellateOptions& opt) {
  if (!opt.random_spec.empty()) {
    int n = 0;
    double radius = 0.0;
    std::uint64_t seed = 0;
    try {
      n = std::stoi(opt.random_spec[0]);
      radius = std::stod(opt.random_spec[1]);
      seed = std::stoull(opt.random_spec[2]);
    } catch (const std::exception&) {
      throw InputError("--random expects N RADIUS SEED");
    }
    if (n > opt.neighbour_cap)
      throw CapacityError("--random asks for " + std::to_string(n) + " neighbours; cap is " +
                          std::to_string(opt.neighbour_cap));
    return generate_random_scenario(n, radius, seed);
  }
  return load_scenario(opt.scenario_path, opt.neighbour_cap);
}

int cmd_tessellate(const TessellateOptions& opt) {
  const Scenario scenario = make_scenario(opt);
  const TileMeasure measure = estimate_tessellation(scenario, opt.samples, opt.seed, opt.jobs);

  std::printf("neighbours: %d   tiles: %zu   samples: %" PRIu64 "\n", measure.n_neighbours(),
              measure.n_tiles(), measure.sample_count());
  std::printf("%-12s %5s %12s %12s\n", "tile", "order", "mass", "std_err");
  std::size_t shown = 0;
  for (std::size_t t = 0; t < measure.n_tiles(); ++t) {
    const NeighborSet tile(static_cast<NeighborSet::mask_type>(t));
    if (measure.mass(tile) <= 0.0) continue;
    std::printf("%-12s %5d %12.6f %12.6f\n", tile.to_string().c_str(), tile.order(),
                measure.mass(tile), measure.std_err(tile));
    ++shown;
  }
  if (shown < measure.n_tiles())
    std::printf("(%zu zero-mass tiles not shown)\n", measure.n_tiles() - shown);

  double max_se = 0.0;
  for (const double se : measure.std_errs()) max_se = std::max(max_se, se);
  if (max_se > 0.01)
    std::fprintf(stderr,
                 "warning: largest tile standard error is %.4f; increase --samples for "
                 "solver-grade measures\n",
                 max_se);

  if (!opt.out_path.empty()) {
    save_tile_measure(measure, opt.out_path);
    std::printf("measure written to %s\n", opt.out_path.c_str());
  }
  return 0;
}

// --- solve ------------------------------------------------------------------

struct SolveOptions {
  std::string measure_path;
  bool fk = false;
  std::optional<double> delta;
  double epsilon = 0.1;
  std::string out_path;
};

int cmd_solve(const SolveOptions& opt) {
  const TileMeasure measure = load_tile_measure(opt.measure_path);
  const ChainSolution sol =
      opt.delta ? solve_delta(measure, *opt.delta) : solve_fk(measure);

  std::printf("neighbours: %d   states: %zu\n", measure.n_neighbours(), measure.n_tiles());
  if (opt.delta)
    std::printf("target: %s-knowledge\n", g17(*opt.delta).c_str());
  else
    std::printf("target: full knowledge\n");

  const auto expected = sol.expected_steps();
  if (expected) {
    std::printf("expected reports from %s: %s\n", sol.start_state.to_string().c_str(),
                fixed6(*expected).c_str());
    std::printf("variance: %s\n", fixed6(*sol.variance_at(sol.start_state)).c_str());
  } else {
    const auto reach = fk_reachable(measure);
    std::string who;
    for (int i : reach.undiscoverable) {
      if (!who.empty()) who += ",";
      who += std::to_string(i);
    }
    std::printf("expected reports from %s: unreachable (undiscoverable neighbours: %s)\n",
                sol.start_state.to_string().c_str(), who.empty() ? "-" : who.c_str());
  }
  std::printf("second largest eigenvalue: %s\n", g17(sol.second_largest).c_str());
  const auto bound = report_bound(sol.second_largest, opt.epsilon);
  if (bound)
    std::printf("S(1-%s) = %s reports\n", g17(opt.epsilon).c_str(), fixed6(*bound).c_str());
  else
    std::printf("S(1-%s): unbounded\n", g17(opt.epsilon).c_str());

  if (!opt.out_path.empty()) {
    nlohmann::json j;
    j["n_neighbours"] = measure.n_neighbours();
    j["start_state"] = sol.start_state.bits();
    j["second_largest_eigenvalue"] = sol.second_largest;
    j["epsilon"] = opt.epsilon;
    if (bound)
      j["report_bound"] = *bound;
    else
      j["report_bound"] = nullptr;
    if (opt.delta) j["delta"] = *opt.delta;
    nlohmann::json expected_arr = nlohmann::json::array();
    nlohmann::json variance_arr = nlohmann::json::array();
    for (std::size_t k = 0; k < measure.n_tiles(); ++k) {
      const NeighborSet state(static_cast<NeighborSet::mask_type>(k));
      const auto e = sol.expected_steps(state);
      if (e) {
        expected_arr.push_back(*e);
        variance_arr.push_back(*sol.variance_at(state));
      } else {
        expected_arr.push_back("unreachable");
        variance_arr.push_back("unreachable");
      }
    }
    j["expected_reports"] = std::move(expected_arr);
    j["variance"] = std::move(variance_arr);
    j["eigenvalues"] = sol.eigenvalues;
    std::ofstream out(opt.out_path);
    if (!out) throw InputError("cannot write output file: " + opt.out_path);
    out << j.dump(2) << "\n";
    std::printf("solution written to %s\n", opt.out_path.c_str());
  }
  return 0;
}

// --- simulate ---------------------------------------------------------------

struct TeleportSimOptions {
  std::string measure_path;
  int trajectories = 100'000;
  bool fk = false;
  std::optional<double> delta;
  std::uint64_t seed = 1;
  std::uint64_t max_reports = kDefaultMaxReports;
  int jobs = 0;
  std::string out_prefix;
};

void print_batch_stats(const std::vector<TrajectoryRecord>& records, double period_hint_s) {
  std::size_t timeouts = 0;
  double sum = 0.0, sum_sq = 0.0, wall = 0.0;
  std::size_t n = 0;
  for (const auto& r : records) {
    if (r.timed_out) {
      ++timeouts;
      continue;
    }
    sum += static_cast<double>(r.reports);
    sum_sq += static_cast<double>(r.reports) * static_cast<double>(r.reports);
    wall += r.wall_s;
    ++n;
  }
  if (n == 0) {
    std::printf("all %zu trajectories timed out\n", records.size());
    return;
  }
  const double mean = sum / n;
  const double var = n > 1 ? (sum_sq - n * mean * mean) / (n - 1) : 0.0;
  const double se = std::sqrt(std::max(var, 0.0) / n);
  const double mean_wall = wall / n;
  std::printf("trajectories: %zu   timeouts: %zu\n", records.size(), timeouts);
  std::printf("mean reports: %s +- %s (s.e.)\n", fixed6(mean).c_str(), fixed6(se).c_str());
  std::printf("mean wall time: %s s (%s h)\n", fixed6(mean_wall).c_str(),
              fixed6(mean_wall / 3600.0).c_str());
  if (period_hint_s > 0.0)
    std::printf("report period: %s s\n", g17(period_hint_s).c_str());
}

int cmd_simulate_teleport(const TeleportSimOptions& opt) {
  const TileMeasure measure = load_tile_measure(opt.measure_path);
  const StopRule stop =
      opt.delta ? StopRule::delta_knowledge(*opt.delta) : StopRule::fk();
  const auto records = simulate_teleport_batch(measure, stop, opt.trajectories, opt.seed,
                                               opt.max_reports, opt.jobs);
  print_batch_stats(records, 1.0);
  if (!opt.out_prefix.empty()) {
    write_trajectory_records(opt.out_prefix + ".csv", records);
    std::printf("records written to %s.csv\n", opt.out_prefix.c_str());
  }
  return 0;
}

struct WalkSimOptions {
  std::string scenario_path;
  int neighbours = 7;
  double radius = 0.0;  // > 0 selects the generated scenario
  std::uint64_t scenario_seed = 1;
  double grid_step = 2.5;
  double step_period = 5.0;
  double inter_report = 360.0;
  double delta = 0.9;
  bool fk = false;
  int trajectories = 200;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  std::uint64_t max_reports = kDefaultMaxReports;
  int jobs = 0;
  std::string out_prefix;
};

Scenario walk_scenario(const WalkSimOptions& opt) {
  if (!opt.scenario_path.empty()) return load_scenario(opt.scenario_path);
  if (!(opt.radius > 0.0))
    throw InputError("simulate walk: give --scenario FILE or --radius R");
  return generate_random_scenario(opt.neighbours, opt.radius, opt.scenario_seed);
}

int cmd_simulate_walk(const WalkSimOptions& opt) {
  const Scenario scenario = walk_scenario(opt);
  const TileMeasure measure =
      estimate_tessellation(scenario, opt.samples, derive_seed(opt.seed, 0), opt.jobs);
  const StopRule stop = opt.fk ? StopRule::fk() : StopRule::delta_knowledge(opt.delta);

  WalkConfig cfg;
  cfg.grid_step_m = opt.grid_step;
  cfg.step_period_s = opt.step_period;
  cfg.inter_report_s = opt.inter_report;

  const auto records = simulate_walk_batch(scenario, measure, cfg, stop, opt.trajectories,
                                           derive_seed(opt.seed, 1), opt.max_reports, opt.jobs);
  print_batch_stats(records, opt.inter_report);

  const ChainSolution sol = opt.fk ? solve_fk(measure) : solve_delta(measure, opt.delta);
  const auto expected = sol.expected_steps();
  if (expected)
    std::printf("teleport prediction: %s reports = %s h\n", fixed6(*expected).c_str(),
                fixed6(*expected * opt.inter_report / 3600.0).c_str());
  else
    std::printf("teleport prediction: unreachable\n");

  if (!opt.out_prefix.empty()) {
    write_trajectory_records(opt.out_prefix + ".csv", records);
    std::printf("records written to %s.csv\n", opt.out_prefix.c_str());
  }
  return 0;
}

// --- experiments ------------------------------------------------------------

int cmd_experiment_ensemble(const EnsembleParams& params, std::string out_prefix) {
  if (out_prefix.empty()) out_prefix = "ensemble_seed" + std::to_string(params.seed);
  const EnsembleResult result = run_random_ensemble(params);
  write_ensemble_records(out_prefix + ".csv", result);
  write_ensemble_summary(out_prefix + "_summary.json", result);
  std::printf("configs: %d   excluded (unreachable): %zu\n", params.n_configs, result.excluded);
  std::printf("expected reports: median %s   p95 %s   mode bin %lld\n",
              fixed6(result.expected_summary.p50).c_str(),
              fixed6(result.expected_summary.p95).c_str(), result.expected_summary.mode_bin);
  std::printf("report bound: median %s   p95 %s\n", fixed6(result.bound_summary.p50).c_str(),
              fixed6(result.bound_summary.p95).c_str());
  std::printf("bound >= expectation in every config: %s\n",
              result.bound_dominates_everywhere ? "yes" : "no");
  std::printf("records written to %s.csv, summary to %s_summary.json\n", out_prefix.c_str(),
              out_prefix.c_str());
  return 0;
}

struct WalkSweepCliOptions {
  std::string scenario_path;
  int neighbours = 7;
  double radius = 50.0;
  std::uint64_t scenario_seed = 1;
  WalkSweepParams params;
  std::string out_prefix;
};

int cmd_experiment_walk_sweep(const WalkSweepCliOptions& opt) {
  Scenario scenario = opt.scenario_path.empty()
                          ? generate_random_scenario(opt.neighbours, opt.radius, opt.scenario_seed)
                          : load_scenario(opt.scenario_path);
  std::string out_prefix = opt.out_prefix;
  if (out_prefix.empty()) out_prefix = "walk_sweep_seed" + std::to_string(opt.params.seed);
  const WalkSweepResult result = run_walk_vs_teleport(scenario, opt.params);
  write_walk_sweep_records(out_prefix + ".csv", result);
  write_walk_sweep_summary(out_prefix + "_summary.json", result);
  std::printf("teleport expectation: %s reports\n",
              fixed6(result.teleport_expected_reports).c_str());
  for (const auto& r : result.records)
    std::printf("period %8s s: walk %s reports (%s h), teleport %s reports, timeouts %d\n",
                g17(r.period_s).c_str(), fixed6(r.mean_reports).c_str(),
                fixed6(r.mean_wall_s / 3600.0).c_str(),
                fixed6(r.teleport_expected_reports).c_str(), r.timeouts);
  std::printf("records written to %s.csv, summary to %s_summary.json\n", out_prefix.c_str(),
              out_prefix.c_str());
  return 0;
}

int cmd_experiment_delta_sweep(const std::string& measure_path, std::vector<double> deltas,
                               std::string out_prefix) {
  if (out_prefix.empty()) out_prefix = "delta_sweep";
  const TileMeasure measure = load_tile_measure(measure_path);
  const auto records = run_delta_sweep(measure, std::move(deltas));
  write_delta_sweep_records(out_prefix + ".csv", records);
  for (const auto& r : records) {
    if (r.reachable)
      std::printf("delta %8s: %s reports\n", g17(r.delta).c_str(),
                  fixed6(r.expected_reports).c_str());
    else
      std::printf("delta %8s: unreachable\n", g17(r.delta).c_str());
  }
  std::printf("records written to %s.csv\n", out_prefix.c_str());
  return 0;
}

struct ThresholdSweepCliOptions {
  std::string raster_path;
  bool synthetic = false;
  ThresholdSweepParams params;
  std::string out_prefix;
};

int cmd_experiment_threshold_sweep(const ThresholdSweepCliOptions& opt) {
  std::string out_prefix = opt.out_prefix;
  if (out_prefix.empty()) out_prefix = "threshold_sweep_seed" + std::to_string(opt.params.seed);
  std::string raster_path = opt.raster_path;
  if (opt.synthetic) {
    raster_path = out_prefix + "_raster.txt";
    write_synthetic_raster(raster_path, opt.params.seed);
    std::printf("synthetic raster written to %s\n", raster_path.c_str());
  } else if (raster_path.empty()) {
    throw InputError("threshold sweep: give --raster FILE or --synthetic");
  }
  const auto records = run_threshold_sweep(raster_path, opt.params);
  write_threshold_sweep_records(out_prefix + ".csv", records);
  for (const auto& r : records) {
    if (r.degenerate)
      std::printf("threshold %8s dBm: degenerate (no covered serving cell)\n",
                  g17(r.threshold_dbm).c_str());
    else if (!r.reachable)
      std::printf("threshold %8s dBm: full knowledge unreachable\n",
                  g17(r.threshold_dbm).c_str());
    else
      std::printf("threshold %8s dBm: %s reports\n", g17(r.threshold_dbm).c_str(),
                  fixed6(r.expected_reports).c_str());
  }
  std::printf("records written to %s.csv\n", out_prefix.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crowdsourced neighbour-discovery analysis: tessellation, knowledge-chain "
               "solves, spectral bounds and mobility simulation"};
  app.require_subcommand(1);

  std::function<int()> action;

  // tessellate
  TessellateOptions tess;
  auto* tess_cmd = app.add_subcommand("tessellate", "Estimate tile measures by Monte Carlo");
  tess_cmd->add_option("scenario", tess.scenario_path, "Scenario JSON file");
  tess_cmd->add_option("--random", tess.random_spec, "Generate a random scenario: N RADIUS SEED")
      ->expected(3);
  tess_cmd->add_option("--samples", tess.samples, "Monte Carlo sample count")
      ->capture_default_str();
  tess_cmd->add_option("--seed", tess.seed, "Sampling seed")->capture_default_str();
  tess_cmd->add_option("--jobs", tess.jobs, "Worker cap (0 = hardware)")->capture_default_str();
  tess_cmd->add_option("--neighbour-cap", tess.neighbour_cap, "Maximum neighbour count")
      ->capture_default_str();
  tess_cmd->add_option("--out", tess.out_path, "Measure output file");
  tess_cmd->callback([&] {
    if (tess.scenario_path.empty() == tess.random_spec.empty())
      throw CLI::ValidationError("tessellate", "give exactly one of SCENARIO or --random");
    action = [&] { return cmd_tessellate(tess); };
  });

  // solve
  SolveOptions solve;
  double solve_delta_value = 0.0;
  auto* solve_cmd = app.add_subcommand("solve", "Expected reports to knowledge, plus bounds");
  solve_cmd->add_option("measure", solve.measure_path, "Tile measure JSON file")->required();
  auto* fk_flag = solve_cmd->add_flag("--fk", solve.fk, "Solve for full knowledge (default)");
  auto* delta_opt =
      solve_cmd->add_option("--delta", solve_delta_value, "Solve for delta-knowledge");
  delta_opt->excludes(fk_flag);
  solve_cmd->add_option("--epsilon", solve.epsilon, "Bound confidence parameter")
      ->capture_default_str();
  solve_cmd->add_option("--out", solve.out_path, "Solution output file (JSON)");
  solve_cmd->callback([&] {
    if (delta_opt->count()) solve.delta = solve_delta_value;
    action = [&] { return cmd_solve(solve); };
  });

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo trajectory simulation");
  sim_cmd->require_subcommand(1);

  TeleportSimOptions tsim;
  double tsim_delta_value = 0.0;
  auto* tel_cmd = sim_cmd->add_subcommand("teleport", "I.i.d. reports from a tile measure");
  tel_cmd->add_option("--measure", tsim.measure_path, "Tile measure JSON file")->required();
  tel_cmd->add_option("--trajectories", tsim.trajectories, "Trajectory count")
      ->capture_default_str();
  auto* tel_fk = tel_cmd->add_flag("--fk", tsim.fk, "Stop at full knowledge (default)");
  auto* tel_delta = tel_cmd->add_option("--delta", tsim_delta_value, "Stop at delta-knowledge");
  tel_delta->excludes(tel_fk);
  tel_cmd->add_option("--seed", tsim.seed, "Master seed")->capture_default_str();
  tel_cmd->add_option("--max-reports", tsim.max_reports, "Per-trajectory report cap")
      ->capture_default_str();
  tel_cmd->add_option("--jobs", tsim.jobs, "Worker cap (0 = hardware)")->capture_default_str();
  tel_cmd->add_option("--out", tsim.out_prefix, "Record file prefix");
  tel_cmd->callback([&] {
    if (tel_delta->count()) tsim.delta = tsim_delta_value;
    action = [&] { return cmd_simulate_teleport(tsim); };
  });

  WalkSimOptions wsim;
  auto* walk_cmd = sim_cmd->add_subcommand("walk", "Reflecting lattice walk over a scenario");
  walk_cmd->add_option("--scenario", wsim.scenario_path, "Scenario JSON file");
  walk_cmd->add_option("--radius", wsim.radius, "Generate a random scenario with this radius (m)");
  walk_cmd->add_option("--neighbours", wsim.neighbours, "Neighbour count for --radius")
      ->capture_default_str();
  walk_cmd->add_option("--scenario-seed", wsim.scenario_seed, "Seed for --radius")
      ->capture_default_str();
  walk_cmd->add_option("--grid-step", wsim.grid_step, "Walk grid step (m)")->capture_default_str();
  walk_cmd->add_option("--step-period", wsim.step_period, "Seconds per walk step")
      ->capture_default_str();
  walk_cmd->add_option("--inter-report", wsim.inter_report, "Seconds between reports")
      ->capture_default_str();
  walk_cmd->add_option("--delta", wsim.delta, "Delta-knowledge stop target")
      ->capture_default_str();
  walk_cmd->add_flag("--fk", wsim.fk, "Stop at full knowledge instead of --delta");
  walk_cmd->add_option("--trajectories", wsim.trajectories, "Trajectory count")
      ->capture_default_str();
  walk_cmd->add_option("--samples", wsim.samples, "Tessellation samples for the stop rule")
      ->capture_default_str();
  walk_cmd->add_option("--seed", wsim.seed, "Master seed")->capture_default_str();
  walk_cmd->add_option("--max-reports", wsim.max_reports, "Per-trajectory report cap")
      ->capture_default_str();
  walk_cmd->add_option("--jobs", wsim.jobs, "Worker cap (0 = hardware)")->capture_default_str();
  walk_cmd->add_option("--out", wsim.out_prefix, "Record file prefix");
  walk_cmd->callback([&] { action = [&] { return cmd_simulate_walk(wsim); }; });

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Batch studies with record/summary files");
  exp_cmd->require_subcommand(1);

  EnsembleParams ens;
  std::string ens_out;
  auto* ens_cmd = exp_cmd->add_subcommand("ensemble", "Random-scenario ensemble");
  ens_cmd->add_option("--configs", ens.n_configs, "Configuration count")->capture_default_str();
  ens_cmd->add_option("--neighbours", ens.n_neighbours, "Neighbours per scenario")
      ->capture_default_str();
  ens_cmd->add_option("--radius", ens.radius, "Coverage radius")->capture_default_str();
  ens_cmd->add_option("--delta", ens.delta, "Knowledge target")->capture_default_str();
  ens_cmd->add_option("--epsilon", ens.epsilon, "Bound confidence parameter")
      ->capture_default_str();
  ens_cmd->add_option("--samples", ens.n_samples, "Tessellation samples per config")
      ->capture_default_str();
  ens_cmd->add_option("--seed", ens.seed, "Master seed")->capture_default_str();
  ens_cmd->add_option("--jobs", ens.jobs, "Worker cap (0 = hardware)")->capture_default_str();
  ens_cmd->add_option("--out", ens_out, "Output prefix (default ensemble_seed<seed>)");
  ens_cmd->callback([&] { action = [&] { return cmd_experiment_ensemble(ens, ens_out); }; });

  WalkSweepCliOptions wsweep;
  auto* wsweep_cmd = exp_cmd->add_subcommand("walk-sweep", "Walk vs teleport over report periods");
  wsweep_cmd->add_option("--scenario", wsweep.scenario_path, "Scenario JSON file");
  wsweep_cmd->add_option("--radius", wsweep.radius, "Random-scenario radius (m)")
      ->capture_default_str();
  wsweep_cmd->add_option("--neighbours", wsweep.neighbours, "Random-scenario neighbour count")
      ->capture_default_str();
  wsweep_cmd->add_option("--scenario-seed", wsweep.scenario_seed, "Random-scenario seed")
      ->capture_default_str();
  wsweep_cmd
      ->add_option("--periods", wsweep.params.inter_report_periods_s,
                   "Inter-report periods (s), comma separated")
      ->delimiter(',')
      ->capture_default_str();
  wsweep_cmd->add_option("--delta", wsweep.params.delta, "Knowledge target")
      ->capture_default_str();
  wsweep_cmd->add_option("--epsilon", wsweep.params.epsilon, "Bound confidence parameter")
      ->capture_default_str();
  wsweep_cmd->add_option("--trajectories", wsweep.params.n_trajectories, "Trajectories per period")
      ->capture_default_str();
  wsweep_cmd->add_option("--grid-step", wsweep.params.grid_step_m, "Walk grid step (m)")
      ->capture_default_str();
  wsweep_cmd->add_option("--step-period", wsweep.params.step_period_s, "Seconds per walk step")
      ->capture_default_str();
  wsweep_cmd->add_option("--samples", wsweep.params.n_samples, "Tessellation samples")
      ->capture_default_str();
  wsweep_cmd->add_option("--seed", wsweep.params.seed, "Master seed")->capture_default_str();
  wsweep_cmd->add_option("--jobs", wsweep.params.jobs, "Worker cap (0 = hardware)")
      ->capture_default_str();
  wsweep_cmd->add_option("--out", wsweep.out_prefix, "Output prefix");
  wsweep_cmd->callback([&] { action = [&] { return cmd_experiment_walk_sweep(wsweep); }; });

  std::string dsweep_measure, dsweep_out;
  std::vector<double> dsweep_deltas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  auto* dsweep_cmd = exp_cmd->add_subcommand("delta-sweep", "Expected reports vs delta");
  dsweep_cmd->add_option("--measure", dsweep_measure, "Tile measure JSON file")->required();
  dsweep_cmd->add_option("--deltas", dsweep_deltas, "Delta values, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  dsweep_cmd->add_option("--out", dsweep_out, "Output prefix (default delta_sweep)");
  dsweep_cmd->callback([&] {
    action = [&] { return cmd_experiment_delta_sweep(dsweep_measure, dsweep_deltas, dsweep_out); };
  });

  ThresholdSweepCliOptions tsweep;
  auto* tsweep_cmd =
      exp_cmd->add_subcommand("threshold-sweep", "Expected reports vs detection threshold");
  tsweep_cmd->add_option("--raster", tsweep.raster_path, "Raster power-map file");
  tsweep_cmd->add_flag("--synthetic", tsweep.synthetic, "Generate and sweep a synthetic raster");
  tsweep_cmd
      ->add_option("--thresholds", tsweep.params.thresholds_dbm,
                   "Detection thresholds (dBm), comma separated")
      ->delimiter(',')
      ->capture_default_str();
  tsweep_cmd->add_option("--samples", tsweep.params.n_samples, "Tessellation samples")
      ->capture_default_str();
  tsweep_cmd->add_option("--seed", tsweep.params.seed, "Master seed")->capture_default_str();
  tsweep_cmd->add_option("--jobs", tsweep.params.jobs, "Worker cap (0 = hardware)")
      ->capture_default_str();
  tsweep_cmd->add_option("--out", tsweep.out_prefix, "Output prefix");
  tsweep_cmd->callback([&] { action = [&] { return cmd_experiment_threshold_sweep(tsweep); }; });

  // raster
  std::string raster_out = "synthetic_raster.txt";
  std::uint64_t raster_seed = 1;
  auto* raster_cmd = app.add_subcommand("raster", "Write a synthetic power-map raster");
  raster_cmd->add_option("--out", raster_out, "Output file")->capture_default_str();
  raster_cmd->add_option("--seed", raster_seed, "Placement seed")->capture_default_str();
  raster_cmd->callback([&] {
    action = [&] {
      write_synthetic_raster(raster_out, raster_seed);
      std::printf("synthetic raster written to %s\n", raster_out.c_str());
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << "run '" << (argc > 0 ? argv[0] : "ltd") << " --help' for usage\n";
    return 1;
  }

  try {
    return action ? action() : 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
