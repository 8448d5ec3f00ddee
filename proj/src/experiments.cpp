#include "ltd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "ltd/chain.hpp"
#include "ltd/errors.hpp"
#include "ltd/parallel.hpp"
#include "ltd/scenario_io.hpp"
#include "ltd/tessellation.hpp"

namespace ltd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write output file: " + path);
  return out;
}

struct MeanSe {
  double mean = kNaN;
  double se = kNaN;
};

MeanSe mean_se(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / xs.size();
  if (xs.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (xs.size() - 1) / xs.size())};
}

}  // namespace

DistributionSummary summarize_distribution(std::vector<double> values) {
  DistributionSummary s;
  s.n = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());

  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / values.size();

  auto pct = [&](double q) {
    const double h = q * (values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + (h - lo) * (values[lo + 1] - values[lo]);
  };
  s.p5 = pct(0.05);
  s.p25 = pct(0.25);
  s.p50 = pct(0.50);
  s.p75 = pct(0.75);
  s.p95 = pct(0.95);

  std::map<long long, std::size_t> bins;
  for (double v : values) ++bins[std::llround(v)];
  std::size_t best = 0;
  for (const auto& [bin, count] : bins) {
    s.pmf.emplace_back(bin, count);
    if (count > best) {
      best = count;
      s.mode_bin = bin;
    }
  }
  return s;
}

EnsembleResult run_random_ensemble(const EnsembleParams& params) {
  if (params.n_configs < 1) throw InputError("ensemble: need at least one configuration");

  EnsembleResult result;
  result.params = params;
  result.records.resize(params.n_configs);

  parallel_for(result.records.size(), params.jobs, [&](std::size_t i) {
    const std::uint64_t scenario_seed = derive_seed(params.seed, 2 * i);
    const std::uint64_t sampling_seed = derive_seed(params.seed, 2 * i + 1);
    const Scenario scenario =
        generate_random_scenario(params.n_neighbours, params.radius, scenario_seed);
    const TileMeasure measure =
        estimate_tessellation(scenario, params.n_samples, sampling_seed, 1);
    const ChainSolution sol = solve_delta(measure, params.delta);

    EnsembleRecord& rec = result.records[i];
    rec.config = static_cast<int>(i);
    rec.scenario_seed = scenario_seed;
    rec.second_largest = sol.second_largest;
    const auto expected = sol.expected_steps();
    rec.reachable = expected.has_value();
    rec.expected_reports = expected.value_or(kNaN);
    const auto bound = report_bound(sol.second_largest, params.epsilon);
    rec.bound_reports = bound.value_or(kNaN);
  });

  std::vector<double> expectations, bounds;
  for (const auto& rec : result.records) {
    if (!rec.reachable) {
      ++result.excluded;
      continue;
    }
    expectations.push_back(rec.expected_reports);
    bounds.push_back(rec.bound_reports);
    if (!(rec.bound_reports >= rec.expected_reports)) result.bound_dominates_everywhere = false;
  }
  result.expected_summary = summarize_distribution(std::move(expectations));
  result.bound_summary = summarize_distribution(std::move(bounds));
  return result;
}

WalkSweepResult run_walk_vs_teleport(const Scenario& scenario, const WalkSweepParams& params) {
  if (params.inter_report_periods_s.empty())
    throw InputError("walk sweep: need at least one inter-report period");

  WalkSweepResult result;
  result.params = params;

  const TileMeasure measure =
      estimate_tessellation(scenario, params.n_samples, derive_seed(params.seed, 0), params.jobs);
  const ChainSolution sol = solve_delta(measure, params.delta);
  const auto expected = sol.expected_steps();
  if (!expected)
    throw DegenerateScenarioError(
        "walk sweep: delta-knowledge is unreachable for the sampled tessellation");
  result.teleport_expected_reports = *expected;
  result.second_largest = sol.second_largest;
  const auto bound = report_bound(sol.second_largest, params.epsilon);

  const StopRule stop = StopRule::delta_knowledge(params.delta);
  for (std::size_t pi = 0; pi < params.inter_report_periods_s.size(); ++pi) {
    WalkConfig cfg;
    cfg.grid_step_m = params.grid_step_m;
    cfg.step_period_s = params.step_period_s;
    cfg.inter_report_s = params.inter_report_periods_s[pi];

    const auto records =
        simulate_walk_batch(scenario, measure, cfg, stop, params.n_trajectories,
                            derive_seed(params.seed, 1 + pi), params.max_reports, params.jobs);

    WalkSweepRecord rec;
    rec.period_s = cfg.inter_report_s;
    rec.n_trajectories = params.n_trajectories;
    std::vector<double> reports, walls;
    for (const auto& r : records) {
      if (r.timed_out) {
        ++rec.timeouts;
        continue;
      }
      reports.push_back(static_cast<double>(r.reports));
      walls.push_back(r.wall_s);
    }
    const MeanSe mr = mean_se(reports);
    const MeanSe mw = mean_se(walls);
    rec.mean_reports = mr.mean;
    rec.se_reports = mr.se;
    rec.mean_wall_s = mw.mean;
    rec.se_wall_s = mw.se;
    rec.teleport_expected_reports = *expected;
    rec.teleport_predicted_s = *expected * cfg.inter_report_s;
    rec.bound_reports = bound.value_or(kNaN);
    rec.bound_s = bound ? *bound * cfg.inter_report_s : kNaN;
    result.records.push_back(rec);
  }
  return result;
}

std::vector<DeltaSweepRecord> run_delta_sweep(const TileMeasure& measure,
                                              std::vector<double> deltas) {
  if (deltas.empty()) throw InputError("delta sweep: need at least one delta");
  std::sort(deltas.begin(), deltas.end());

  std::vector<DeltaSweepRecord> records;
  records.reserve(deltas.size());
  for (double delta : deltas) {
    const ChainSolution sol = solve_delta(measure, delta);
    const auto expected = sol.expected_steps();
    records.push_back({delta, expected.value_or(kNaN), expected.has_value()});
  }

  // Expected time is a non-decreasing step function of delta; reachability
  // can only be lost as delta grows.
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].reachable && !records[i - 1].reachable)
      throw std::logic_error("delta sweep: reachability is not monotone");
    if (records[i].reachable && records[i - 1].reachable &&
        records[i].expected_reports < records[i - 1].expected_reports)
      throw std::logic_error("delta sweep: expected reports decreased as delta grew");
  }
  return records;
}

std::vector<ThresholdSweepRecord> run_threshold_sweep(const std::string& raster_path,
                                                      const ThresholdSweepParams& params) {
  if (params.thresholds_dbm.empty()) throw InputError("threshold sweep: need thresholds");
  std::vector<double> thresholds = params.thresholds_dbm;
  std::sort(thresholds.rbegin(), thresholds.rend());  // least sensitive first

  const PowerMapStack stack = load_power_maps(raster_path);
  std::vector<ThresholdSweepRecord> records;
  records.reserve(thresholds.size());
  for (double threshold : thresholds) {
    ThresholdSweepRecord rec;
    rec.threshold_dbm = threshold;
    try {
      const Scenario scenario = scenario_from_power_maps(stack, threshold);
      // Same sampling seed at every threshold: the drawn points coincide, so
      // coverage growth yields coupled measures and a monotone sweep.
      const TileMeasure measure =
          estimate_tessellation(scenario, params.n_samples, derive_seed(params.seed, 0),
                                params.jobs);
      const ChainSolution sol = solve_fk(measure);
      const auto expected = sol.expected_steps();
      rec.reachable = expected.has_value();
      rec.expected_reports = expected.value_or(kNaN);
    } catch (const DegenerateScenarioError&) {
      rec.degenerate = true;
      rec.reachable = false;
      rec.expected_reports = kNaN;
    }
    records.push_back(rec);
  }
  return records;
}

// --- record/summary files ---------------------------------------------------

void write_ensemble_records(const std::string& path, const EnsembleResult& result) {
  auto out = open_out(path);
  out << "config,scenario_seed,n_neighbours,delta,epsilon,expected_reports,"
         "second_largest_eigenvalue,report_bound,reachable\n";
  for (const auto& r : result.records) {
    out << r.config << ',' << r.scenario_seed << ',' << result.params.n_neighbours << ','
        << g17(result.params.delta) << ',' << g17(result.params.epsilon) << ','
        << g17(r.expected_reports) << ',' << g17(r.second_largest) << ',' << g17(r.bound_reports)
        << ',' << (r.reachable ? 1 : 0) << '\n';
  }
}

namespace {

nlohmann::json summary_to_json(const DistributionSummary& s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["mean"] = s.mean;
  j["percentiles"] = {{"p5", s.p5}, {"p25", s.p25}, {"p50", s.p50}, {"p75", s.p75}, {"p95", s.p95}};
  j["mode_bin"] = s.mode_bin;
  nlohmann::json pmf = nlohmann::json::array();
  for (const auto& [bin, count] : s.pmf) pmf.push_back({{"bin", bin}, {"count", count}});
  j["pmf"] = std::move(pmf);
  return j;
}

}  // namespace

void write_ensemble_summary(const std::string& path, const EnsembleResult& result) {
  nlohmann::json j;
  j["experiment"] = "ensemble";
  j["seed"] = result.params.seed;
  j["n_configs"] = result.params.n_configs;
  j["n_neighbours"] = result.params.n_neighbours;
  j["radius"] = result.params.radius;
  j["delta"] = result.params.delta;
  j["epsilon"] = result.params.epsilon;
  j["n_samples"] = result.params.n_samples;
  j["excluded_unreachable"] = result.excluded;
  j["expected_reports"] = summary_to_json(result.expected_summary);
  j["report_bound"] = summary_to_json(result.bound_summary);
  j["bound_dominates_everywhere"] = result.bound_dominates_everywhere;
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

void write_walk_sweep_records(const std::string& path, const WalkSweepResult& result) {
  auto out = open_out(path);
  out << "period_s,n_trajectories,timeouts,mean_reports,se_reports,mean_wall_s,se_wall_s,"
         "teleport_expected_reports,teleport_predicted_s,bound_reports,bound_s\n";
  for (const auto& r : result.records) {
    out << g17(r.period_s) << ',' << r.n_trajectories << ',' << r.timeouts << ','
        << g17(r.mean_reports) << ',' << g17(r.se_reports) << ',' << g17(r.mean_wall_s) << ','
        << g17(r.se_wall_s) << ',' << g17(r.teleport_expected_reports) << ','
        << g17(r.teleport_predicted_s) << ',' << g17(r.bound_reports) << ',' << g17(r.bound_s)
        << '\n';
  }
}

void write_walk_sweep_summary(const std::string& path, const WalkSweepResult& result) {
  nlohmann::json j;
  j["experiment"] = "walk_sweep";
  j["seed"] = result.params.seed;
  j["delta"] = result.params.delta;
  j["epsilon"] = result.params.epsilon;
  j["n_trajectories"] = result.params.n_trajectories;
  j["grid_step_m"] = result.params.grid_step_m;
  j["step_period_s"] = result.params.step_period_s;
  j["n_samples"] = result.params.n_samples;
  j["teleport_expected_reports"] = result.teleport_expected_reports;
  j["second_largest_eigenvalue"] = result.second_largest;
  j["periods_s"] = result.params.inter_report_periods_s;
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

void write_delta_sweep_records(const std::string& path,
                               const std::vector<DeltaSweepRecord>& records) {
  auto out = open_out(path);
  out << "delta,expected_reports,reachable\n";
  for (const auto& r : records)
    out << g17(r.delta) << ',' << g17(r.expected_reports) << ',' << (r.reachable ? 1 : 0) << '\n';
}

void write_threshold_sweep_records(const std::string& path,
                                   const std::vector<ThresholdSweepRecord>& records) {
  auto out = open_out(path);
  out << "threshold_dbm,expected_reports,reachable,degenerate\n";
  for (const auto& r : records)
    out << g17(r.threshold_dbm) << ',' << g17(r.expected_reports) << ',' << (r.reachable ? 1 : 0)
        << ',' << (r.degenerate ? 1 : 0) << '\n';
}

void write_trajectory_records(const std::string& path,
                              const std::vector<TrajectoryRecord>& records) {
  auto out = open_out(path);
  out << "trajectory,seed,reports,wall_s,terminal_state,timed_out\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    out << i << ',' << r.seed << ',' << r.reports << ',' << g17(r.wall_s) << ',' << r.terminal
        << ',' << (r.timed_out ? 1 : 0) << '\n';
  }
}

}  // namespace ltd
