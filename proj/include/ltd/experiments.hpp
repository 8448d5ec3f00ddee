#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ltd/geometry.hpp"
#include "ltd/mobility.hpp"
#include "ltd/tile_measure.hpp"

namespace ltd {

// ---------------------------------------------------------------------------
// Random-scenario ensemble: per configuration, tessellate, solve the
// delta-knowledge chain and evaluate the spectral report bound.

struct EnsembleParams {
  int n_configs = 350;
  int n_neighbours = 7;
  double radius = 1.0;
  double delta = 0.9;
  double epsilon = 0.1;
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t seed = 1;
  int jobs = 0;
};

struct EnsembleRecord {
  int config = 0;
  std::uint64_t scenario_seed = 0;
  double expected_reports = 0.0;  // NaN when the absorbing set is unreachable
  double second_largest = 0.0;    // of the aggregated (delta) chain
  double bound_reports = 0.0;     // NaN when no finite bound exists
  bool reachable = true;
};

struct DistributionSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double p5 = 0.0, p25 = 0.0, p50 = 0.0, p75 = 0.0, p95 = 0.0;
  long long mode_bin = 0;                               // most frequent nearest-integer bin
  std::vector<std::pair<long long, std::size_t>> pmf;   // (bin, count), bins ascending
};

/// Linear-interpolation percentiles and a nearest-integer-bin PMF.
DistributionSummary summarize_distribution(std::vector<double> values);

struct EnsembleResult {
  EnsembleParams params;
  std::vector<EnsembleRecord> records;
  std::size_t excluded = 0;  // unreachable configs: kept in records, left out of summaries
  DistributionSummary expected_summary;
  DistributionSummary bound_summary;
  bool bound_dominates_everywhere = true;  // bound >= expectation in every included record
};

EnsembleResult run_random_ensemble(const EnsembleParams& params);

// ---------------------------------------------------------------------------
// Walk vs teleport: empirical delta-knowledge time of the lattice walk for a
// range of inter-report periods, against the teleport-chain prediction.

struct WalkSweepParams {
  std::vector<double> inter_report_periods_s{360.0, 1800.0, 3600.0};
  double delta = 0.9;
  double epsilon = 0.1;
  int n_trajectories = 200;
  double grid_step_m = 2.5;
  double step_period_s = 5.0;
  std::uint64_t n_samples = 100'000;
  std::uint64_t max_reports = kDefaultMaxReports;
  std::uint64_t seed = 1;
  int jobs = 0;
};

struct WalkSweepRecord {
  double period_s = 0.0;
  int n_trajectories = 0;
  int timeouts = 0;
  double mean_reports = 0.0, se_reports = 0.0;
  double mean_wall_s = 0.0, se_wall_s = 0.0;
  double teleport_expected_reports = 0.0;
  double teleport_predicted_s = 0.0;  // expected reports * period
  double bound_reports = 0.0;         // NaN when unbounded
  double bound_s = 0.0;
};

struct WalkSweepResult {
  WalkSweepParams params;
  std::vector<WalkSweepRecord> records;
  double teleport_expected_reports = 0.0;
  double second_largest = 0.0;
};

WalkSweepResult run_walk_vs_teleport(const Scenario& scenario, const WalkSweepParams& params);

// ---------------------------------------------------------------------------
// Delta sweep: expected delta-knowledge time as a step function of delta.

struct DeltaSweepRecord {
  double delta = 0.0;
  double expected_reports = 0.0;  // NaN when unreachable at this delta
  bool reachable = true;
};

/// Records sorted by delta. Verifies that expected reports are non-decreasing
/// over the reachable prefix (a violation indicates a solver defect).
std::vector<DeltaSweepRecord> run_delta_sweep(const TileMeasure& measure,
                                              std::vector<double> deltas);

// ---------------------------------------------------------------------------
// Detection-threshold sweep over a raster power map.

struct ThresholdSweepParams {
  std::vector<double> thresholds_dbm{-60, -65, -70, -75, -80, -85, -90, -95, -100};
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t seed = 1;
  int jobs = 0;
};

struct ThresholdSweepRecord {
  double threshold_dbm = 0.0;
  double expected_reports = 0.0;  // NaN when flagged
  bool reachable = true;          // full knowledge attainable at this threshold
  bool degenerate = false;        // serving region empty at this threshold
};

/// Sweeps from the least to the most sensitive threshold. Every threshold is
/// tessellated with the same derived seed so the sampled points coincide and
/// coverage growth translates into coupled, monotone measures.
std::vector<ThresholdSweepRecord> run_threshold_sweep(const std::string& raster_path,
                                                      const ThresholdSweepParams& params);

// ---------------------------------------------------------------------------
// Record and summary files. Records are comma-separated with a header line
// and full-precision floats, so every summary statistic can be recomputed
// from them byte-identically.

void write_ensemble_records(const std::string& path, const EnsembleResult& result);
void write_ensemble_summary(const std::string& path, const EnsembleResult& result);
void write_walk_sweep_records(const std::string& path, const WalkSweepResult& result);
void write_walk_sweep_summary(const std::string& path, const WalkSweepResult& result);
void write_delta_sweep_records(const std::string& path,
                               const std::vector<DeltaSweepRecord>& records);
void write_threshold_sweep_records(const std::string& path,
                                   const std::vector<ThresholdSweepRecord>& records);
void write_trajectory_records(const std::string& path,
                              const std::vector<TrajectoryRecord>& records);

}  // namespace ltd
